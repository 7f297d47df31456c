#pragma once

#include <vector>

#include "defring/charpoly.hpp"
#include "defring/group.hpp"

namespace defring {

/// Coefficient laws on every element of a finite matrix group.
struct PseudoCharacter {
  std::size_t d = 0;
  MatrixGroup group;
  std::vector<std::vector<Elem>> lambda;  // lambda[k] for group.elements()[k]

  const std::vector<Elem>& at(const Matrix& g) const { return lambda[group.index_of(g)]; }
};

inline PseudoCharacter pseudo_of(const std::vector<Matrix>& tuple, std::size_t cap = default_cap()) {
  PseudoCharacter P;
  P.group = MatrixGroup::closure(tuple, cap);
  P.d = P.group.degree();
  for (auto& g : P.group.elements()) P.lambda.push_back(char_poly_coeffs(g));
  return P;
}

/// Tuple g_i -> diag(A_i, B_i).
inline std::vector<Matrix> paired_tuple(const std::vector<Matrix>& A, const std::vector<Matrix>& B) {
  if (A.size() != B.size()) throw Error(ErrorCode::DimensionMismatch, "tuples of different arity");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < A.size(); ++i) out.push_back(Matrix::block_diagonal(A[i].field(), {A[i], B[i]}));
  return out;
}

/// Equality of coefficient laws on every word, decided on the closure of the
/// paired tuple.
inline bool pseudo_equal(const std::vector<Matrix>& A, const std::vector<Matrix>& B, std::size_t cap = default_cap()) {
  if (A.size() != B.size()) throw Error(ErrorCode::DimensionMismatch, "tuples of different arity");
  if (A.empty()) return true;
  std::size_t da = A[0].rows(), db = B[0].rows();
  if (da != db) return false;
  for (std::size_t i = 0; i < A.size(); ++i)
    if (char_poly_coeffs(A[i]) != char_poly_coeffs(B[i])) return false;
  auto G = MatrixGroup::closure(paired_tuple(A, B), cap);
  for (auto& g : G.elements()) {
    if (char_poly_coeffs(g.submatrix(0, 0, da, da)) != char_poly_coeffs(g.submatrix(da, da, db, db))) return false;
  }
  return true;
}

}  // namespace defring
