#pragma once

#include <vector>

#include "defring/field.hpp"
#include "defring/matrix.hpp"

namespace defring {

/// Ring adapter for GF(q) elements.
struct FieldRing {
  using T = Elem;
  const Field* F;
  T zero() const { return 0; }
  T one() const { return 1; }
  T add(T a, T b) const { return F->add(a, b); }
  T sub(T a, T b) const { return F->sub(a, b); }
  T mul(T a, T b) const { return F->mul(a, b); }
  T neg(T a) const { return F->neg(a); }
};

/// Division-free characteristic polynomial (Berkowitz).  Returns c with
/// det(tI - M) = sum_i c[i] t^(n-i), c[0] = 1.  Works over any commutative
/// ring adapter R.
template <class R>
std::vector<typename R::T> berkowitz(const std::vector<std::vector<typename R::T>>& M, const R& ring) {
  using T = typename R::T;
  std::size_t n = M.size();
  std::vector<T> poly{ring.one()};
  for (std::size_t r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^(r-1) C
    std::vector<T> col(r + 2, ring.zero());
    col[0] = ring.one();
    col[1] = ring.neg(M[r][r]);
    std::vector<T> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = M[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      T s = ring.zero();
      for (std::size_t i = 0; i < r; ++i) s = ring.add(s, ring.mul(M[r][i], v[i]));
      col[k + 2] = ring.neg(s);
      if (k + 1 < r) {
        std::vector<T> w(r, ring.zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) w[i] = ring.add(w[i], ring.mul(M[i][j], v[j]));
        v = std::move(w);
      }
    }
    std::vector<T> next(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= r && j <= i; ++j) next[i] = ring.add(next[i], ring.mul(col[i - j], poly[j]));
    poly = std::move(next);
  }
  return poly;
}

/// Coefficient laws (Lambda_1, ..., Lambda_d) with det(tI - m) = sum (-1)^i Lambda_i t^(d-i).
inline std::vector<Elem> char_poly_coeffs(const Matrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  std::size_t d = m.rows();
  std::vector<std::vector<Elem>> rows(d, std::vector<Elem>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) rows[i][j] = m(i, j);
  const Field& F = *m.field();
  auto c = berkowitz(rows, FieldRing{&F});
  std::vector<Elem> lambda(d);
  for (std::size_t i = 1; i <= d; ++i) lambda[i - 1] = i % 2 ? F.neg(c[i]) : c[i];
  return lambda;
}

/// det(tI - m) as a UPoly-style coefficient vector, constant term first.
inline std::vector<Elem> char_poly(const Matrix& m) {
  std::size_t d = m.rows();
  auto lambda = char_poly_coeffs(m);
  const Field& F = *m.field();
  std::vector<Elem> out(d + 1);
  out[d] = 1;
  for (std::size_t i = 1; i <= d; ++i) out[d - i] = i % 2 ? F.neg(lambda[i - 1]) : lambda[i - 1];
  return out;
}

/// sum (-1)^i Lambda_i(m) m^(d-i) == 0.
inline bool cayley_hamilton_check(const Matrix& m) {
  auto c = char_poly(m);
  const FieldPtr& F = m.field();
  Matrix acc(F, m.rows(), m.cols());
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * m + Matrix::scalar(F, m.rows(), c[i]);
  return acc.is_zero();
}

}  // namespace defring
