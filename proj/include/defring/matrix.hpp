#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "defring/error.hpp"
#include "defring/field.hpp"

namespace defring {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr F, std::size_t rows, std::size_t cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  Matrix(FieldPtr F, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
  }

  static Matrix identity(FieldPtr F, std::size_t n) {
    Matrix m(std::move(F), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix scalar(FieldPtr F, std::size_t n, Elem c) {
    Matrix m(std::move(F), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  /// Entries are integers reduced into the prime field.
  static Matrix from_ints(FieldPtr F, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = F->from_int(rows[i][j]);
    }
    return m;
  }

  /// Columns are the given vectors.
  static Matrix from_columns(FieldPtr F, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(std::move(F), rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  const FieldPtr& field() const { return F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const std::vector<Elem>& entries() const { return a_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const { return a_ < o.a_; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "product shape");
    const Field& F = *F_;
    Matrix out(F_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        Elem x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          Elem y = o(k, j);
          if (y) out(i, j) = F.add(out(i, j), F.mul(x, y));
        }
      }
    return out;
  }

  Vec operator*(const Vec& v) const {
    if (cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape");
    const Field& F = *F_;
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      Elem acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = F.add(acc, F.mul((*this)(i, k), v[k]));
      out[i] = acc;
    }
    return out;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
    return out;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], o.a_[i]);
    return out;
  }

  Matrix scaled(Elem c) const {
    Matrix out = *this;
    for (auto& x : out.a_) x = F_->mul(x, c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

  Elem trace() const {
    Elem t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t = F_->add(t, (*this)(i, i));
    return t;
  }

  bool is_zero() const {
    for (auto x : a_)
      if (x) return false;
    return true;
  }

  bool is_identity() const { return square() && *this == identity(F_, rows_); }

  bool is_scalar() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j ? (*this)(i, j) != 0 : (*this)(i, j) != (*this)(0, 0)) return false;
    return true;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    const Field& F = *F_;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(piv, j));
      Elem inv = F.inv((*this)(r, c));
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = F.mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        Elem factor = (*this)(i, c);
        if (factor == 0) continue;
        for (std::size_t j = c; j < cols_; ++j)
          (*this)(i, j) = F.sub((*this)(i, j), F.mul(factor, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right kernel {v : Mv = 0}, one vector per free column.
  std::vector<Vec> kernel() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<char> is_pivot(cols_, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      Vec v(cols_, 0);
      v[free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = F_->neg(m(k, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Elem det() const {
    if (!square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const Field& F = *F_;
    Matrix m = *this;
    Elem d = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t piv = c;
      while (piv < rows_ && m(piv, c) == 0) ++piv;
      if (piv == rows_) return 0;
      if (piv != c) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m(c, j), m(piv, j));
        d = F.neg(d);
      }
      d = F.mul(d, m(c, c));
      Elem inv = F.inv(m(c, c));
      for (std::size_t i = c + 1; i < rows_; ++i) {
        Elem factor = F.mul(m(i, c), inv);
        if (factor == 0) continue;
        for (std::size_t j = c; j < cols_; ++j) m(i, j) = F.sub(m(i, j), F.mul(factor, m(c, j)));
      }
    }
    return d;
  }

  bool invertible() const { return square() && rank() == rows_; }

  Matrix inverse() const {
    if (!square()) throw Error(ErrorCode::NotInvertible, "non-square matrix");
    std::size_t n = rows_;
    Matrix aug(F_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorCode::NotInvertible, "singular matrix");
    Matrix out(F_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
  }

  Matrix pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    Matrix result = identity(F_, rows_), base = *this;
    while (k) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  /// Stack vertically.
  static Matrix vstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw Error(ErrorCode::DimensionMismatch, "empty stack");
    std::size_t cols = blocks[0].cols(), rows = 0;
    for (auto& b : blocks) {
      if (b.cols() != cols) throw Error(ErrorCode::DimensionMismatch, "column counts differ");
      rows += b.rows();
    }
    Matrix out(blocks[0].field(), rows, cols);
    std::size_t r = 0;
    for (auto& b : blocks) {
      std::copy(b.a_.begin(), b.a_.end(), out.a_.begin() + r * cols);
      r += b.rows();
    }
    return out;
  }

  static Matrix block_diagonal(FieldPtr F, const std::vector<Matrix>& blocks) {
    std::size_t n = 0;
    for (auto& b : blocks) n += b.rows();
    Matrix out(F, n, n);
    std::size_t off = 0;
    for (auto& b : blocks) {
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
      off += b.rows();
    }
    return out;
  }

  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(F_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  std::vector<std::vector<std::int64_t>> to_ints() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + F_->to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : a_) h = (h ^ x) * 1099511628211ull;
    return h;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "shape mismatch");
  }

  FieldPtr F_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

/// Basis of the common kernel of all operators.
inline std::vector<Vec> solve_joint_kernel(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw Error(ErrorCode::DimensionMismatch, "no operators");
  for (auto& op : ops)
    if (op.cols() != ops[0].cols()) throw Error(ErrorCode::DimensionMismatch, "operators have different column counts");
  return Matrix::vstack(ops).kernel();
}

/// Matrix of X -> A X - X A on d x d matrices, in row-major coordinates.
inline Matrix commutator_operator(const Matrix& A) {
  std::size_t d = A.rows();
  const Field& F = *A.field();
  Matrix L(A.field(), d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t row = i * d + j;
      for (std::size_t k = 0; k < d; ++k) {
        // (AX)_{ij} = sum_k A_ik X_kj ; (XA)_{ij} = sum_k X_ik A_kj
        L(row, k * d + j) = F.add(L(row, k * d + j), A(i, k));
        L(row, i * d + k) = F.sub(L(row, i * d + k), A(k, j));
      }
    }
  return L;
}

inline std::size_t commutant_dim(const std::vector<Matrix>& mats) {
  if (mats.empty()) throw Error(ErrorCode::DimensionMismatch, "no matrices");
  std::size_t d = mats[0].rows();
  std::vector<Matrix> ops;
  for (auto& m : mats) {
    if (!m.square() || m.rows() != d) throw Error(ErrorCode::DimensionMismatch, "matrices must be square of one size");
    ops.push_back(commutator_operator(m));
  }
  return solve_joint_kernel(ops).size();
}

/// Row-reduced basis of the span of the given vectors.
inline std::vector<Vec> span_basis(const FieldPtr& F, std::size_t dim, const std::vector<Vec>& vecs) {
  if (vecs.empty()) return {};
  Matrix m(F, vecs.size(), dim);
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vecs[i][j];
  auto piv = m.rref();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(m.row(i));
  return out;
}

}  // namespace defring
