#pragma once

#include <cstdint>
#include <cmath>
#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "defring/charpoly.hpp"
#include "defring/gmodule.hpp"
#include "defring/upoly.hpp"

namespace defring {

struct IrreducibilityOptions {
  std::uint64_t exhaustive_limit = 1u << 20;  // scan every projective vector when q^dim is at most this
  int seeds = 64;                              // random algebra elements tried by the spinning test
  std::uint64_t kernel_scan_limit = 1u << 12;  // spin every kernel vector when q^nullity is at most this
  std::uint64_t rng_seed = 0x6d656174;
};

/// Echelonized basis kept in reduced form for fast membership tests.
class EchelonBasis {
 public:
  EchelonBasis(const Field* F, std::size_t dim) : F_(F), dim_(dim) {}

  /// Reduce v against the basis; if nonzero, add it and return true.
  bool insert(Vec v) {
    reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    Elem inv = F_->inv(v[piv]);
    for (auto& x : v) x = F_->mul(x, inv);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elem c = rows_[r][piv];
      if (!c) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] = F_->sub(rows_[r][j], F_->mul(c, v[j]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  void reduce(Vec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elem c = v[pivots_[r]];
      if (!c) continue;
      const Vec& row = rows_[r];
      for (std::size_t j = 0; j < dim_; ++j)
        if (row[j]) v[j] = F_->sub(v[j], F_->mul(c, row[j]));
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    for (auto x : v)
      if (x) return false;
    return true;
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  const Field* F_;
  std::size_t dim_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Smallest submodule containing the seeds.
inline std::vector<Vec> spin(const std::vector<Matrix>& action, std::size_t dim, const FieldPtr& F,
                             const std::vector<Vec>& seeds) {
  EchelonBasis basis(F.get(), dim);
  std::deque<Vec> queue;
  for (auto& s : seeds)
    if (basis.insert(s)) queue.push_back(s);
  while (!queue.empty() && basis.size() < dim) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (auto& A : action) {
      Vec w = A * v;
      if (basis.insert(w)) queue.push_back(std::move(w));
    }
  }
  if (basis.size() == dim) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < dim; ++i) {
      Vec e(dim, 0);
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  return span_basis(F, dim, basis.rows());
}

inline std::vector<Vec> spin(const GModule& M, const std::vector<Vec>& seeds) { return spin(M.action, M.dim, M.field, seeds); }

/// True iff span(basis) is stable under every action matrix.
inline bool is_invariant_subspace(const GModule& M, const std::vector<Vec>& basis) {
  EchelonBasis eb(M.field.get(), M.dim);
  for (auto& b : basis) eb.insert(b);
  for (auto& A : M.action)
    for (auto& b : basis)
      if (!eb.contains(A * b)) return false;
  return true;
}

namespace detail {

inline std::vector<Vec> annihilator(const FieldPtr& F, std::size_t dim, const std::vector<Vec>& S) {
  Matrix m(F, S.size(), dim);
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = S[i][j];
  return m.kernel();
}

/// Nonzero combinations of the rows of K with leading coefficient 1.
inline std::vector<Vec> projective_span(const Field& F, const std::vector<Vec>& K) {
  std::vector<Vec> out;
  std::size_t k = K.size();
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::vector<Elem> c(k - lead - 1, 0);
    for (;;) {
      Vec v = K[lead];
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i])
          for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.add(v[j], F.mul(c[i], K[lead + 1 + i][j]));
      out.push_back(std::move(v));
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == F.q()) c[i++] = 0;
      if (i == c.size()) break;
    }
  }
  return out;
}

inline std::optional<std::vector<Vec>> exhaustive_submodule(const GModule& M) {
  const Field& F = *M.field;
  std::size_t n = M.dim;
  // Projective representatives: leading 1 at position lead, zeros before it.
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::size_t free = n - lead - 1;
    std::vector<Elem> tail(free, 0);
    for (;;) {
      Vec v(n, 0);
      v[lead] = 1;
      for (std::size_t j = 0; j < free; ++j) v[lead + 1 + j] = tail[j];
      auto S = spin(M, {v});
      if (S.size() < n) return S;
      std::size_t i = free;
      bool done = true;
      while (i-- > 0) {
        if (++tail[i] < F.q()) {
          done = false;
          break;
        }
        tail[i] = 0;
      }
      if (done) break;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// A proper nonzero invariant subspace, or nullopt when the module is irreducible.
inline std::optional<std::vector<Vec>> find_submodule(const GModule& M, const IrreducibilityOptions& opt = {}) {
  std::size_t n = M.dim;
  if (n <= 1) return std::nullopt;
  const Field& F = *M.field;
  long double size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= F.q();
  if (size <= static_cast<long double>(opt.exhaustive_limit)) return detail::exhaustive_submodule(M);

  std::vector<Matrix> transposed;
  for (auto& A : M.action) transposed.push_back(A.transpose());
  std::mt19937_64 rng(opt.rng_seed);
  std::vector<Matrix> pool = M.action;
  pool.push_back(Matrix::identity(M.field, n));
  for (int attempt = 0; attempt < opt.seeds; ++attempt) {
    // Product-replacement walk through the enveloping algebra.
    for (int step = 0; step < 3; ++step) {
      std::size_t i = rng() % pool.size(), j = rng() % pool.size();
      if (i == j) continue;
      if (rng() % 2)
        pool[i] = pool[i] * pool[j];
      else
        pool[i] = pool[i] + pool[j].scaled(static_cast<Elem>(1 + rng() % (F.q() - 1)));
    }
    Matrix A(M.field, n, n);
    for (auto& P : pool) A = A + P.scaled(static_cast<Elem>(rng() % F.q()));
    auto factors = upoly::irreducible_factors(F, char_poly(A), rng());
    for (auto& f : factors) {
      Matrix N = upoly::evaluate(f, A);
      auto K = N.kernel();
      if (K.empty()) continue;
      auto Kt = N.transpose().kernel();
      std::vector<Vec> vs{K[0]}, ws{Kt[0]};
      bool norton = K.size() == f.size() - 1;
      // A proper submodule U meets the kernel of f(A) on U or, dually, on V/U.
      bool scan = !norton && std::pow(static_cast<long double>(F.q()), K.size()) <= opt.kernel_scan_limit;
      if (scan) {
        vs = detail::projective_span(F, K);
        ws = detail::projective_span(F, Kt);
      }
      for (auto& v : vs) {
        auto S = spin(M, {v});
        if (S.size() < n) return S;
      }
      for (auto& w : ws) {
        auto St = spin(transposed, n, M.field, {w});
        if (St.size() < n) return span_basis(M.field, n, detail::annihilator(M.field, n, St));
      }
      if (norton || scan) return std::nullopt;
    }
  }
  throw Error(ErrorCode::Inconclusive, "irreducibility not certified within " + std::to_string(opt.seeds) + " attempts");
}

inline bool is_irreducible(const GModule& M, const IrreducibilityOptions& opt = {}) {
  if (M.dim == 0) return false;
  return !find_submodule(M, opt).has_value();
}

inline bool is_absolutely_irreducible(const GModule& M, const IrreducibilityOptions& opt = {}) {
  return is_irreducible(M, opt) && endomorphism_dim(M) == 1;
}

/// Composition factors of M in sub-before-quotient order, together with a
/// basis change P such that P^-1 A P is block upper triangular with these
/// diagonal blocks.
struct CompositionSeries {
  std::vector<GModule> factors;
  Matrix basis;  // columns adapted to the flag
};

namespace detail {

inline void composition(const GModule& M, const IrreducibilityOptions& opt, std::vector<GModule>& out, Matrix& P) {
  auto sub = find_submodule(M, opt);
  if (!sub) {
    out.push_back(M);
    P = Matrix::identity(M.field, M.dim);
    return;
  }
  std::size_t n = M.dim, k = sub->size();
  std::vector<Vec> cols = *sub;
  EchelonBasis eb(M.field.get(), n);
  for (auto& v : *sub) eb.insert(v);
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    if (eb.insert(e)) cols.push_back(e);
  }
  Matrix B = Matrix::from_columns(M.field, n, cols);
  Matrix Binv = B.inverse();
  GModule S = M, Q = M;
  S.dim = k;
  Q.dim = n - k;
  S.action.clear();
  Q.action.clear();
  S.kind = Q.kind = ModuleKind::Custom;
  S.source = Q.source = S.target = Q.target = nullptr;
  for (auto& A : M.action) {
    Matrix C = Binv * A * B;
    S.action.push_back(C.submatrix(0, 0, k, k));
    Q.action.push_back(C.submatrix(k, k, n - k, n - k));
  }
  Matrix PS, PQ;
  composition(S, opt, out, PS);
  composition(Q, opt, out, PQ);
  P = B * Matrix::block_diagonal(M.field, {PS, PQ});
}

}  // namespace detail

inline CompositionSeries composition_series(const GModule& M, const IrreducibilityOptions& opt = {}) {
  CompositionSeries cs;
  if (M.dim == 0) return cs;
  detail::composition(M, opt, cs.factors, cs.basis);
  return cs;
}

struct Semisimplification {
  std::vector<Matrix> block_diagonal;  // one per generator
  std::vector<GModule> constituents;
  Matrix basis;
};

inline Semisimplification semisimplify(const GModule& M, const IrreducibilityOptions& opt = {}) {
  auto cs = composition_series(M, opt);
  Semisimplification out;
  out.constituents = cs.factors;
  out.basis = cs.basis;
  for (std::size_t g = 0; g < M.arity(); ++g) {
    std::vector<Matrix> blocks;
    for (auto& c : cs.factors) blocks.push_back(c.action[g]);
    out.block_diagonal.push_back(Matrix::block_diagonal(M.field, blocks));
  }
  return out;
}

inline Semisimplification semisimplify(const std::vector<Matrix>& mats, const IrreducibilityOptions& opt = {}) {
  return semisimplify(GModule::custom(mats.at(0).field(), mats), opt);
}

/// Composition factors matched up to isomorphism (multiset equality).
inline bool same_constituents(const std::vector<GModule>& a, const std::vector<GModule>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (auto& x : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (used[j] || b[j].dim != x.dim) continue;
      if (is_isomorphic(x, b[j])) {
        used[j] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace defring
