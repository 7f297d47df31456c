#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "defring/error.hpp"
#include "defring/field.hpp"
#include "defring/group.hpp"
#include "defring/matrix.hpp"

namespace defring {

/// Arithmetic invariants of a p-adic field F.
struct LocalFieldData {
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::uint32_t f = 1;
  std::uint64_t mu_order = 1;
  std::optional<std::uint32_t> zeta_degree;  // [F(zeta_p):F] when known

  std::uint32_t n() const { return e * f; }

  static LocalFieldData Qp(std::uint32_t p) { return {p, 1, 1, p == 2 ? 2u : 1u, std::nullopt}; }

  void validate() const {
    if (!is_prime(p)) throw Error(ErrorCode::ValidationError, "p must be prime", "local_field.p");
    if (e < 1) throw Error(ErrorCode::ValidationError, "e must be positive", "local_field.e");
    if (f < 1) throw Error(ErrorCode::ValidationError, "f must be positive", "local_field.f");
    std::uint64_t m = mu_order;
    if (m == 0) throw Error(ErrorCode::ValidationError, "mu_order must be positive", "local_field.mu_order");
    while (m % p == 0) m /= p;
    if (m != 1) throw Error(ErrorCode::ValidationError, "mu_order must be a power of p", "local_field.mu_order");
    if (p == 2 && mu_order < 2) throw Error(ErrorCode::ValidationError, "-1 lies in every 2-adic field", "local_field.mu_order");
    if (zeta_degree) {
      if (*zeta_degree < 1 || (p - 1) % *zeta_degree != 0 || (p == 2 && *zeta_degree != 1))
        throw Error(ErrorCode::ValidationError, "zeta_degree must divide p-1", "local_field.zeta_degree");
      if (mu_order > 1 && *zeta_degree != 1)
        throw Error(ErrorCode::ValidationError, "zeta_p in F forces zeta_degree = 1", "local_field.zeta_degree");
    }
  }
};

/// The residual representation: matrices over k and mod-p cyclotomic values.
struct ResidualRep {
  FieldPtr field;
  LocalFieldData local;
  std::vector<Matrix> gens;
  std::vector<std::int64_t> omega;  // values in [1, p-1]

  std::size_t d() const { return gens.at(0).rows(); }

  void validate() const {
    local.validate();
    if (!field) throw Error(ErrorCode::ValidationError, "missing field", "field");
    if (field->p() != local.p) throw Error(ErrorCode::ValidationError, "field and local field disagree on p", "local_field.p");
    if (gens.empty()) throw Error(ErrorCode::ValidationError, "at least one generator required", "generators");
    if (omega.size() != gens.size()) throw Error(ErrorCode::ValidationError, "one omega per generator", "generators");
    std::size_t d = gens[0].rows();
    if (d < 1 || d > 8) throw Error(ErrorCode::ValidationError, "dimension must lie in 1..8", "generators[0].matrix");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      std::string where = "generators[" + std::to_string(i) + "]";
      if (!gens[i].square() || gens[i].rows() != d)
        throw Error(ErrorCode::ValidationError, "matrix must be d x d", where + ".matrix");
      if (!gens[i].invertible()) throw Error(ErrorCode::ValidationError, "matrix is singular", where + ".matrix");
      if (omega[i] < 1 || omega[i] >= static_cast<std::int64_t>(local.p))
        throw Error(ErrorCode::ValidationError, "omega must lie in [1, p-1]", where + ".omega");
    }
    if (local.zeta_degree) {
      auto Fp = Field::make(local.p);
      std::uint64_t ord = 1;
      for (auto w : omega) {
        std::uint64_t o = Fp->order(Fp->from_int(w));
        std::uint64_t a = ord, b = o;
        while (b) {
          auto t = a % b;
          a = b;
          b = t;
        }
        ord = ord / a * o;
      }
      if (ord != *local.zeta_degree)
        throw Error(ErrorCode::ValidationError, "omega values generate a group of order " + std::to_string(ord),
                    "local_field.zeta_degree");
    }
  }

  /// Joint image of g -> (rho(g), omega(g)) as block matrices diag(rho, omega).
  MatrixGroup joint_image(std::size_t cap = default_cap()) const {
    std::vector<Matrix> blocks;
    for (std::size_t i = 0; i < gens.size(); ++i)
      blocks.push_back(Matrix::block_diagonal(field, {gens[i], Matrix::scalar(field, 1, field->from_int(omega[i]))}));
    return MatrixGroup::closure(blocks, cap);
  }
};

enum class ModuleKind { Base, Ad, Ad0, AdBar, Dual, Hom, Restriction, Custom };

inline std::string kind_name(ModuleKind k) {
  switch (k) {
    case ModuleKind::Base: return "base";
    case ModuleKind::Ad: return "ad";
    case ModuleKind::Ad0: return "ad0";
    case ModuleKind::AdBar: return "adbar";
    case ModuleKind::Dual: return "dual";
    case ModuleKind::Hom: return "hom";
    case ModuleKind::Restriction: return "restriction";
    case ModuleKind::Custom: return "custom";
  }
  return "custom";
}

/// Finite-dimensional module with one action matrix per generator.  Action
/// is on column vectors.  `omega` holds the cyclotomic value of each
/// generator inside the coefficient field.
class GModule {
 public:
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<Matrix> action;
  std::vector<Elem> omega;
  ModuleKind kind = ModuleKind::Custom;
  int twist = 0;
  std::shared_ptr<const GModule> source;  // underlying module for ad/ad0/adbar/dual; V for Hom(V, W)
  std::shared_ptr<const GModule> target;  // W for Hom(V, W)

  std::string label() const {
    std::string s;
    if (kind == ModuleKind::Hom) {
      s = "hom(" + (source ? source->label() : "?") + "," + (target ? target->label() : "?") + ")";
    } else if (kind == ModuleKind::Base || kind == ModuleKind::Custom || kind == ModuleKind::Restriction) {
      s = kind_name(kind);
    } else {
      s = kind_name(kind) + "(" + (source ? source->label() : "?") + ")";
    }
    if (twist) s += "(" + std::to_string(twist) + ")";
    return s;
  }

  std::size_t arity() const { return action.size(); }

  static GModule custom(FieldPtr F, std::vector<Matrix> action, std::vector<Elem> omega = {}) {
    GModule M;
    M.field = std::move(F);
    M.dim = action.empty() ? 0 : action[0].rows();
    if (omega.empty()) omega.assign(action.size(), 1);
    M.action = std::move(action);
    M.omega = std::move(omega);
    M.kind = ModuleKind::Custom;
    return M;
  }
};

inline GModule make_base(const ResidualRep& rep) {
  GModule M;
  M.field = rep.field;
  M.dim = rep.d();
  M.action = rep.gens;
  for (auto w : rep.omega) M.omega.push_back(rep.field->from_int(w));
  M.kind = ModuleKind::Base;
  return M;
}

namespace detail {

// Action on a subspace/quotient of d x d matrices under X -> A X A^-1:
// `basis` gives the matrices of the chosen basis (row-major vectors), and
// `coords` reads coordinates off a matrix in the subspace.
template <class Coords>
Matrix conj_action(const Matrix& A, const Matrix& Ainv, const std::vector<Vec>& basis, std::size_t out_dim, Coords coords) {
  std::size_t d = A.rows();
  const FieldPtr& F = A.field();
  Matrix out(F, out_dim, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    Matrix X(F, d, d, basis[c]);
    Matrix Y = A * X * Ainv;
    Vec y = coords(Y);
    for (std::size_t r = 0; r < out_dim; ++r) out(r, c) = y[r];
  }
  return out;
}

inline std::vector<Vec> elementary_basis(std::size_t d) {
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < d * d; ++i) {
    Vec v(d * d, 0);
    v[i] = 1;
    basis.push_back(v);
  }
  return basis;
}

// Echelon basis of the trace-zero subspace and its free coordinates.
inline std::pair<std::vector<Vec>, std::vector<std::size_t>> trace_zero_basis(const FieldPtr& F, std::size_t d) {
  Matrix tr(F, 1, d * d);
  for (std::size_t i = 0; i < d; ++i) tr(0, i * d + i) = 1;
  auto basis = tr.kernel();
  std::vector<std::size_t> free;
  for (std::size_t k = 1; k < d * d; ++k) free.push_back(k);
  return {basis, free};
}

inline std::shared_ptr<const GModule> share(const GModule& M) { return std::make_shared<const GModule>(M); }

}  // namespace detail

/// Conjugation action on d x d matrices, basis e_ij in row-major order.
inline GModule make_ad(const GModule& V) {
  GModule M;
  M.field = V.field;
  M.dim = V.dim * V.dim;
  M.omega = V.omega;
  M.kind = ModuleKind::Ad;
  M.source = detail::share(V);
  auto basis = detail::elementary_basis(V.dim);
  for (auto& A : V.action) {
    M.action.push_back(detail::conj_action(A, A.inverse(), basis, M.dim, [](const Matrix& Y) { return Y.entries(); }));
  }
  return M;
}

/// Trace-zero submodule of ad.
inline GModule make_ad0(const GModule& V) {
  GModule M;
  std::size_t d = V.dim;
  M.field = V.field;
  M.dim = d * d - 1;
  M.omega = V.omega;
  M.kind = ModuleKind::Ad0;
  M.source = detail::share(V);
  auto [basis, free] = detail::trace_zero_basis(V.field, d);
  auto coords = [&free = free](const Matrix& Y) {
    Vec out;
    for (auto k : free) out.push_back(Y.entries()[k]);
    return out;
  };
  for (auto& A : V.action) M.action.push_back(detail::conj_action(A, A.inverse(), basis, M.dim, coords));
  return M;
}

/// Quotient of ad by the scalars; basis the images of e_ij with (i,j) != (d,d).
inline GModule make_adbar(const GModule& V) {
  GModule M;
  std::size_t d = V.dim;
  M.field = V.field;
  M.dim = d * d - 1;
  M.omega = V.omega;
  M.kind = ModuleKind::AdBar;
  M.source = detail::share(V);
  auto full = detail::elementary_basis(d);
  std::vector<Vec> basis(full.begin(), full.end() - 1);
  const Field& F = *V.field;
  auto coords = [&F, d](const Matrix& Y) {
    Elem corner = Y(d - 1, d - 1);
    Vec out;
    for (std::size_t k = 0; k + 1 < d * d; ++k) {
      Elem y = Y.entries()[k];
      if (k % (d + 1) == 0) y = F.sub(y, corner);
      out.push_back(y);
    }
    return out;
  };
  for (auto& A : V.action) M.action.push_back(detail::conj_action(A, A.inverse(), basis, M.dim, coords));
  return M;
}

inline GModule make_ad(const ResidualRep& rep) { return make_ad(make_base(rep)); }
inline GModule make_ad0(const ResidualRep& rep) { return make_ad0(make_base(rep)); }
inline GModule make_adbar(const ResidualRep& rep) { return make_adbar(make_base(rep)); }

/// Multiply the action of g by omega(g)^k.
inline GModule twist(const GModule& M, int k) {
  if (k == 0) return M;
  GModule out = M;
  const Field& F = *M.field;
  for (std::size_t i = 0; i < M.action.size(); ++i) out.action[i] = M.action[i].scaled(F.pow(M.omega[i], k));
  out.twist += k;
  return out;
}

/// Hom(V, W) with g acting by f -> W_g f V_g^-1; basis E_ab (a < dim W, b < dim V).
inline GModule make_hom(const GModule& V, const GModule& W) {
  if (V.arity() != W.arity()) throw Error(ErrorCode::DimensionMismatch, "modules for different generator sets");
  GModule M;
  M.field = V.field;
  M.dim = V.dim * W.dim;
  M.omega = V.omega;
  M.kind = ModuleKind::Hom;
  M.source = detail::share(V);
  M.target = detail::share(W);
  const Field& F = *V.field;
  for (std::size_t g = 0; g < V.arity(); ++g) {
    Matrix Vinv = V.action[g].inverse();
    const Matrix& Wg = W.action[g];
    Matrix A(V.field, M.dim, M.dim);
    for (std::size_t a = 0; a < W.dim; ++a)
      for (std::size_t b = 0; b < V.dim; ++b)
        for (std::size_t k = 0; k < W.dim; ++k)
          for (std::size_t l = 0; l < V.dim; ++l) A(k * V.dim + l, a * V.dim + b) = F.mul(Wg(k, a), Vinv(b, l));
    M.action.push_back(std::move(A));
  }
  return M;
}

/// Contragredient by inverse transpose, available for every module.
inline GModule contragredient(const GModule& M) {
  GModule out;
  out.field = M.field;
  out.dim = M.dim;
  out.omega = M.omega;
  out.kind = ModuleKind::Dual;
  out.source = detail::share(M);
  for (auto& A : M.action) out.action.push_back(A.inverse().transpose());
  return out;
}

/// Closed-form dual for the registered constructions: ad is self-dual, ad0 and
/// adbar are dual through the trace pairing, Hom(V,W) is dual to Hom(W,V).
inline GModule registered_dual(const GModule& M) {
  GModule out;
  switch (M.kind) {
    case ModuleKind::Ad: out = make_ad(*M.source); break;
    case ModuleKind::Ad0: out = make_adbar(*M.source); break;
    case ModuleKind::AdBar: out = make_ad0(*M.source); break;
    case ModuleKind::Hom: out = make_hom(*M.target, *M.source); break;
    case ModuleKind::Base: out = contragredient(twist(M, -M.twist)); break;
    case ModuleKind::Dual: out = *M.source; break;
    default:
      throw Error(ErrorCode::UnsupportedModule, "no registered dual for " + kind_name(M.kind) + " modules");
  }
  return twist(out, -M.twist);
}

/// Restriction to the subgroup generated by the given words.
inline GModule restrict_to(const GModule& M, const std::vector<Word>& words) {
  GModule out;
  out.field = M.field;
  out.dim = M.dim;
  out.kind = ModuleKind::Restriction;
  out.source = detail::share(M);
  const Field& F = *M.field;
  for (auto& w : words) {
    out.action.push_back(evaluate_word(M.action, w));
    Elem om = 1;
    for (int letter : w) {
      Elem x = M.omega.at(static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1);
      om = F.mul(om, letter > 0 ? x : F.inv(x));
    }
    out.omega.push_back(om);
  }
  return out;
}

/// Base change along an embedding of coefficient fields.
inline GModule extend_scalars(const GModule& M, const FieldPtr& K) {
  auto table = Field::embedding(*M.field, *K);
  GModule out = M;
  out.field = K;
  out.action.clear();
  for (auto& A : M.action) {
    std::vector<Elem> e;
    for (auto x : A.entries()) e.push_back(table[x]);
    out.action.emplace_back(K, A.rows(), A.cols(), std::move(e));
  }
  for (auto& w : out.omega) w = table[w];
  out.source.reset();
  out.target.reset();
  out.kind = ModuleKind::Custom;
  return out;
}

/// dim of the joint fixed space of the generator actions.
inline std::size_t invariants_dim(const GModule& M) {
  if (M.dim == 0) return 0;
  std::vector<Matrix> ops;
  Matrix I = Matrix::identity(M.field, M.dim);
  for (auto& A : M.action) ops.push_back(A - I);
  return solve_joint_kernel(ops).size();
}

/// Basis of {X : W_g X = X V_g for all g}, each X a dim W x dim V matrix.
inline std::vector<Matrix> intertwiners(const GModule& V, const GModule& W) {
  if (V.arity() != W.arity()) throw Error(ErrorCode::DimensionMismatch, "modules for different generator sets");
  std::size_t n = V.dim, m = W.dim;
  const Field& F = *V.field;
  std::vector<Matrix> ops;
  for (std::size_t g = 0; g < V.arity(); ++g) {
    Matrix L(V.field, m * n, m * n);
    const Matrix& Wg = W.action[g];
    const Matrix& Vg = V.action[g];
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t row = a * n + b;
        for (std::size_t k = 0; k < m; ++k) L(row, k * n + b) = F.add(L(row, k * n + b), Wg(a, k));
        for (std::size_t k = 0; k < n; ++k) L(row, a * n + k) = F.sub(L(row, a * n + k), Vg(k, b));
      }
    ops.push_back(std::move(L));
  }
  std::vector<Matrix> out;
  if (m * n == 0) return out;
  for (auto& v : solve_joint_kernel(ops)) out.emplace_back(V.field, m, n, v);
  return out;
}

inline std::size_t hom_dim(const GModule& V, const GModule& W) { return intertwiners(V, W).size(); }
inline std::size_t endomorphism_dim(const GModule& V) { return hom_dim(V, V); }

/// An invertible intertwiner V -> W if one exists.  Random combinations of
/// the solution basis first, then exhaustive search when the space is small.
inline std::optional<Matrix> find_isomorphism(const GModule& V, const GModule& W, std::uint64_t seed = 0x5eed) {
  if (V.dim != W.dim || V.arity() != W.arity()) return std::nullopt;
  if (V.dim == 0) return Matrix(V.field, 0, 0);
  auto basis = intertwiners(V, W);
  if (basis.empty()) return std::nullopt;
  const Field& F = *V.field;
  auto combine = [&](const std::vector<Elem>& c) {
    Matrix X(V.field, W.dim, V.dim);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c[i]) X = X + basis[i].scaled(c[i]);
    return X;
  };
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].invertible()) return basis[i];
  std::mt19937_64 rng(seed);
  std::vector<Elem> c(basis.size());
  for (int s = 0; s < 256; ++s) {
    for (auto& x : c) x = static_cast<Elem>(rng() % F.q());
    Matrix X = combine(c);
    if (X.invertible()) return X;
  }
  long double space = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) space *= F.q();
  if (space > (1 << 20))
    throw Error(ErrorCode::Inconclusive, "no invertible intertwiner found by sampling");
  std::fill(c.begin(), c.end(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == F.q()) c[i++] = 0;
    if (i == c.size()) break;
    Matrix X = combine(c);
    if (X.invertible()) return X;
  }
  return std::nullopt;
}

inline bool is_isomorphic(const GModule& V, const GModule& W) { return find_isomorphism(V, W).has_value(); }

}  // namespace defring
