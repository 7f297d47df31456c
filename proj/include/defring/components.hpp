#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "defring/cohom.hpp"
#include "defring/dimension.hpp"
#include "defring/meataxe.hpp"
#include "defring/pseudochar.hpp"

namespace defring {

/// Character of mu_{p^inf}(F): generator -> zeta^index.
struct MuCharacter {
  std::uint64_t mu_order = 1;
  std::uint64_t index = 0;
};

inline std::vector<MuCharacter> mu_characters(const LocalFieldData& lf) {
  std::vector<MuCharacter> out;
  for (std::uint64_t i = 0; i < lf.mu_order; ++i) out.push_back({lf.mu_order, i});
  return out;
}

/// Irreducible components of the generic fibre, counted after enlarging the coefficient field.
inline std::uint64_t component_count(const LocalFieldData& lf) {
  lf.validate();
  return lf.mu_order;
}
inline std::uint64_t component_count(const ResidualRep& rep) { return component_count(rep.local); }

struct DetRing {
  std::uint64_t mu_order;
  std::uint32_t variable_count;
};

inline DetRing det_ring_structure(const LocalFieldData& lf) { return {lf.mu_order, lf.n() + 1}; }

struct PhiData {
  std::uint64_t prime_to_p;
  std::uint64_t p_part;
  std::uint64_t flat_degree;
};

inline PhiData phi_d_data(std::uint64_t d, const LocalFieldData& lf) {
  if (d < 1) throw Error(ErrorCode::PreconditionViolated, "d must be positive");
  PhiData out{d, 1, 1};
  while (out.prime_to_p % lf.p == 0) {
    out.prime_to_p /= lf.p;
    out.p_part *= lf.p;
  }
  for (std::uint32_t i = 0; i <= lf.n(); ++i)
    if (__builtin_mul_overflow(out.flat_degree, out.p_part, &out.flat_degree))
      throw Error(ErrorCode::SizeExceeded, "flat degree overflows 64 bits");
  return out;
}

/// Sub and quotient characters of a 2-dim representation that is an extension of characters.
struct CharacterExtension {
  GModule sub, quotient;
  bool split = false;
  bool distinct = false;
};

inline std::optional<CharacterExtension> as_character_extension(const ResidualRep& rep,
                                                                 const IrreducibilityOptions& opt = {}) {
  if (rep.d() != 2) return std::nullopt;
  auto V = make_base(rep);
  auto cs = composition_series(V, opt);
  if (cs.factors.size() != 2) return std::nullopt;
  CharacterExtension ext{cs.factors[0], cs.factors[1]};
  ext.distinct = !pseudo_equal(ext.sub.action, ext.quotient.action);
  auto sum = GModule::custom(rep.field, {}, V.omega);
  for (std::size_t g = 0; g < V.arity(); ++g)
    sum.action.push_back(Matrix::block_diagonal(rep.field, {ext.sub.action[g], ext.quotient.action[g]}));
  sum.dim = 2;
  ext.split = is_isomorphic(V, sum);
  return ext;
}

struct SmoothnessFlags {
  std::int64_t h2_ad = 0, h2_ad0 = 0;
  bool formally_smooth = false;             // h2_ad0 == 0
  std::optional<bool> pnot2_hypothesis;     // set for d = 2 extensions of characters over Q_p, p > 2
  std::optional<bool> peq2_hypothesis;      // set for d = 2 extensions of characters over Q_2
};

inline bool is_Qp(const LocalFieldData& lf) { return lf.e == 1 && lf.f == 1; }

inline SmoothnessFlags smoothness_predicates(const ResidualRep& rep, const IrreducibilityOptions& opt = {}) {
  SmoothnessFlags S;
  S.h2_ad = h2(make_ad(rep));
  S.h2_ad0 = h2(make_ad0(rep));
  S.formally_smooth = S.h2_ad0 == 0;
  if (rep.d() != 2 || !is_Qp(rep.local)) return S;
  auto ext = as_character_extension(rep, opt);
  if (!ext) return S;
  if (rep.local.p > 2) {
    bool a = !pseudo_equal(ext->sub.action, twist(ext->quotient, 1).action);
    bool b = !pseudo_equal(ext->quotient.action, twist(ext->sub, 1).action);
    S.pnot2_hypothesis = a && b;
  } else {
    S.peq2_hypothesis = !ext->split && ext->distinct;
  }
  return S;
}

/// The one case where the fixed-determinant ring fails to be factorial.
inline bool factorial_exception(const ResidualRep& rep, const IrreducibilityOptions& opt = {}) {
  auto V = make_base(rep);
  if (!is_absolutely_irreducible(V, opt)) throw Error(ErrorCode::PreconditionViolated, "representation is not absolutely irreducible");
  if (rep.d() != 2 || rep.local.p != 3 || !is_Qp(rep.local)) return false;
  auto V1 = twist(V, 1);
  return pseudo_equal(V.action, V1.action) && is_isomorphic(V, V1);
}

struct ComponentReport {
  std::uint64_t mu_order = 1;
  std::uint64_t component_count_generic = 1;
  bool large_L_convention = true;
  DetRing det_ring{1, 2};
  std::vector<std::pair<MuCharacter, std::int64_t>> per_chi_dims;  // dim of R^{square,chi}
  std::int64_t fixed_det_dim = 0;
  std::int64_t fixed_det_dim_mod = 0;
  std::optional<bool> factorial_exception;
};

inline ComponentReport component_report(const ResidualRep& rep, bool absolutely_irreducible,
                                        const IrreducibilityOptions& opt = {}) {
  ComponentReport R;
  auto d = static_cast<std::int64_t>(rep.d());
  std::int64_t n = rep.local.n();
  auto E = expected_dims(d, n, rep.local.mu_order);
  R.mu_order = rep.local.mu_order;
  R.component_count_generic = component_count(rep);
  R.det_ring = det_ring_structure(rep.local);
  for (auto& chi : mu_characters(rep.local)) R.per_chi_dims.emplace_back(chi, E.R_chi);
  R.fixed_det_dim = E.R_psi;
  R.fixed_det_dim_mod = E.R_psi_mod;
  if (absolutely_irreducible) R.factorial_exception = factorial_exception(rep, opt);
  return R;
}

}  // namespace defring
