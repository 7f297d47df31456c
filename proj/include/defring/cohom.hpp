#pragma once

#include <cstdint>
#include <vector>

#include "defring/gmodule.hpp"
#include "defring/meataxe.hpp"

namespace defring {

inline std::int64_t h0(const GModule& M) { return static_cast<std::int64_t>(invariants_dim(M)); }

/// Local duality: h2(M) = h0(M^dual(1)) with the closed-form dual.
inline std::int64_t h2(const GModule& M) { return h0(twist(registered_dual(M), 1)); }

/// Euler characteristic formula.
inline std::int64_t h1(const GModule& M, const LocalFieldData& lf) {
  return h0(M) + h2(M) + static_cast<std::int64_t>(M.dim) * lf.n();
}

inline std::int64_t h1_from(std::int64_t h0v, std::int64_t h2v, std::int64_t dim, std::int64_t n) { return h0v + h2v + dim * n; }

struct CohomProfile {
  std::int64_t d = 0, n = 0;
  std::int64_t h0_ad = 0, h1_ad = 0, h2_ad = 0;
  std::int64_t h0_ad0 = 0, h1_ad0 = 0, h2_ad0 = 0;
  std::int64_t dimZ1_ad = 0, dimZ1_ad0 = 0;
  std::int64_t r = 0, s = 0, t = 0;
  std::int64_t expected_dim_R = 0, expected_dim_R_mod = 0, rel_dim_fixed_det = 0;
};

inline CohomProfile profile(const ResidualRep& rep) {
  CohomProfile P;
  P.d = static_cast<std::int64_t>(rep.d());
  P.n = rep.local.n();
  auto ad = make_ad(rep);
  auto ad0 = make_ad0(rep);
  P.h0_ad = h0(ad);
  P.h2_ad = h2(ad);
  P.h1_ad = h1_from(P.h0_ad, P.h2_ad, P.d * P.d, P.n);
  P.h0_ad0 = h0(ad0);
  P.h2_ad0 = h2(ad0);
  P.h1_ad0 = h1_from(P.h0_ad0, P.h2_ad0, P.d * P.d - 1, P.n);
  P.dimZ1_ad = P.d * P.d - P.h0_ad + P.h1_ad;
  P.dimZ1_ad0 = (P.d * P.d - 1) - P.h0_ad0 + P.h1_ad0;
  P.r = P.dimZ1_ad;
  P.s = P.h2_ad;
  P.t = P.h2_ad0;
  P.expected_dim_R = 1 + P.d * P.d + P.d * P.d * P.n;
  P.expected_dim_R_mod = P.d * P.d + P.d * P.d * P.n;
  P.rel_dim_fixed_det = (P.d * P.d - 1) * (P.n + 1);
  return P;
}

struct ExtDims {
  std::int64_t hom = 0, ext1 = 0, ext2 = 0;
};

/// Ext dimensions between non-isomorphic absolutely irreducible constituents.
inline ExtDims ext_dims(const GModule& rho_i, const GModule& rho_j, const LocalFieldData& lf) {
  if (is_isomorphic(rho_i, rho_j)) throw Error(ErrorCode::PreconditionViolated, "constituents are isomorphic");
  ExtDims e;
  e.hom = static_cast<std::int64_t>(hom_dim(rho_i, rho_j));
  e.ext2 = static_cast<std::int64_t>(hom_dim(rho_i, twist(rho_j, 1)));
  e.ext1 = static_cast<std::int64_t>(rho_i.dim * rho_j.dim) * lf.n() + e.ext2 + e.hom;
  return e;
}

/// dim n (1 + n) + sum_{i<j} twist_hom[i][j], dim n = sum_{i<j} d_i d_j.
inline std::int64_t fibre_tangent_dim(const std::vector<std::int64_t>& dims, const std::vector<std::vector<int>>& twist_hom,
                                      std::int64_t n) {
  std::int64_t nil = 0, extra = 0;
  for (std::size_t i = 0; i < dims.size(); ++i)
    for (std::size_t j = i + 1; j < dims.size(); ++j) {
      nil += dims[i] * dims[j];
      if (i < twist_hom.size() && j < twist_hom[i].size()) extra += twist_hom[i][j];
    }
  return nil * (1 + n) + extra;
}

}  // namespace defring
