#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "defring/gmodule.hpp"
#include "defring/group.hpp"
#include "defring/meataxe.hpp"

namespace defring {

struct CliffordReport {
  std::size_t group_order = 0;
  std::size_t h_order = 0;
  std::size_t m = 1;                      // |G/H|
  bool restriction_reducible = false;     // Res_H V is not absolutely irreducible
  std::optional<std::size_t> chi_index;   // chi(c) = zeta_m^j for the coset generator c
  std::size_t chi_order = 1;
  std::size_t hstar_order = 0;            // |ker chi|
  std::vector<Word> hstar_words;          // generators of ker chi, in the module's generators
  std::uint32_t extension_degree = 1;     // [K:k] for the field carrying mu_m
};

/// Smallest k with m | q^k - 1, subject to q^k <= 2^16.
inline std::uint32_t cyclotomic_degree(std::uint32_t q, std::uint64_t m) {
  std::uint64_t qk = q;
  for (std::uint32_t k = 1; qk <= kMaxFieldOrder; ++k, qk *= q)
    if ((qk - 1) % m == 0) return k;
  throw Error(ErrorCode::SizeExceeded, "roots of unity of order " + std::to_string(m) + " lie outside GF(q^k), q^k <= 65536");
}

/// V absolutely irreducible for the image group G of its generators; H given
/// by words in those generators.  Tests whether Res_H V is reducible and
/// searches for a nontrivial character chi of the cyclic group G/H with V = V (x) chi.
inline CliffordReport clifford_test(const GModule& V, const std::vector<Word>& h_words,
                                    const IrreducibilityOptions& opt = {}, std::size_t cap = default_cap()) {
  const FieldPtr& F = V.field;
  auto G = MatrixGroup::closure(V.action, cap);
  std::vector<Matrix> hgens;
  for (auto& w : h_words) hgens.push_back(evaluate_word(V.action, w));
  if (hgens.empty()) hgens.push_back(Matrix::identity(F, V.dim));
  auto H = MatrixGroup::closure(hgens, cap);

  for (auto& h : H.elements())
    if (!G.contains(h)) throw Error(ErrorCode::PreconditionViolated, "H is not contained in the image");
  for (auto& g : V.action) {
    Matrix ginv = g.inverse();
    for (auto& h : hgens)
      if (!H.contains(g * h * ginv)) throw Error(ErrorCode::PreconditionViolated, "H is not normal");
  }

  CliffordReport rep;
  rep.group_order = G.order();
  rep.h_order = H.order();
  rep.m = G.order() / H.order();
  if (rep.m % F->p() == 0) throw Error(ErrorCode::PreconditionViolated, "characteristic divides |G/H|");

  auto coset_order = [&](const Matrix& g) {
    std::size_t k = 1;
    Matrix cur = g;
    while (!H.contains(cur)) {
      cur = cur * g;
      ++k;
    }
    return k;
  };
  std::optional<std::size_t> c_index;
  for (std::size_t i = 0; i < G.order() && !c_index; ++i)
    if (coset_order(G.elements()[i]) == rep.m) c_index = i;
  if (!c_index) throw Error(ErrorCode::PreconditionViolated, "G/H is not cyclic");
  const Matrix& c = G.elements()[*c_index];

  if (!is_absolutely_irreducible(V, opt))
    throw Error(ErrorCode::PreconditionViolated, "module is not absolutely irreducible");
  rep.restriction_reducible = !is_absolutely_irreducible(GModule::custom(F, hgens), opt);
  if (rep.m == 1) {
    rep.hstar_order = G.order();
    return rep;
  }

  // Coset exponent a(g) with g in c^a H.
  Matrix cinv = c.inverse();
  std::vector<std::size_t> expo;
  for (auto& g : V.action) {
    Matrix cur = g;
    std::size_t a = 0;
    while (!H.contains(cur)) {
      cur = cinv * cur;
      ++a;
    }
    expo.push_back(a % rep.m);
  }

  rep.extension_degree = cyclotomic_degree(F->q(), rep.m);
  FieldPtr K = Field::make(F->p(), F->f() * rep.extension_degree);
  GModule VK = extend_scalars(V, K);
  Elem zeta = K->root_of_unity(rep.m);
  for (std::size_t j = 1; j < rep.m; ++j) {
    GModule Vchi = VK;
    for (std::size_t i = 0; i < Vchi.action.size(); ++i)
      Vchi.action[i] = VK.action[i].scaled(K->pow(zeta, static_cast<std::int64_t>(j * expo[i])));
    if (is_isomorphic(VK, Vchi)) {
      rep.chi_index = j;
      rep.chi_order = rep.m / std::gcd(j, rep.m);
      rep.hstar_words = h_words;
      Word cw = G.words()[*c_index];
      Word power;
      for (std::size_t k = 0; k < rep.chi_order; ++k) power.insert(power.end(), cw.begin(), cw.end());
      rep.hstar_words.push_back(power);
      rep.hstar_order = H.order() * (rep.m / rep.chi_order);
      break;
    }
  }
  return rep;
}

/// Absolute irreducibility of every supplied restriction.
inline bool kummer_irreducible(const GModule& V, const std::vector<std::vector<Word>>& subgroups,
                               const IrreducibilityOptions& opt = {}) {
  if (!is_absolutely_irreducible(V, opt))
    throw Error(ErrorCode::PreconditionViolated, "module is not absolutely irreducible");
  for (auto& words : subgroups) {
    std::vector<Matrix> gens;
    for (auto& w : words) gens.push_back(evaluate_word(V.action, w));
    if (gens.empty()) gens.push_back(Matrix::identity(V.field, V.dim));
    if (!is_absolutely_irreducible(GModule::custom(V.field, gens), opt)) return false;
  }
  return true;
}

}  // namespace defring
