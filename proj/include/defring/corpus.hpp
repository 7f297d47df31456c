#pragma once

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "defring/cohom.hpp"
#include "defring/dimension.hpp"
#include "defring/genmatrix.hpp"
#include "defring/meataxe.hpp"
#include "defring/pseudochar.hpp"

namespace defring {

struct NamedRep {
  std::string name;
  ResidualRep rep;
};

inline ResidualRep make_rep(LocalFieldData lf, std::vector<Matrix> gens, std::vector<std::int64_t> omega) {
  ResidualRep r;
  r.field = gens.at(0).field();
  r.local = lf;
  r.gens = std::move(gens);
  r.omega = std::move(omega);
  r.validate();
  return r;
}

/// Small fixed representations with known invariants.
inline std::vector<NamedRep> regression_corpus() {
  auto F3 = Field::make(3), F5 = Field::make(5), F7 = Field::make(7);
  auto M = [](const FieldPtr& F, std::vector<std::vector<std::int64_t>> rows) { return Matrix::from_ints(F, rows); };
  std::vector<NamedRep> out;
  out.push_back({"trivial_d2_Q5", make_rep(LocalFieldData::Qp(5), {Matrix::identity(F5, 2)}, {2})});
  out.push_back({"one_plus_omega_Q5", make_rep(LocalFieldData::Qp(5), {M(F5, {{1, 0}, {0, 2}})}, {2})});
  out.push_back({"s3_gf7_Q7", make_rep(LocalFieldData::Qp(7), {M(F7, {{0, 6}, {1, 6}}), M(F7, {{0, 1}, {1, 0}})}, {1, 6})});
  out.push_back({"q8_gf3_Q3", make_rep(LocalFieldData::Qp(3), {M(F3, {{0, 2}, {1, 0}}), M(F3, {{1, 1}, {1, 2}})}, {1, 2})});
  out.push_back({"c4_gf3_Q3", make_rep(LocalFieldData::Qp(3), {M(F3, {{0, 1}, {2, 0}})}, {2})});
  out.push_back({"unipotent_gf3_Q3", make_rep(LocalFieldData::Qp(3), {M(F3, {{1, 1}, {0, 1}})}, {2})});
  return out;
}

/// Random residual representations over GF(p), mixing reducible and irreducible images.
inline std::vector<ResidualRep> random_corpus(std::uint64_t seed, std::size_t count, std::size_t max_d = 4,
                                              std::uint32_t max_n = 4, std::vector<std::uint32_t> primes = {2, 3, 5, 7}) {
  std::mt19937_64 rng(seed);
  std::vector<ResidualRep> out;
  while (out.size() < count) {
    std::uint32_t p = primes[rng() % primes.size()];
    std::size_t d = 1 + rng() % max_d;
    std::uint32_t e = 1 + static_cast<std::uint32_t>(rng() % max_n);
    std::uint32_t f = 1 + static_cast<std::uint32_t>(rng() % (max_n / e));
    auto F = Field::make(p);
    std::vector<Matrix> gens;
    std::vector<std::int64_t> om;
    std::size_t k = 1 + rng() % 3;
    bool triangular = rng() % 2;
    while (gens.size() < k) {
      Matrix A(F, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (!triangular || j >= i) A(i, j) = static_cast<Elem>(rng() % p);
      if (!A.invertible()) continue;
      gens.push_back(A);
      om.push_back(1 + static_cast<std::int64_t>(rng() % (p - 1)));
    }
    LocalFieldData lf{p, e, f, p == 2 ? 2u : 1u, std::nullopt};
    out.push_back(make_rep(lf, gens, om));
  }
  return out;
}

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

inline std::vector<SelftestCheck> run_selftest() {
  std::vector<SelftestCheck> out;
  auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    SelftestCheck c;
    c.name = name;
    try {
      auto [ok, detail] = body();
      c.passed = ok;
      c.detail = detail;
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(c);
  };

  run("example_3_5", [] {
    auto R = verify_example_3_5();
    std::string g;
    for (auto& s : R.generators) g += (g.empty() ? "" : ", ") + s;
    return std::make_pair(R.ok(), g);
  });

  run("bound_sweep", [] {
    std::size_t rows = 0;
    for (std::int64_t d = 1; d <= 6; ++d)
      for (std::int64_t n = 1; n <= 5; ++n)
        for (auto& P : partition_sweep(d, n)) {
          codim_gap(P);
          if (P.l + 2 * P.nP != d * d) return std::make_pair(false, std::string("formula4 identity"));
          if (P.is_minimal() && bound_ZP(P) != d * d + d * d * n) return std::make_pair(false, std::string("bound_ZP(Pmin)"));
          ++rows;
        }
    return std::make_pair(true, std::to_string(rows) + " partitions");
  });

  run("brauer_nesbitt_gl2_gf3", [] {
    auto F = Field::make(3);
    std::vector<Matrix> gl;
    for (std::size_t idx = 0; idx < 81; ++idx) {
      Matrix A(F, 2, 2);
      std::size_t x = idx;
      for (std::size_t k = 0; k < 4; ++k, x /= 3) A(k / 2, k % 2) = static_cast<Elem>(x % 3);
      if (A.invertible()) gl.push_back(A);
    }
    std::vector<Semisimplification> ss;
    for (auto& A : gl) ss.push_back(semisimplify(std::vector<Matrix>{A}));
    std::size_t bad = 0;
    for (std::size_t i = 0; i < gl.size(); ++i)
      for (std::size_t j = i; j < gl.size(); ++j)
        bad += pseudo_equal({gl[i]}, {gl[j]}) != same_constituents(ss[i].constituents, ss[j].constituents);
    return std::make_pair(bad == 0, std::to_string(bad) + " disagreements");
  });

  run("fibre_q8_gf3", [] {
    auto F = Field::make(3);
    auto r = fibre_enumerate({Matrix::from_ints(F, {{0, 2}, {1, 0}}), Matrix::from_ints(F, {{1, 1}, {1, 2}})});
    bool ok = r.count() == 24;
    for (auto t : r.tangent) ok = ok && t == 3;
    return std::make_pair(ok, std::to_string(r.count()) + " points");
  });

  run("presentation_identities", [] {
    std::size_t n = 0;
    for (auto& rep : random_corpus(2024, 40, 3, 3)) {
      auto P = profile(rep);
      if (P.r - P.s != P.d * P.d + P.d * P.d * P.n) return std::make_pair(false, std::string("r - s"));
      if (P.dimZ1_ad0 - P.t != (P.d * P.d - 1) * (P.n + 1)) return std::make_pair(false, std::string("dimZ1_ad0 - t"));
      ++n;
    }
    return std::make_pair(true, std::to_string(n) + " representations");
  });

  return out;
}

}  // namespace defring
