#include <gtest/gtest.h>

#include <random>

#include "defring/clifford.hpp"
#include "defring/components.hpp"

using namespace defring;

namespace {

Matrix M(const FieldPtr& F, std::vector<std::vector<std::int64_t>> rows) { return Matrix::from_ints(F, rows); }

ResidualRep rep_of(LocalFieldData lf, std::vector<Matrix> gens, std::vector<std::int64_t> omega) {
  ResidualRep r;
  r.field = gens.at(0).field();
  r.local = lf;
  r.gens = std::move(gens);
  r.omega = std::move(omega);
  r.validate();
  return r;
}

std::vector<Matrix> all_gl2(const FieldPtr& F) {
  std::vector<Matrix> out;
  std::size_t q = F->q();
  for (std::size_t idx = 0; idx < q * q * q * q; ++idx) {
    Matrix A(F, 2, 2);
    std::size_t x = idx;
    for (std::size_t k = 0; k < 4; ++k) {
      A(k / 2, k % 2) = static_cast<Elem>(x % q);
      x /= q;
    }
    if (A.invertible()) out.push_back(A);
  }
  return out;
}

// Searches GL_2 for T with T A_g = omega_g A_g T.
bool brute_twist_isomorphic(const ResidualRep& r) {
  const auto& F = r.field;
  for (auto& T : all_gl2(F)) {
    bool ok = true;
    for (std::size_t g = 0; g < r.gens.size() && ok; ++g)
      ok = T * r.gens[g] == r.gens[g].scaled(F->from_int(r.omega[g])) * T;
    if (ok) return true;
  }
  return false;
}

// Fixed space dimension of A_g^-T * omega_g, by enumeration.
std::size_t brute_h2(const GModule& Mod) {
  const Field& F = *Mod.field;
  std::vector<Matrix> act;
  for (std::size_t g = 0; g < Mod.arity(); ++g) act.push_back(Mod.action[g].inverse().transpose().scaled(Mod.omega[g]));
  std::size_t total = 1;
  for (std::size_t i = 0; i < Mod.dim; ++i) total *= F.q();
  std::size_t count = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec v(Mod.dim);
    std::size_t x = idx;
    for (auto& c : v) {
      c = static_cast<Elem>(x % F.q());
      x /= F.q();
    }
    bool fixed = true;
    for (auto& A : act)
      if (A * v != v) fixed = false;
    count += fixed;
  }
  std::size_t dim = 0;
  while (count > 1) {
    count /= F.q();
    ++dim;
  }
  return dim;
}

}  // namespace

TEST(ComponentCount, Examples) {
  EXPECT_EQ(component_count(LocalFieldData::Qp(5)), 1u);
  EXPECT_EQ(component_count(LocalFieldData{5, 4, 1, 5, 1u}), 5u);
  EXPECT_EQ(component_count(LocalFieldData::Qp(2)), 2u);
  for (auto lf : {LocalFieldData::Qp(5), LocalFieldData{5, 4, 1, 5, 1u}, LocalFieldData::Qp(2), LocalFieldData{3, 2, 3, 9, std::nullopt}}) {
    auto chars = mu_characters(lf);
    EXPECT_EQ(chars.size(), component_count(lf));
    for (std::size_t i = 0; i < chars.size(); ++i) {
      EXPECT_EQ(chars[i].index, i);
      EXPECT_LT(chars[i].index, chars[i].mu_order);
    }
  }
  auto F = Field::make(5);
  EXPECT_EQ(component_count(rep_of(LocalFieldData::Qp(5), {Matrix::identity(F, 2)}, {2})), 1u);
}

TEST(DetRing, Examples) {
  auto a = det_ring_structure(LocalFieldData::Qp(7));
  EXPECT_EQ(a.mu_order, 1u);
  EXPECT_EQ(a.variable_count, 2u);
  auto b = det_ring_structure(LocalFieldData::Qp(2));
  EXPECT_EQ(b.mu_order, 2u);
  EXPECT_EQ(b.variable_count, 2u);
  auto c = det_ring_structure(LocalFieldData{3, 4, 1, 9, std::nullopt});
  EXPECT_EQ(c.mu_order, 9u);
  EXPECT_EQ(c.variable_count, 5u);
}

TEST(PhiD, Examples) {
  auto a = phi_d_data(3, LocalFieldData::Qp(5));
  EXPECT_EQ(a.prime_to_p, 3u);
  EXPECT_EQ(a.p_part, 1u);
  EXPECT_EQ(a.flat_degree, 1u);

  // Monomial box {0..p^m-1}^(n+1), counted directly.
  auto box = [](std::uint64_t side, std::uint32_t vars) {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> e(vars, 0);
    for (;;) {
      ++count;
      std::size_t k = 0;
      while (k < vars && ++e[k] == side) e[k++] = 0;
      if (k == vars) break;
    }
    return count;
  };
  auto b = phi_d_data(2, LocalFieldData::Qp(2));
  EXPECT_EQ(b.prime_to_p, 1u);
  EXPECT_EQ(b.p_part, 2u);
  EXPECT_EQ(b.flat_degree, 4u);
  EXPECT_EQ(b.flat_degree, box(2, 2));

  LocalFieldData quad{2, 2, 1, 2, std::nullopt};
  auto c = phi_d_data(4, quad);
  EXPECT_EQ(c.prime_to_p, 1u);
  EXPECT_EQ(c.p_part, 4u);
  EXPECT_EQ(c.flat_degree, 64u);
  EXPECT_EQ(c.flat_degree, box(4, 3));

  EXPECT_THROW(phi_d_data(0, quad), Error);
}

TEST(PhiD, FlatDegreeOneIffCoprime) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t e = 1; e <= 3; ++e)
      for (std::uint64_t d = 1; d <= 30; ++d) {
        LocalFieldData lf{p, e, 1, p == 2 ? 2u : 1u, std::nullopt};
        auto D = phi_d_data(d, lf);
        EXPECT_EQ(D.flat_degree == 1, d % p != 0);
        EXPECT_EQ(D.prime_to_p * D.p_part, d);
        EXPECT_NE(D.prime_to_p % p, 0u);
      }
}

TEST(Smoothness, OnePlusOmegaOverQ5) {
  auto F = Field::make(5);
  auto r = rep_of(LocalFieldData::Qp(5), {M(F, {{1, 0}, {0, 2}})}, {2});
  auto S = smoothness_predicates(r);
  ASSERT_TRUE(S.pnot2_hypothesis);
  EXPECT_FALSE(*S.pnot2_hypothesis);
  EXPECT_EQ(S.h2_ad0, 1);
  EXPECT_EQ(static_cast<std::size_t>(S.h2_ad0), brute_h2(make_ad0(r)));
  EXPECT_FALSE(S.formally_smooth);
  EXPECT_FALSE(S.peq2_hypothesis);
}

TEST(Smoothness, OmegaSquaredOverQ7) {
  auto F = Field::make(7);
  // psi1 = 1 and psi2 = omega^2 with omega = 3.
  auto r = rep_of(LocalFieldData::Qp(7), {M(F, {{1, 1}, {0, 2}})}, {3});
  auto S = smoothness_predicates(r);
  ASSERT_TRUE(S.pnot2_hypothesis);
  EXPECT_TRUE(*S.pnot2_hypothesis);
  EXPECT_EQ(S.h2_ad0, 0);
  EXPECT_EQ(S.h2_ad, 0);
  EXPECT_EQ(brute_h2(make_ad0(r)), 0u);
  EXPECT_TRUE(S.formally_smooth);
}

TEST(Smoothness, KummerIrreducibleIsUnobstructed) {
  auto F = Field::make(7);
  auto r = rep_of(LocalFieldData::Qp(7), {M(F, {{0, 6}, {1, 6}}), M(F, {{0, 1}, {1, 0}})}, {1, 1});
  ASSERT_TRUE(kummer_irreducible(make_base(r), {{{1}, {2}}}));
  auto S = smoothness_predicates(r);
  EXPECT_EQ(S.h2_ad0, 0);
  EXPECT_EQ(brute_h2(make_ad0(r)), 0u);
  EXPECT_FALSE(S.pnot2_hypothesis);

  auto F3 = Field::make(3);
  auto q8 = rep_of(LocalFieldData::Qp(3), {M(F3, {{0, 2}, {1, 0}}), M(F3, {{1, 1}, {1, 2}})}, {1, 1});
  ASSERT_TRUE(kummer_irreducible(make_base(q8), {{{1}, {2}}}));
  EXPECT_EQ(smoothness_predicates(q8).h2_ad0, 0);
}

TEST(Smoothness, NonSplitDistinctOverQ2) {
  auto F = Field::make(2, 2);
  Matrix a = Matrix::identity(F, 2);
  a(0, 0) = 2;  // generator of GF(4)^x
  auto r = rep_of(LocalFieldData::Qp(2), {a, M(F, {{1, 1}, {0, 1}})}, {1, 1});
  auto ext = as_character_extension(r);
  ASSERT_TRUE(ext);
  EXPECT_FALSE(ext->split);
  EXPECT_TRUE(ext->distinct);
  auto S = smoothness_predicates(r);
  ASSERT_TRUE(S.peq2_hypothesis);
  EXPECT_TRUE(*S.peq2_hypothesis);
  EXPECT_FALSE(S.pnot2_hypothesis);
  EXPECT_EQ(S.h2_ad0, 0);
  EXPECT_EQ(brute_h2(make_ad0(r)), 0u);

  auto split = rep_of(LocalFieldData::Qp(2), {a}, {1});
  ASSERT_TRUE(as_character_extension(split));
  EXPECT_TRUE(as_character_extension(split)->split);
  EXPECT_FALSE(*smoothness_predicates(split).peq2_hypothesis);
}

TEST(Smoothness, HypothesisImpliesUnobstructedOnCorpus) {
  std::mt19937_64 rng(71);
  std::size_t hyp = 0, total = 0;
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto F = Field::make(p);
    for (int trial = 0; trial < 80; ++trial) {
      // Upper-triangular generators; the omega values must generate F_p^x as they do over Q_p.
      std::vector<Matrix> gens;
      std::vector<std::int64_t> om;
      std::size_t k = 1 + rng() % 2;
      for (std::size_t g = 0; g < k; ++g) {
        Elem a = static_cast<Elem>(1 + rng() % (p - 1)), c = static_cast<Elem>(1 + rng() % (p - 1));
        Matrix A(F, 2, 2);
        A(0, 0) = a;
        A(1, 1) = c;
        A(0, 1) = static_cast<Elem>(rng() % p);
        gens.push_back(A);
        om.push_back(static_cast<std::int64_t>(1 + rng() % (p - 1)));
      }
      ResidualRep r{F, LocalFieldData{p, 1, 1, 1, p - 1}, gens, om};
      try {
        r.validate();
      } catch (const Error&) {
        continue;
      }
      auto S = smoothness_predicates(r);
      ++total;
      EXPECT_EQ(static_cast<std::size_t>(S.h2_ad0), brute_h2(make_ad0(r)));
      EXPECT_EQ(static_cast<std::size_t>(S.h2_ad), brute_h2(make_ad(r)));
      if (S.pnot2_hypothesis && *S.pnot2_hypothesis) {
        ++hyp;
        EXPECT_EQ(S.h2_ad0, 0);
        EXPECT_EQ(S.h2_ad, 0);
      }
    }
  }
  EXPECT_GT(hyp, 10u);
  EXPECT_GT(total, 100u);
}

TEST(FactorialException, Examples) {
  auto F7 = Field::make(7);
  auto s3 = rep_of(LocalFieldData::Qp(7), {M(F7, {{0, 6}, {1, 6}}), M(F7, {{0, 1}, {1, 0}})}, {1, 6});
  EXPECT_FALSE(factorial_exception(s3));

  auto F5 = Field::make(5);
  auto d3 = rep_of(LocalFieldData::Qp(5), {M(F5, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}), M(F5, {{1, 0, 0}, {0, 4, 0}, {0, 0, 4}})}, {1, 1});
  ASSERT_TRUE(is_absolutely_irreducible(make_base(d3)));
  EXPECT_FALSE(factorial_exception(d3));

  // Dihedral of order 8 induced from <r>; omega is the sign on s.
  auto F3 = Field::make(3);
  auto d4 = rep_of(LocalFieldData::Qp(3), {M(F3, {{0, 2}, {1, 0}}), M(F3, {{1, 0}, {0, 2}})}, {1, 2});
  ASSERT_TRUE(brute_twist_isomorphic(d4));
  EXPECT_TRUE(factorial_exception(d4));

  auto d4_q5 = rep_of(LocalFieldData::Qp(5), {M(F5, {{0, 4}, {1, 0}}), M(F5, {{1, 0}, {0, 4}})}, {1, 4});
  EXPECT_FALSE(factorial_exception(d4_q5));

  // GL_2(3) with omega = det: traces change sign under the twist.
  auto gl = rep_of(LocalFieldData::Qp(3), {M(F3, {{0, 1}, {1, 1}}), M(F3, {{1, 1}, {0, 1}})}, {2, 1});
  ASSERT_FALSE(brute_twist_isomorphic(gl));
  EXPECT_FALSE(factorial_exception(gl));

  LocalFieldData ram{3, 2, 1, 1, std::nullopt};
  auto d4_ram = rep_of(ram, {M(F3, {{0, 2}, {1, 0}}), M(F3, {{1, 0}, {0, 2}})}, {1, 2});
  EXPECT_FALSE(factorial_exception(d4_ram));
}

TEST(FactorialException, AgreesWithTwistOracleOverGF3) {
  auto F3 = Field::make(3);
  auto gl = all_gl2(F3);
  std::mt19937_64 rng(9);
  std::size_t checked = 0, hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto A = gl[rng() % gl.size()], B = gl[rng() % gl.size()];
    for (std::int64_t wa : {1, 2})
      for (std::int64_t wb : {1, 2}) {
        auto r = rep_of(LocalFieldData::Qp(3), {A, B}, {wa, wb});
        if (!is_absolutely_irreducible(make_base(r))) continue;
        // omega must be a character of the image for the twist to make sense.
        auto G = MatrixGroup::closure(r.gens);
        std::vector<std::int64_t> w(G.order(), 1);
        for (std::size_t e = 0; e < G.order(); ++e)
          for (int x : G.words()[e]) w[e] = w[e] * r.omega[static_cast<std::size_t>(x - 1)] % 3;
        bool hom = true;
        for (std::size_t e = 0; e < G.order(); ++e)
          for (std::size_t k = 0; k < 2; ++k)
            hom = hom && w[G.index_of(G.elements()[e] * r.gens[k])] == w[e] * r.omega[k] % 3;
        if (!hom) continue;
        ++checked;
        bool ex = factorial_exception(r);
        hits += ex;
        EXPECT_EQ(ex, brute_twist_isomorphic(r));
      }
  }
  EXPECT_GT(checked, 50u);
  EXPECT_GT(hits, 0u);
}

TEST(FactorialException, ReducibleThrows) {
  auto F = Field::make(3);
  auto r = rep_of(LocalFieldData::Qp(3), {M(F, {{1, 0}, {0, 2}})}, {2});
  try {
    factorial_exception(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(ComponentReport, Fields) {
  auto F = Field::make(5);
  auto r = rep_of(LocalFieldData{5, 4, 1, 5, 1u}, {Matrix::identity(F, 2)}, {1});
  auto R = component_report(r, false);
  EXPECT_EQ(R.mu_order, 5u);
  EXPECT_EQ(R.component_count_generic, R.mu_order);
  EXPECT_TRUE(R.large_L_convention);
  EXPECT_EQ(R.det_ring.variable_count, 5u);
  EXPECT_EQ(R.per_chi_dims.size(), 5u);
  for (auto& [chi, dim] : R.per_chi_dims) EXPECT_EQ(dim, 1 + 4 + 16);
  EXPECT_EQ(R.fixed_det_dim, 1 + 3 * 5);
  EXPECT_FALSE(R.factorial_exception);
}
