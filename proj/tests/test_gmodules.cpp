#include <gtest/gtest.h>

#include <random>

#include "defring/clifford.hpp"
#include "defring/gmodule.hpp"
#include "defring/meataxe.hpp"
#include "defring/pseudochar.hpp"

using namespace defring;

namespace {

Matrix M(const FieldPtr& F, std::vector<std::vector<std::int64_t>> rows) { return Matrix::from_ints(F, rows); }

ResidualRep rep_of(std::uint32_t p, std::vector<Matrix> gens, std::vector<std::int64_t> omega) {
  ResidualRep r;
  r.field = gens.at(0).field();
  r.local = LocalFieldData::Qp(p);
  r.gens = std::move(gens);
  r.omega = std::move(omega);
  r.validate();
  return r;
}

std::vector<Matrix> s3(const FieldPtr& F) { return {M(F, {{0, -1}, {1, -1}}), M(F, {{0, 1}, {1, 0}})}; }

std::vector<Matrix> q8(const FieldPtr& F) { return {M(F, {{0, 2}, {1, 0}}), M(F, {{1, 1}, {1, 2}})}; }

// Count of vectors fixed by every action matrix, by enumeration.
std::size_t brute_fixed_count(const GModule& Mod) {
  const Field& F = *Mod.field;
  std::size_t total = 1;
  for (std::size_t i = 0; i < Mod.dim; ++i) total *= F.q();
  std::size_t count = 0;
  Vec v(Mod.dim, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t x = idx;
    for (std::size_t i = 0; i < Mod.dim; ++i) {
      v[i] = static_cast<Elem>(x % F.q());
      x /= F.q();
    }
    bool fixed = true;
    for (auto& A : Mod.action)
      if (A * v != v) fixed = false;
    count += fixed;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Invariant lines, by enumerating normalized vectors.
std::vector<Vec> brute_invariant_lines(const GModule& Mod) {
  const Field& F = *Mod.field;
  std::vector<Vec> out;
  std::size_t total = ipow(F.q(), Mod.dim);
  for (std::size_t idx = 1; idx < total; ++idx) {
    Vec v(Mod.dim);
    std::size_t x = idx;
    for (std::size_t i = 0; i < Mod.dim; ++i) {
      v[i] = static_cast<Elem>(x % F.q());
      x /= F.q();
    }
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    bool inv = true;
    for (auto& A : Mod.action) {
      Vec w = A * v;
      Elem c = w[lead];
      for (std::size_t i = 0; i < Mod.dim; ++i)
        if (w[i] != F.mul(c, v[i])) inv = false;
    }
    if (inv) out.push_back(v);
  }
  return out;
}

GModule random_module(const FieldPtr& F, std::size_t dim, std::size_t gens, std::mt19937_64& rng) {
  std::vector<Matrix> action;
  while (action.size() < gens) {
    Matrix A(F, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) A(i, j) = static_cast<Elem>(rng() % F->q());
    if (A.invertible()) action.push_back(A);
  }
  return GModule::custom(F, action);
}

GModule direct_sum(const GModule& a, const GModule& b) {
  std::vector<Matrix> act;
  for (std::size_t g = 0; g < a.arity(); ++g) act.push_back(Matrix::block_diagonal(a.field, {a.action[g], b.action[g]}));
  return GModule::custom(a.field, act, a.omega);
}

}  // namespace

TEST(AdjointModules, TrivialRepGivesTrivialAd) {
  auto F = Field::make(5);
  auto r = rep_of(5, {Matrix::identity(F, 2)}, {2});
  auto ad = make_ad(r);
  EXPECT_EQ(ad.dim, 4u);
  EXPECT_TRUE(ad.action[0].is_identity());
}

TEST(AdjointModules, DiagonalRepEigenvalues) {
  auto F = Field::make(5);
  auto r = rep_of(5, {M(F, {{1, 0}, {0, 2}})}, {2});
  auto ad = make_ad(r);
  // e11, e12, e21, e22 scale by 1, 2^-1, 2, 1.
  EXPECT_EQ(ad.action[0], M(F, {{1, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}}));
}

TEST(AdjointModules, Dimensions) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto F = Field::make(p);
    for (std::size_t d = 1; d <= 4; ++d) {
      auto r = rep_of(p, {Matrix::identity(F, d)}, {1});
      EXPECT_EQ(make_ad(r).dim, d * d);
      EXPECT_EQ(make_ad0(r).dim, d * d - 1);
      EXPECT_EQ(make_adbar(r).dim, d * d - 1);
    }
  }
}

TEST(AdjointModules, NonSplitUnipotentAdBarHasUniqueLine) {
  // Full unipotent group over GF(4): b(g) and b(g)^2 differ somewhere.
  auto F = Field::make(2, 2);
  Matrix u = Matrix::identity(F, 2);
  u(0, 1) = 2;  // the class of x in GF(2)[x]/(x^2+x+1)
  auto r = rep_of(2, {M(F, {{1, 1}, {0, 1}}), u}, {1, 1});
  auto adbar = make_adbar(r);
  auto lines = brute_invariant_lines(adbar);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], (Vec{0, 1, 0}));
}

TEST(AdjointModules, SingleUnipotentOverGF2AdBarLines) {
  // b = b^2 on GF(2), so e11 + e21 is fixed as well.
  auto F = Field::make(2);
  auto r = rep_of(2, {M(F, {{1, 1}, {0, 1}})}, {1});
  auto lines = brute_invariant_lines(make_adbar(r));
  EXPECT_EQ(lines.size(), 3u);
  EXPECT_EQ(invariants_dim(make_adbar(r)), 2u);
}

TEST(AdjointModules, ConjugationMatchesDirectComputation) {
  std::mt19937_64 rng(7);
  auto F = Field::make(3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    auto V = random_module(F, 3, 2, rng);
    auto ad = make_ad(V);
    for (std::size_t g = 0; g < V.arity(); ++g) {
      Matrix X(F, 3, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) X(i, j) = static_cast<Elem>(rng() % F->q());
      Matrix Y = V.action[g] * X * V.action[g].inverse();
      Vec y = ad.action[g] * X.entries();
      EXPECT_EQ(y, Y.entries());
    }
  }
}

TEST(AdjointModules, TraceIsModuleMapAlways) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u}) {
    auto F = Field::make(p);
    for (std::size_t d = 2; d <= 3; ++d) {
      auto ad = make_ad(random_module(F, d, 2, rng));
      Matrix tr(F, 1, d * d);
      for (std::size_t i = 0; i < d; ++i) tr(0, i * d + i) = 1;
      for (auto& A : ad.action) EXPECT_EQ(tr * A, tr);
    }
  }
}

TEST(AdjointModules, SplitsOffScalarsExactlyWhenPDoesNotDivideD) {
  auto F7 = Field::make(7);
  auto V7 = GModule::custom(F7, s3(F7));
  auto one7 = GModule::custom(F7, {Matrix::identity(F7, 1), Matrix::identity(F7, 1)});
  EXPECT_TRUE(is_isomorphic(make_ad(V7), direct_sum(make_ad0(V7), one7)));

  auto F2 = Field::make(2);
  auto V2 = GModule::custom(F2, s3(F2));
  auto one2 = GModule::custom(F2, {Matrix::identity(F2, 1), Matrix::identity(F2, 1)});
  EXPECT_FALSE(is_isomorphic(make_ad(V2), direct_sum(make_ad0(V2), one2)));
}

TEST(Twist, ZeroAndCharacteristicTwo) {
  auto F5 = Field::make(5);
  auto r = rep_of(5, s3(F5), {2, 4});
  auto V = make_base(r);
  EXPECT_EQ(twist(V, 0).action, V.action);
  auto F2 = Field::make(2);
  auto V2 = make_base(rep_of(2, s3(F2), {1, 1}));
  for (int k : {-3, 1, 2, 5}) EXPECT_EQ(twist(V2, k).action, V2.action);
}

TEST(Twist, OneDimensional) {
  auto F = Field::make(5);
  auto V = make_base(rep_of(5, {Matrix::identity(F, 1)}, {2}));
  EXPECT_EQ(twist(V, 1).action[0], M(F, {{2}}));
  EXPECT_EQ(twist(V, 2).action[0], M(F, {{4}}));
  EXPECT_EQ(twist(V, -1).action[0], M(F, {{3}}));
}

TEST(Invariants, Examples) {
  auto F = Field::make(5);
  auto triv = make_ad(rep_of(5, {Matrix::identity(F, 2)}, {2}));
  EXPECT_EQ(invariants_dim(triv), 4u);
  EXPECT_EQ(invariants_dim(twist(triv, 1)), 0u);
  auto split = make_ad(rep_of(5, {M(F, {{1, 0}, {0, 2}})}, {2}));
  auto tw = twist(split, 1);
  EXPECT_EQ(invariants_dim(tw), 1u);
  EXPECT_EQ(brute_fixed_count(tw), 5u);
}

TEST(Invariants, AgreesWithEnumeration) {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    auto F = q == 4 ? Field::make(2, 2) : Field::make(q);
    for (int trial = 0; trial < 20; ++trial) {
      auto Mod = random_module(F, 1 + rng() % 4, 1 + rng() % 2, rng);
      EXPECT_EQ(ipow(q, invariants_dim(Mod)), brute_fixed_count(Mod));
    }
  }
}

TEST(Invariants, HomInvariantsEqualIntertwiners) {
  std::mt19937_64 rng(5);
  auto F = Field::make(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto A = random_module(F, 2, 2, rng);
    auto B = A;
    if (trial % 2) B = random_module(F, 1 + rng() % 3, 2, rng);
    auto X = intertwiners(A, B);
    EXPECT_EQ(invariants_dim(make_hom(A, B)), X.size());
    for (auto& x : X)
      for (std::size_t g = 0; g < A.arity(); ++g) EXPECT_EQ(B.action[g] * x, x * A.action[g]);
  }
}

TEST(Irreducibility, Examples) {
  auto F5 = Field::make(5);
  auto one = GModule::custom(F5, {M(F5, {{3}})});
  EXPECT_TRUE(is_irreducible(one));
  EXPECT_TRUE(is_absolutely_irreducible(one));
  EXPECT_FALSE(is_irreducible(GModule::custom(F5, {M(F5, {{1, 0}, {0, 2}})})));
  auto F7 = Field::make(7);
  auto V = GModule::custom(F7, s3(F7));
  EXPECT_TRUE(is_irreducible(V));
  EXPECT_TRUE(is_absolutely_irreducible(V));
}

TEST(Irreducibility, IrreducibleButNotAbsolutely) {
  auto F3 = Field::make(3);
  auto C4 = GModule::custom(F3, {M(F3, {{0, 1}, {2, 0}})});
  EXPECT_TRUE(is_irreducible(C4));
  EXPECT_FALSE(is_absolutely_irreducible(C4));
  EXPECT_FALSE(is_irreducible(extend_scalars(C4, Field::make(3, 2))));
}

TEST(Irreducibility, MeatAxeAgreesWithExhaustiveScan) {
  std::mt19937_64 rng(17);
  IrreducibilityOptions meataxe;
  meataxe.exhaustive_limit = 0;
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto F = q == 4 ? Field::make(2, 2) : Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      auto Mod = random_module(F, 2 + rng() % 3, 1 + rng() % 2, rng);
      bool exhaustive = is_irreducible(Mod);
      EXPECT_EQ(is_irreducible(Mod, meataxe), exhaustive);
      auto sub = find_submodule(Mod, meataxe);
      if (sub) {
        EXPECT_GT(sub->size(), 0u);
        EXPECT_LT(sub->size(), Mod.dim);
        EXPECT_TRUE(is_invariant_subspace(Mod, *sub));
      }
    }
  }
}

TEST(Irreducibility, LinesDecideSmallDimensions) {
  // In dimension <= 3 a proper submodule or its quotient gives an invariant line in V or V*.
  std::mt19937_64 rng(19);
  auto F = Field::make(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto Mod = random_module(F, 2 + rng() % 2, 2, rng);
    std::vector<Matrix> dual;
    for (auto& A : Mod.action) dual.push_back(A.inverse().transpose());
    bool has_line = !brute_invariant_lines(Mod).empty() || !brute_invariant_lines(GModule::custom(F, dual)).empty();
    EXPECT_EQ(is_irreducible(Mod), !has_line);
  }
}

TEST(Semisimplify, Unipotent) {
  auto F = Field::make(3);
  auto ss = semisimplify(std::vector<Matrix>{M(F, {{1, 1}, {0, 1}})});
  EXPECT_TRUE(ss.block_diagonal[0].is_identity());
  ASSERT_EQ(ss.constituents.size(), 2u);
  for (auto& c : ss.constituents) EXPECT_TRUE(c.action[0].is_identity());
}

TEST(Semisimplify, AlreadySemisimple) {
  auto F = Field::make(7);
  auto gens = s3(F);
  auto ss = semisimplify(gens);
  ASSERT_EQ(ss.constituents.size(), 1u);
  EXPECT_EQ(ss.block_diagonal, gens);
}

TEST(Semisimplify, NonSplitExtension) {
  auto F = Field::make(5);
  auto ss = semisimplify(std::vector<Matrix>{M(F, {{2, 1}, {0, 1}})});
  EXPECT_EQ(ss.block_diagonal[0], M(F, {{2, 0}, {0, 1}}));
}

TEST(Semisimplify, FlagBasisConjugatesToBlockTriangular) {
  std::mt19937_64 rng(23);
  auto F = Field::make(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto Mod = random_module(F, 4, 2, rng);
    auto cs = composition_series(Mod);
    Matrix Pinv = cs.basis.inverse();
    for (std::size_t g = 0; g < Mod.arity(); ++g) {
      Matrix C = Pinv * Mod.action[g] * cs.basis;
      std::size_t off = 0;
      for (auto& f : cs.factors) {
        EXPECT_EQ(C.submatrix(off, off, f.dim, f.dim), f.action[g]);
        for (std::size_t i = off + f.dim; i < Mod.dim; ++i)
          for (std::size_t j = off; j < off + f.dim; ++j) EXPECT_EQ(C(i, j), 0u);
        off += f.dim;
      }
    }
    for (auto& f : cs.factors) EXPECT_TRUE(is_irreducible(f));
  }
}

TEST(Semisimplify, BrauerNesbittRoundTrip) {
  std::mt19937_64 rng(29);
  for (std::uint32_t q : {2u, 3u}) {
    auto F = Field::make(q);
    for (int trial = 0; trial < 25; ++trial) {
      auto Mod = random_module(F, 2 + rng() % 2, 2, rng);
      auto ss = semisimplify(Mod);
      EXPECT_TRUE(pseudo_equal(Mod.action, ss.block_diagonal));
    }
  }
}

TEST(Clifford, S3OverA3) {
  auto F = Field::make(7);
  auto V = GModule::custom(F, s3(F));
  auto rep = clifford_test(V, {{1}});
  EXPECT_EQ(rep.group_order, 6u);
  EXPECT_EQ(rep.h_order, 3u);
  EXPECT_TRUE(rep.restriction_reducible);
  ASSERT_TRUE(rep.chi_index.has_value());
  EXPECT_EQ(rep.chi_order, 2u);
  EXPECT_EQ(rep.hstar_order, 3u);
}

TEST(Clifford, WholeGroup) {
  auto F = Field::make(7);
  auto V = GModule::custom(F, s3(F));
  auto rep = clifford_test(V, {{1}, {2}});
  EXPECT_EQ(rep.m, 1u);
  EXPECT_FALSE(rep.restriction_reducible);
  EXPECT_FALSE(rep.chi_index.has_value());
}

TEST(Clifford, QuaternionOverGF9) {
  auto F9 = Field::make(3, 2);
  auto V = extend_scalars(GModule::custom(Field::make(3), q8(Field::make(3))), F9);
  auto rep = clifford_test(V, {{1}});
  EXPECT_EQ(rep.group_order, 8u);
  EXPECT_EQ(rep.m, 2u);
  EXPECT_TRUE(rep.restriction_reducible);
  ASSERT_TRUE(rep.chi_index.has_value());

  // Explicit intertwiner V -> V (x) chi.
  std::vector<Matrix> twisted = V.action;
  twisted[1] = twisted[1].scaled(F9->neg(1));
  auto W = GModule::custom(F9, twisted);
  auto X = find_isomorphism(V, W);
  ASSERT_TRUE(X.has_value());
  EXPECT_TRUE(X->invertible());
  for (std::size_t g = 0; g < 2; ++g) EXPECT_EQ(W.action[g] * *X, *X * V.action[g]);
}

TEST(Clifford, Preconditions) {
  auto F = Field::make(7);
  auto V = GModule::custom(F, s3(F));
  EXPECT_THROW(clifford_test(V, {{2}}), Error);  // transposition subgroup is not normal
  auto F5 = Field::make(5);
  EXPECT_THROW(clifford_test(GModule::custom(F5, {M(F5, {{1, 0}, {0, 2}})}), {}), Error);
}

TEST(Kummer, Examples) {
  auto F = Field::make(7);
  auto V = GModule::custom(F, s3(F));
  EXPECT_TRUE(kummer_irreducible(V, {}));
  EXPECT_FALSE(kummer_irreducible(V, {{{1}}}));
  auto F3 = Field::make(3);
  auto Q = GModule::custom(F3, q8(F3));
  EXPECT_TRUE(kummer_irreducible(Q, {{{1}, {2}}}));
  EXPECT_FALSE(kummer_irreducible(Q, {{{1}}}));
  auto F5 = Field::make(5);
  EXPECT_THROW(kummer_irreducible(GModule::custom(F5, {M(F5, {{1, 0}, {0, 2}})}), {}), Error);
}

TEST(Validation, NamesOffendingField) {
  auto F = Field::make(5);
  ResidualRep r;
  r.field = F;
  r.local = LocalFieldData::Qp(5);
  r.gens = {Matrix::identity(F, 2), M(F, {{1, 2}, {2, 4}})};
  r.omega = {1, 1};
  try {
    r.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_EQ(e.field(), "generators[1].matrix");
  }
  r.gens[1] = Matrix::identity(F, 2);
  r.omega = {0, 1};
  try {
    r.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.field(), "generators[0].omega");
  }
}

TEST(Validation, LocalFieldInvariants) {
  EXPECT_NO_THROW(LocalFieldData::Qp(2).validate());
  LocalFieldData bad{2, 1, 1, 1, std::nullopt};
  EXPECT_THROW(bad.validate(), Error);
  LocalFieldData notpower{5, 1, 1, 10, std::nullopt};
  EXPECT_THROW(notpower.validate(), Error);
  LocalFieldData zeta{5, 4, 1, 5, 1u};
  EXPECT_NO_THROW(zeta.validate());
  EXPECT_EQ(zeta.n(), 4u);
}

TEST(Validation, ZetaDegreeMatchesOmegaSubgroup) {
  auto F = Field::make(7);
  ResidualRep r;
  r.field = F;
  r.local = {7, 1, 1, 1, 3u};
  r.gens = {Matrix::identity(F, 1)};
  r.omega = {2};  // order 3 mod 7
  EXPECT_NO_THROW(r.validate());
  r.omega = {3};  // order 6
  EXPECT_THROW(r.validate(), Error);
}
