#include <gtest/gtest.h>

#include <functional>
#include <optional>

#include "defring/dimension.hpp"

using namespace defring;

namespace {

std::int64_t binom2(std::int64_t a) {
  std::int64_t c = 0;
  for (std::int64_t i = 0; i < a; ++i) c += i;
  return c;
}

// n_P as the pairwise sum over distinct blocks.
std::int64_t pairwise(const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) s += b[i] * b[j];
  return s;
}

std::int64_t block_squares(const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (auto x : b) s += x * x;
  return s;
}

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(PartitionStats, Examples) {
  auto P = partition_stats(2, 1, {1, 1});
  EXPECT_EQ(P.l, 2);
  EXPECT_EQ(P.nP, 1);
  EXPECT_EQ(P.pP, 3);
  EXPECT_EQ(P.delta, 0);

  for (std::int64_t n = 1; n <= 6; ++n) {
    auto Q = partition_stats(4, n, {1, 1, 2}, {{0, 1}, {2}});
    EXPECT_EQ(Q.l, 6);
    EXPECT_EQ(Q.nP, 5);
    EXPECT_EQ(Q.pP, 11);
    EXPECT_EQ(Q.delta, 0);
    EXPECT_EQ(Q.class_sizes, (std::vector<std::int64_t>{2, 1}));
    EXPECT_EQ(Q.class_dims, (std::vector<std::int64_t>{1, 2}));
  }

  EXPECT_EQ(partition_stats(2, 1, {1, 1}, {{0, 1}}).delta, 0);
}

TEST(PartitionStats, DeltaTurnsPositiveWithManyTwistRelatedBlocks) {
  // Five twist-related lines: C(5,2) = 10 against 1 + n.
  auto P = partition_stats(5, 2, {1, 1, 1, 1, 1}, {{0, 1, 2, 3, 4}});
  EXPECT_EQ(P.delta, 10 - 3);
  EXPECT_EQ(partition_stats(5, 9, {1, 1, 1, 1, 1}, {{0, 1, 2, 3, 4}}).delta, 0);
}

TEST(PartitionStats, Inconsistent) {
  EXPECT_EQ(code_of([] { partition_stats(3, 1, {1, 1}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 1, {0, 2}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(3, 1, {1, 2}, {{0, 1}}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 1, {1, 1}, {{0}}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 1, {1, 1}, {{0, 1}, {1}}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 1, {1, 1}, {{0}, {2}}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 1, {1, 1}, {{0}, {1}, {}}); }), ErrorCode::InconsistentPartition);
  EXPECT_EQ(code_of([] { partition_stats(2, 0, {1, 1}); }), ErrorCode::InconsistentPartition);
}

TEST(BoundFibre, Examples) {
  for (std::int64_t d = 1; d <= 6; ++d)
    for (std::int64_t n = 1; n <= 4; ++n) EXPECT_EQ(bound_fibre(d, n, {d}, {1}), d * d - 1);
  EXPECT_EQ(bound_fibre(2, 1, {1, 1}, {1, 1}), 3);
  EXPECT_EQ(bound_fibre(2, 1, {1, 1}, {2}), 4);
}

TEST(Bounds, Examples) {
  auto P = partition_stats(2, 1, {1, 1});
  EXPECT_EQ(bound_ZP(P), 7);
  EXPECT_EQ(bound_ZPij(P), 5);
  auto Pmax = partition_stats(2, 1, {1, 1}, {{0, 1}});
  EXPECT_EQ(bound_Y(Pmax), 5);
}

TEST(CodimGap, Examples) {
  for (auto& P : partition_sweep(2, 1))
    if (!P.is_minimal()) {
      EXPECT_GE(codim_gap(P), 1);
    }
  EXPECT_GE(codim_gap(partition_stats(3, 1, {1, 2})), 2);
  EXPECT_EQ(codim_gap(partition_stats(3, 1, {3})), 0);
}

TEST(ExpectedDims, Examples) {
  auto E = expected_dims(2, 1, 1);
  EXPECT_EQ(E.R, 9);
  EXPECT_EQ(E.R_mod, 8);
  EXPECT_EQ(E.R_psi, 7);
  EXPECT_EQ(E.R_psi_mod, 6);
  for (std::int64_t n = 1; n <= 8; ++n) EXPECT_EQ(expected_dims(1, n, 1).R, n + 2);
  EXPECT_EQ(expected_dims(3, 2, 1).Agen, 28);
  for (std::int64_t d = 1; d <= 5; ++d)
    for (std::int64_t n = 1; n <= 4; ++n) {
      auto X = expected_dims(d, n, 2);
      EXPECT_EQ(X.R, X.R_mod + 1);
      EXPECT_EQ(X.R_chi, X.R);
      EXPECT_EQ(X.Agen_psi, X.R_psi);
      EXPECT_EQ(X.R - X.R_psi, n + 1);
    }
}

TEST(MrsBound, Examples) {
  auto a = mrs_bound(2, 1, {1, 1});
  EXPECT_EQ(a.generic, 7);
  EXPECT_EQ(a.special, 6);
  auto b = mrs_bound(2, 1, {2});
  EXPECT_EQ(b.generic, 9);
  EXPECT_EQ(b.special, 8);
  auto c = mrs_bound(4, 1, {2, 2});
  EXPECT_EQ(c.generic, 25);
  EXPECT_EQ(c.special, 24);
}

TEST(KummerCodims, Examples) {
  auto K = kummer_codims(2, 1, 2);
  EXPECT_EQ(K.spcl, 2);
  EXPECT_EQ(K.kred, 2);
  ASSERT_TRUE(K.complement);
  EXPECT_EQ(*K.complement, 1);
  EXPECT_EQ(*kummer_codims(3, 1, 1).complement, 3);
  EXPECT_TRUE(kummer_codims(3, 1, 1).generic_all_irreducible);
  EXPECT_EQ(*kummer_codims(2, 3, 2).complement, 3);
  EXPECT_EQ(*kummer_codims(3, 2, 2).complement, 3);
  EXPECT_FALSE(kummer_codims(1, 4, 1).complement);
  EXPECT_EQ(kummer_codims(3, 1, 2).spcl, 5);
}

TEST(PartitionInvariants, FormulaFourIdentity) {
  for (std::int64_t d = 1; d <= 8; ++d)
    for (auto& P : partition_sweep(d, 1)) {
      EXPECT_EQ(P.l + 2 * P.nP, d * d);
      EXPECT_EQ(P.l, block_squares(P.block_dims));
      EXPECT_EQ(P.nP, pairwise(P.block_dims));
      std::int64_t lc = 0, sz = 0;
      for (std::size_t i = 0; i < P.class_sizes.size(); ++i) {
        lc += P.class_sizes[i] * P.class_dims[i] * P.class_dims[i];
        sz += P.class_sizes[i];
      }
      EXPECT_EQ(lc, P.l);
      EXPECT_EQ(sz, static_cast<std::int64_t>(P.block_dims.size()));
    }
}

TEST(PartitionInvariants, ChooseTwoSuperadditiveUpToTwelve) {
  // All ordered tuples of positive integers with sum at most 12.
  std::size_t checked = 0;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t)> rec = [&](std::int64_t left) {
    if (!cur.empty()) {
      std::int64_t lhs = 0, sum = 0;
      for (auto a : cur) {
        lhs += binom2(a);
        sum += a;
      }
      EXPECT_LE(lhs, binom2(sum));
      EXPECT_EQ(lhs, [&] {
        std::int64_t s = 0;
        for (auto a : cur) s += choose2(a);
        return s;
      }());
      ++checked;
    }
    for (std::int64_t a = 1; a <= left; ++a) {
      cur.push_back(a);
      rec(left - a);
      cur.pop_back();
    }
  };
  rec(12);
  EXPECT_EQ(checked, 4095u);
}

TEST(PartitionInvariants, RefinementMonotone) {
  for (std::int64_t d = 1; d <= 6; ++d)
    for (auto& blocks : integer_partitions(d)) {
      auto P = partition_stats(d, 1, blocks);
      for (std::size_t j = 0; j < blocks.size(); ++j)
        for (std::int64_t a = 1; a < blocks[j]; ++a) {
          auto finer = blocks;
          finer[j] = a;
          finer.push_back(blocks[j] - a);
          auto Q = partition_stats(d, 1, finer);
          EXPECT_LT(Q.l, P.l);
          EXPECT_GT(Q.nP, P.nP);
        }
    }
}

TEST(PartitionInvariants, IntegerPartitionCounts) {
  std::vector<std::size_t> counts{1, 2, 3, 5, 7, 11, 15, 22};
  for (std::int64_t m = 1; m <= 8; ++m) EXPECT_EQ(integer_partitions(m).size(), counts[static_cast<std::size_t>(m - 1)]);
}

TEST(PartitionInvariants, GapSweep) {
  for (std::int64_t d = 1; d <= 6; ++d)
    for (std::int64_t n = 1; n <= 5; ++n) {
      auto sweep = partition_sweep(d, n);
      ASSERT_FALSE(sweep.empty());
      std::size_t minimal = 0;
      for (auto& P : sweep) {
        std::int64_t gap = 0;
        ASSERT_NO_THROW(gap = codim_gap(P)) << d << " " << n << " " << blocks_label(P);
        if (P.is_minimal()) {
          ++minimal;
          EXPECT_EQ(bound_ZP(P), d * d + d * d * n);
          EXPECT_EQ(gap, 0);
        } else {
          EXPECT_GE(gap, d == 2 ? n : 1 + n);
          EXPECT_LE(bound_ZPij(P), bound_ZP(P) + P.sum_class_choose2());
        }
        if (P.block_dims.size() == static_cast<std::size_t>(d) && d > 1) {
          EXPECT_NO_THROW(codim_gap_Y(P));
          EXPECT_EQ(P.l, d);
        }
      }
      EXPECT_EQ(minimal, 1u);
    }
}

TEST(PartitionInvariants, SweepCsvShape) {
  auto csv = sweep_csv(3, 2);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 1 + partition_sweep(3, 2).size());
  EXPECT_NE(csv.find("{1} {2}"), std::string::npos);
  EXPECT_EQ(csv.rfind("d,n,classes", 0), 0u);
}
