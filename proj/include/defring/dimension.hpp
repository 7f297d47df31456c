#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defring/error.hpp"

namespace defring {

inline std::int64_t choose2(std::int64_t a) { return a * (a - 1) / 2; }

/// Statistics of a grouping of the constituents into twist classes.
struct PartitionData {
  std::int64_t d = 0;
  std::int64_t n = 0;
  std::vector<std::int64_t> block_dims;
  std::vector<std::vector<std::size_t>> twist_classes;  // block indices
  std::vector<std::int64_t> class_sizes;                // n'_i
  std::vector<std::int64_t> class_dims;                 // c_i
  std::int64_t l = 0, nP = 0, pP = 0, delta = 0;

  std::int64_t sum_class_choose2() const {
    std::int64_t s = 0;
    for (auto k : class_sizes) s += choose2(k);
    return s;
  }

  bool is_minimal() const { return block_dims.size() == 1; }
};

inline PartitionData partition_stats(std::int64_t d, std::int64_t n, const std::vector<std::int64_t>& block_dims,
                                     const std::vector<std::vector<std::size_t>>& twist_classes) {
  if (d < 1 || n < 1) throw Error(ErrorCode::InconsistentPartition, "d and n must be positive");
  PartitionData P;
  P.d = d;
  P.n = n;
  P.block_dims = block_dims;
  P.twist_classes = twist_classes;
  std::int64_t total = 0;
  for (auto b : block_dims) {
    if (b < 1) throw Error(ErrorCode::InconsistentPartition, "block dimensions must be positive");
    total += b;
  }
  if (total != d) throw Error(ErrorCode::InconsistentPartition, "block dimensions do not sum to d");
  std::vector<int> seen(block_dims.size(), 0);
  for (auto& cls : twist_classes) {
    if (cls.empty()) throw Error(ErrorCode::InconsistentPartition, "empty twist class");
    for (auto j : cls) {
      if (j >= block_dims.size()) throw Error(ErrorCode::InconsistentPartition, "twist class names a missing block");
      if (seen[j]++) throw Error(ErrorCode::InconsistentPartition, "block in two twist classes");
      if (block_dims[j] != block_dims[cls[0]])
        throw Error(ErrorCode::InconsistentPartition, "twist class mixes block dimensions");
    }
    P.class_sizes.push_back(static_cast<std::int64_t>(cls.size()));
    P.class_dims.push_back(block_dims[cls[0]]);
  }
  for (auto s : seen)
    if (s != 1) throw Error(ErrorCode::InconsistentPartition, "every block needs exactly one twist class");
  for (auto b : block_dims) P.l += b * b;
  P.nP = (d * d - P.l) / 2;
  P.pP = P.l + P.nP;
  P.delta = std::max<std::int64_t>(0, P.sum_class_choose2() - (1 + n));
  return P;
}

/// Every block in its own twist class.
inline PartitionData partition_stats(std::int64_t d, std::int64_t n, const std::vector<std::int64_t>& block_dims) {
  std::vector<std::vector<std::size_t>> cls;
  for (std::size_t j = 0; j < block_dims.size(); ++j) cls.push_back({j});
  return partition_stats(d, n, block_dims, cls);
}

/// Fibre bound d^2 - r + n_P n + sum C(n_i, 2).
inline std::int64_t bound_fibre(std::int64_t d, std::int64_t n, const std::vector<std::int64_t>& constituent_dims,
                                const std::vector<std::int64_t>& class_sizes) {
  std::int64_t r = static_cast<std::int64_t>(constituent_dims.size());
  std::int64_t nil = 0;
  for (std::size_t i = 0; i < constituent_dims.size(); ++i)
    for (std::size_t j = i + 1; j < constituent_dims.size(); ++j) nil += constituent_dims[i] * constituent_dims[j];
  std::int64_t rep = 0;
  for (auto k : class_sizes) rep += choose2(k);
  return d * d - r + nil * n + rep;
}

inline std::int64_t bound_ZP(const PartitionData& P) { return P.d * P.d + P.pP * P.n + P.delta; }

inline std::int64_t bound_ZPij(const PartitionData& P) {
  return P.d * P.d + P.pP * P.n + P.sum_class_choose2() - (1 + P.n);
}

inline std::int64_t bound_Y(const PartitionData& Pmax) { return Pmax.d * Pmax.d + Pmax.nP * Pmax.n + Pmax.nP - 1; }

/// d^2 + d^2 n - bound_ZP, checked against n (d = 2) or 1 + n (d > 2) off the minimal partition.
inline std::int64_t codim_gap(const PartitionData& P) {
  std::int64_t gap = P.d * P.d + P.d * P.d * P.n - bound_ZP(P);
  if (!P.is_minimal()) {
    std::int64_t need = P.d == 2 ? P.n : 1 + P.n;
    if (gap < need)
      throw Error(ErrorCode::AssertionFailed, "codimension gap " + std::to_string(gap) + " below " + std::to_string(need));
  }
  return gap;
}

/// d^2 + d^2 n - bound_Y, at least 1 + l n.
inline std::int64_t codim_gap_Y(const PartitionData& Pmax) {
  std::int64_t gap = Pmax.d * Pmax.d + Pmax.d * Pmax.d * Pmax.n - bound_Y(Pmax);
  if (gap < 1 + Pmax.l * Pmax.n) throw Error(ErrorCode::AssertionFailed, "gap over Y below 1 + l n");
  return gap;
}

/// Integer partitions of m in non-increasing order.
inline std::vector<std::vector<std::int64_t>> integer_partitions(std::int64_t m) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t left, std::int64_t maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = std::min(left, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(m, m);
  return out;
}

/// All block-dimension partitions of d with all twist-class structures.
inline std::vector<PartitionData> partition_sweep(std::int64_t d, std::int64_t n) {
  std::vector<PartitionData> out;
  for (auto& blocks : integer_partitions(d)) {
    std::map<std::int64_t, std::vector<std::size_t>> by_dim;
    for (std::size_t j = 0; j < blocks.size(); ++j) by_dim[blocks[j]].push_back(j);
    std::vector<std::vector<std::vector<std::vector<std::size_t>>>> options;
    for (auto& [dim, idx] : by_dim) {
      std::vector<std::vector<std::vector<std::size_t>>> opts;
      for (auto& sizes : integer_partitions(static_cast<std::int64_t>(idx.size()))) {
        std::vector<std::vector<std::size_t>> classes;
        std::size_t pos = 0;
        for (auto s : sizes) {
          classes.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(pos), idx.begin() + static_cast<std::ptrdiff_t>(pos + s));
          pos += static_cast<std::size_t>(s);
        }
        opts.push_back(std::move(classes));
      }
      options.push_back(std::move(opts));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
      std::vector<std::vector<std::size_t>> classes;
      for (std::size_t g = 0; g < options.size(); ++g)
        for (auto& c : options[g][pick[g]]) classes.push_back(c);
      out.push_back(partition_stats(d, n, blocks, classes));
      std::size_t g = 0;
      while (g < options.size() && ++pick[g] == options[g].size()) pick[g++] = 0;
      if (g == options.size()) break;
    }
  }
  return out;
}

inline std::string blocks_label(const PartitionData& P) {
  std::string s;
  for (std::size_t i = 0; i < P.twist_classes.size(); ++i) {
    if (i) s += " ";
    s += "{";
    for (std::size_t k = 0; k < P.twist_classes[i].size(); ++k) {
      if (k) s += " ";
      s += std::to_string(P.block_dims[P.twist_classes[i][k]]);
    }
    s += "}";
  }
  return s;
}

/// One row per partition and twist structure.
inline std::string sweep_csv(std::int64_t d, std::int64_t n) {
  std::string s = "d,n,classes,l_P,n_P,p_P,delta_P,bound_ZP,bound_ZPij,bound_Y,codim_gap,codim_gap_Y\n";
  for (auto& P : partition_sweep(d, n)) {
    s += std::to_string(d) + "," + std::to_string(n) + "," + blocks_label(P) + "," + std::to_string(P.l) + "," +
         std::to_string(P.nP) + "," + std::to_string(P.pP) + "," + std::to_string(P.delta) + "," +
         std::to_string(bound_ZP(P)) + "," + std::to_string(bound_ZPij(P)) + "," + std::to_string(bound_Y(P)) + "," +
         std::to_string(codim_gap(P)) + "," + std::to_string(codim_gap_Y(P)) + "\n";
  }
  return s;
}

struct ExpectedDims {
  std::int64_t R, R_mod, Agen, Agen_mod, R_chi, R_chi_mod, R_psi, R_psi_mod, Agen_psi;
  std::uint64_t mu_order;
};

inline ExpectedDims expected_dims(std::int64_t d, std::int64_t n, std::uint64_t mu_order) {
  std::int64_t full = d * d + d * d * n;
  std::int64_t psi = (d * d - 1) * (n + 1);
  return {1 + full, full, 1 + full, full, 1 + full, full, 1 + psi, psi, 1 + psi, mu_order};
}

struct MrsBound {
  std::int64_t generic, special;
};

inline MrsBound mrs_bound(std::int64_t d, std::int64_t n, const std::vector<std::int64_t>& dims) {
  std::int64_t s = 0;
  for (auto x : dims) s += x * x;
  std::int64_t g = 1 + d * d + n * s;
  return {g, g - 1};
}

struct KummerCodims {
  std::int64_t spcl;                          // codim of Z^spcl
  std::int64_t kred;                          // codim of Z^Kred
  std::optional<std::int64_t> complement;     // codim of the complement of V^Kirr (none when d = 1)
  std::optional<std::int64_t> generic_complement;  // generic fibre: none when that complement is empty
  bool generic_all_irreducible = false;
};

inline KummerCodims kummer_codims(std::int64_t d, std::int64_t n, std::int64_t m_constituents) {
  KummerCodims K;
  K.spcl = (n * d * d + 1) / 2;
  K.kred = n * d;
  if (d >= 2) {
    std::int64_t c = d == 2 ? n : 1 + n;
    if (m_constituents == 1) c = std::max(c, d * n);
    K.complement = c;
    if (m_constituents == 1) {
      K.generic_all_irreducible = true;
    } else {
      K.generic_complement = d == 2 ? n : 1 + n;
    }
  } else {
    K.generic_all_irreducible = true;
  }
  return K;
}

}  // namespace defring
