#pragma once

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "defring/error.hpp"
#include "defring/matrix.hpp"

namespace defring {

/// Generator word: letter k > 0 is generator k, letter -k its inverse (1-based).
using Word = std::vector<int>;

inline constexpr std::size_t kDefaultCap = 200000;

/// Closure cap, overridable through DEFRING_CAP.
inline std::size_t default_cap() {
  if (const char* env = std::getenv("DEFRING_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCap;
}

inline Matrix evaluate_word(const std::vector<Matrix>& gens, const Word& w) {
  if (gens.empty()) throw Error(ErrorCode::DimensionMismatch, "no generators");
  Matrix out = Matrix::identity(gens[0].field(), gens[0].rows());
  for (int letter : w) {
    int k = letter > 0 ? letter : -letter;
    if (k == 0 || static_cast<std::size_t>(k) > gens.size())
      throw Error(ErrorCode::ValidationError, "word letter out of range: " + std::to_string(letter));
    out = out * (letter > 0 ? gens[k - 1] : gens[k - 1].inverse());
  }
  return out;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += "g" + std::to_string(w[i] > 0 ? w[i] : -w[i]);
    if (w[i] < 0) s += "^-1";
  }
  return s;
}

/// Finite matrix group given by generators, with every element listed together
/// with a shortest positive word reaching it.
class MatrixGroup {
 public:
  MatrixGroup() = default;

  static MatrixGroup closure(const std::vector<Matrix>& gens, std::size_t cap = default_cap()) {
    if (gens.empty()) throw Error(ErrorCode::DimensionMismatch, "no generators");
    std::size_t d = gens[0].rows();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& g = gens[i];
      if (!g.square() || g.rows() != d) throw Error(ErrorCode::DimensionMismatch, "generators must be square of one size");
      if (!g.invertible())
        throw Error(ErrorCode::NotInvertible, "generator " + std::to_string(i + 1) + " is singular",
                    "generators[" + std::to_string(i) + "].matrix");
    }
    MatrixGroup G;
    G.gens_ = gens;
    G.add(Matrix::identity(gens[0].field(), d), {});
    std::size_t head = 0;
    while (head < G.elements_.size()) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Matrix next = G.elements_[head] * gens[k];
        if (G.index_.count(next)) continue;
        if (G.elements_.size() >= cap)
          throw Error(ErrorCode::CapExceeded, "group order exceeds cap " + std::to_string(cap));
        Word w = G.words_[head];
        w.push_back(static_cast<int>(k) + 1);
        G.add(std::move(next), std::move(w));
      }
      ++head;
    }
    return G;
  }

  const std::vector<Matrix>& generators() const { return gens_; }
  const std::vector<Matrix>& elements() const { return elements_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return gens_.empty() ? 0 : gens_[0].rows(); }
  const FieldPtr& field() const { return gens_.at(0).field(); }

  bool contains(const Matrix& m) const { return index_.count(m) > 0; }

  std::size_t index_of(const Matrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw Error(ErrorCode::PreconditionViolated, "matrix not in group");
    return it->second;
  }

 private:
  void add(Matrix m, Word w) {
    index_.emplace(m, elements_.size());
    elements_.push_back(std::move(m));
    words_.push_back(std::move(w));
  }

  std::vector<Matrix> gens_;
  std::vector<Matrix> elements_;
  std::vector<Word> words_;
  std::unordered_map<Matrix, std::size_t, MatrixHash> index_;
};

/// |GL_d(GF(q))|, saturating at UINT64_MAX.
inline std::uint64_t gl_order(std::uint64_t q, std::uint32_t d) {
  unsigned __int128 total = 1;
  unsigned __int128 qd = 1;
  for (std::uint32_t i = 0; i < d; ++i) qd *= q;
  unsigned __int128 qi = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    total *= (qd - qi);
    qi *= q;
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace defring
