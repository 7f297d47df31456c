#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "defring/error.hpp"
#include "defring/field.hpp"

namespace defring {

/// Sparse multivariate polynomial with integer coefficients.  Exponent
/// vectors carry no trailing zeros, so equal monomials compare equal.
class Poly {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using Terms = std::map<Exponents, std::int64_t>;

  Poly() = default;
  Poly(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c) terms_[{}] = c;
  }

  static Poly var(std::size_t index, std::uint32_t power = 1) {
    Poly p;
    Exponents e(index + 1, 0);
    e[index] = power;
    if (power == 0) e.clear();
    p.terms_[e] = 1;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  std::int64_t constant_term() const {
    auto it = terms_.find({});
    return it == terms_.end() ? 0 : it->second;
  }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const { return terms_ < o.terms_; }

  Poly operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = checked_neg(c);
    return out;
  }

  Poly& operator+=(const Poly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [e, c] : o.terms_) add_term(e, checked_neg(c));
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Exponents e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        out.add_term(e, checked_mul(ca, cb));
      }
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(std::uint32_t k) const {
    Poly out(1), base = *this;
    while (k) {
      if (k & 1) out *= base;
      base *= base;
      k >>= 1;
    }
    return out;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (auto& [e, c] : terms_)
      if (var < e.size()) d = std::max(d, e[var]);
    return d;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto& [e, c] : terms_) {
      std::uint32_t s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool involves(std::size_t var) const { return degree_in(var) > 0; }

  /// Number of variable slots in use.
  std::size_t width() const {
    std::size_t w = 0;
    for (auto& [e, c] : terms_) w = std::max(w, e.size());
    return w;
  }

  /// Coefficient of var^1 when var occurs only linearly: *this = a * var + b.
  /// Returns (a, b); throws when var has degree > 1.
  std::pair<Poly, Poly> split_linear(std::size_t var) const {
    if (degree_in(var) > 1) throw Error(ErrorCode::PreconditionViolated, "variable occurs nonlinearly");
    Poly a, b;
    for (auto& [e, c] : terms_) {
      if (var < e.size() && e[var] == 1) {
        Exponents f = e;
        f[var] = 0;
        trim(f);
        a.add_term(f, c);
      } else {
        b.add_term(e, c);
      }
    }
    return {a, b};
  }

  /// Replace variable `var` by `value`.
  Poly substitute(std::size_t var, const Poly& value) const {
    Poly out;
    std::vector<Poly> powers{Poly(1)};
    for (auto& [e, c] : terms_) {
      std::uint32_t k = var < e.size() ? e[var] : 0;
      if (k == 0) {
        out.add_term(e, c);
        continue;
      }
      while (powers.size() <= k) powers.push_back(powers.back() * value);
      Exponents f = e;
      f[var] = 0;
      trim(f);
      Poly mono;
      mono.terms_[f] = c;
      out += mono * powers[k];
    }
    return out;
  }

  /// Value in GF(q) at the given point; integer coefficients reduced mod p.
  Elem evaluate(const Field& F, const std::vector<Elem>& point) const {
    Elem acc = 0;
    for (auto& [e, c] : terms_) {
      Elem t = F.from_int(c);
      for (std::size_t i = 0; i < e.size() && t; ++i)
        if (e[i]) t = F.mul(t, F.pow(point.at(i), e[i]));
      acc = F.add(acc, t);
    }
    return acc;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string s;
    // Highest total degree first, then reverse lexicographic on exponents.
    std::vector<std::pair<Exponents, std::int64_t>> sorted(terms_.begin(), terms_.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
      std::uint32_t da = 0, db = 0;
      for (auto x : a.first) da += x;
      for (auto x : b.first) db += x;
      if (da != db) return da > db;
      return a.first > b.first;
    });
    for (auto& [e, c] : sorted) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "v" + std::to_string(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::int64_t mag = c < 0 ? -c : c;
      std::string term;
      if (mono.empty())
        term = std::to_string(mag);
      else
        term = mag == 1 ? mono : std::to_string(mag) + "*" + mono;
      if (s.empty())
        s = (c < 0 ? "-" : "") + term;
      else
        s += (c < 0 ? " - " : " + ") + term;
    }
    return s;
  }

 private:
  static void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::SizeExceeded, "integer coefficient overflow");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::SizeExceeded, "integer coefficient overflow");
    return r;
  }
  static std::int64_t checked_neg(std::int64_t a) { return checked_mul(a, -1); }

  void add_term(Exponents e, std::int64_t c) {
    if (c == 0) return;
    trim(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

  Terms terms_;
};

/// Ring adapter so that Berkowitz runs over integer polynomials.
struct PolyRing {
  using T = Poly;
  T zero() const { return Poly(); }
  T one() const { return Poly(1); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
};

using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix poly_identity(std::size_t d) {
  PolyMatrix m(d, std::vector<Poly>(d));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = Poly(1);
  return m;
}

inline PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  PolyMatrix out(n, std::vector<Poly>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline PolyMatrix poly_add(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

inline PolyMatrix poly_scale(const PolyMatrix& a, const Poly& c) {
  PolyMatrix out = a;
  for (auto& row : out)
    for (auto& x : row) x = c * x;
  return out;
}

}  // namespace defring
