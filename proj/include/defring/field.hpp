#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "defring/error.hpp"

namespace defring {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      while (n % k == 0) n /= k;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^f) as GF(p)[x]/(modulus).  An element is encoded by the base-p
/// digits of its coefficient vector, constant term first.
class Field {
 public:
  /// Field with the lexicographically least monic primitive modulus.
  static FieldPtr make(std::uint32_t p, std::uint32_t f = 1) {
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, f);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    check_size(p, f);
    auto fp = std::shared_ptr<Field>(new Field(p, f, default_modulus(p, f)));
    cache.emplace(key, fp);
    return fp;
  }

  /// Field with a caller-supplied monic modulus, coefficients constant term first.
  static FieldPtr make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (modulus.size() < 2) throw Error(ErrorCode::InvalidField, "modulus degree must be at least 1", "field.modulus");
    std::uint32_t f = static_cast<std::uint32_t>(modulus.size() - 1);
    check_size(p, f);
    for (auto& c : modulus) {
      if (c >= p) throw Error(ErrorCode::InvalidField, "modulus coefficient out of range", "field.modulus");
    }
    if (modulus.back() != 1) throw Error(ErrorCode::InvalidField, "modulus must be monic", "field.modulus");
    if (!poly_irreducible(p, modulus))
      throw Error(ErrorCode::InvalidField, "modulus is reducible", "field.modulus");
    return std::shared_ptr<Field>(new Field(p, f, std::move(modulus)));
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t f() const { return f_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  Elem primitive() const { return exp_[1]; }

  bool same_as(const Field& o) const { return p_ == o.p_ && f_ == o.f_ && modulus_ == o.modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  /// Image of an integer in the prime field.
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  bool in_prime_field(Elem a) const { return a < p_; }

  Elem add(Elem a, Elem b) const {
    if (f_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    Elem out = 0, mul = 1;
    while (a || b) {
      Elem s = a % p_ + b % p_;
      if (s >= p_) s -= p_;
      out += s * mul;
      mul *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  Elem neg(Elem a) const {
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    Elem out = 0, mul = 1;
    while (a) {
      Elem d = a % p_;
      out += (d == 0 ? 0 : p_ - d) * mul;
      mul *= p_;
      a /= p_;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::NotInvertible, "inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::int64_t k) const {
    if (a == 0) {
      if (k < 0) throw Error(ErrorCode::NotInvertible, "negative power of zero");
      return k == 0 ? 1 : 0;
    }
    std::int64_t m = static_cast<std::int64_t>(q_ - 1);
    std::int64_t e = (static_cast<std::int64_t>(log_[a]) * (k % m)) % m;
    if (e < 0) e += m;
    return exp_[static_cast<std::size_t>(e)];
  }

  /// Discrete log against `primitive()`.
  std::uint32_t log(Elem a) const {
    if (a == 0) throw Error(ErrorCode::NotInvertible, "log of zero");
    return log_[a];
  }

  std::uint64_t order(Elem a) const {
    if (a == 0) throw Error(ErrorCode::NotInvertible, "order of zero");
    std::uint64_t m = q_ - 1;
    std::uint64_t ord = m;
    for (auto r : prime_factors(m)) {
      while (ord % r == 0 && pow(a, static_cast<std::int64_t>(ord / r)) == 1) ord /= r;
    }
    return ord;
  }

  /// An element of exact multiplicative order m; m must divide q-1.
  Elem root_of_unity(std::uint64_t m) const {
    if (m == 0 || (q_ - 1) % m != 0)
      throw Error(ErrorCode::PreconditionViolated, "no root of unity of order " + std::to_string(m));
    return pow(primitive(), static_cast<std::int64_t>((q_ - 1) / m));
  }

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> out(f_, 0);
    for (std::uint32_t i = 0; i < f_; ++i) {
      out[i] = a % p_;
      a /= p_;
    }
    return out;
  }

  Elem from_digits(const std::vector<std::uint32_t>& d) const {
    Elem out = 0, mul = 1;
    for (std::size_t i = 0; i < d.size() && i < f_; ++i) {
      out += (d[i] % p_) * mul;
      mul *= p_;
    }
    return out;
  }

  std::string to_string(Elem a) const {
    if (f_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::string s;
    auto d = digits(a);
    for (std::uint32_t i = f_; i-- > 0;) {
      if (d[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

  /// Lookup table sending each element of `small` to its image in `large`
  /// under a fixed embedding; requires small.f() | large.f().
  static std::vector<Elem> embedding(const Field& small, const Field& large) {
    if (small.p() != large.p() || large.f() % small.f() != 0)
      throw Error(ErrorCode::PreconditionViolated, "no embedding between these fields");
    Elem root = 0;
    bool found = small.f() == 1;
    for (Elem r = 0; !found && r < large.q(); ++r) {
      Elem acc = 0;
      for (std::size_t i = small.modulus().size(); i-- > 0;)
        acc = large.add(large.mul(acc, r), large.from_int(small.modulus()[i]));
      if (acc == 0) {
        root = r;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::AssertionFailed, "modulus has no root in the extension");
    std::vector<Elem> table(small.q());
    for (Elem a = 0; a < small.q(); ++a) {
      auto d = small.digits(a);
      Elem acc = 0;
      for (std::size_t i = d.size(); i-- > 0;) acc = large.add(large.mul(acc, root), large.from_int(d[i]));
      table[a] = acc;
    }
    return table;
  }

 private:
  Field(std::uint32_t p, std::uint32_t f, std::vector<std::uint32_t> modulus)
      : p_(p), f_(f), modulus_(std::move(modulus)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < f_; ++i) q_ *= p_;
    build_tables();
  }

  static void check_size(std::uint32_t p, std::uint32_t f) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidField, "characteristic is not prime", "field.p");
    if (f < 1) throw Error(ErrorCode::InvalidField, "extension degree must be positive", "field.f");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
      q *= p;
      if (q > kMaxFieldOrder) throw Error(ErrorCode::InvalidField, "field order exceeds 65536", "field.f");
    }
  }

  // Raw product of digit-encoded elements modulo the defining polynomial.
  static std::vector<std::uint32_t> poly_mulmod(std::uint32_t p, const std::vector<std::uint32_t>& a,
                                                const std::vector<std::uint32_t>& b,
                                                const std::vector<std::uint32_t>& m) {
    std::size_t f = m.size() - 1;
    std::vector<std::uint64_t> prod(2 * f, 0);
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    for (auto& c : prod) c %= p;
    for (std::size_t k = 2 * f - 1; k >= f; --k) {
      std::uint64_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::size_t i = 0; i < f; ++i) prod[k - f + i] = (prod[k - f + i] + (p - m[i]) % p * c) % p;
    }
    std::vector<std::uint32_t> out(f);
    for (std::size_t i = 0; i < f; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  // True when x generates the unit group of GF(p)[x]/(m), which forces m irreducible.
  static bool x_is_primitive(std::uint32_t p, const std::vector<std::uint32_t>& m) {
    std::size_t f = m.size() - 1;
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < f; ++i) q *= p;
    if (m[0] == 0) return false;
    std::vector<std::uint32_t> x(f, 0), cur(f, 0), one(f, 0);
    one[0] = 1;
    if (f == 1) {
      x[0] = (p - m[0]) % p;
    } else {
      x[1] = 1;
    }
    cur = x;
    for (std::uint64_t k = 1; k < q - 1; ++k) {
      if (cur == one) return false;
      cur = poly_mulmod(p, cur, x, m);
    }
    return cur == one;
  }

  static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t f) {
    std::vector<std::uint32_t> m(f + 1, 0);
    m[f] = 1;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < f; ++i) count *= p;
    // Enumerate lower coefficients with the highest-degree one varying slowest.
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::uint32_t i = f; i-- > 0;) {
        m[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (x_is_primitive(p, m)) return m;
    }
    throw Error(ErrorCode::AssertionFailed, "no primitive polynomial found");
  }

  static bool poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& m) {
    std::size_t f = m.size() - 1;
    if (f == 1) return true;
    // Trial division by every monic polynomial of degree 1..f/2.
    for (std::size_t deg = 1; deg <= f / 2; ++deg) {
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < deg; ++i) count *= p;
      std::vector<std::uint32_t> g(deg + 1, 0);
      g[deg] = 1;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = 0; i < deg; ++i) {
          g[i] = static_cast<std::uint32_t>(c % p);
          c /= p;
        }
        std::vector<std::int64_t> r(m.begin(), m.end());
        for (std::size_t k = f; k >= deg; --k) {
          std::int64_t lead = r[k] % p;
          if (lead != 0) {
            for (std::size_t i = 0; i <= deg; ++i) r[k - deg + i] = ((r[k - deg + i] - lead * g[i]) % p + p) % p;
          }
          if (k == deg) break;
        }
        bool zero = true;
        for (std::size_t i = 0; i < deg; ++i) zero = zero && r[i] % p == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void build_tables() {
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    std::vector<std::uint32_t> one(f_, 0);
    one[0] = 1;
    auto encode = [&](const std::vector<std::uint32_t>& d) {
      Elem out = 0, mul = 1;
      for (std::uint32_t i = 0; i < f_; ++i) {
        out += d[i] * mul;
        mul *= p_;
      }
      return out;
    };
    auto decode = [&](Elem a) {
      std::vector<std::uint32_t> d(f_);
      for (std::uint32_t i = 0; i < f_; ++i) {
        d[i] = a % p_;
        a /= p_;
      }
      return d;
    };
    for (Elem g = 1; g < q_; ++g) {
      if (q_ > 2 && g == 1) continue;
      auto gd = decode(g);
      auto cur = one;
      std::vector<char> seen(q_, 0);
      bool ok = true;
      for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        Elem e = encode(cur);
        if (seen[e]) {
          ok = false;
          break;
        }
        seen[e] = 1;
        exp_[k] = e;
        log_[e] = k;
        cur = poly_mulmod(p_, cur, gd, modulus_);
      }
      if (ok) {
        exp_[q_ - 1] = 1;
        return;
      }
    }
    throw Error(ErrorCode::InvalidField, "no primitive element");
  }

  std::uint32_t p_, f_, q_{1};
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_, log_;
};

}  // namespace defring
