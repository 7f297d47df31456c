#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "defring/field.hpp"
#include "defring/matrix.hpp"

namespace defring {

/// Univariate polynomial over GF(q), coefficients constant term first,
/// kept without trailing zeros (the zero polynomial is empty).
using UPoly = std::vector<Elem>;

namespace upoly {

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

inline UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(out);
  return out;
}

inline UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(out);
  return out;
}

inline UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<UPoly, UPoly> divmod(const Field& F, UPoly a, const UPoly& b) {
  if (b.empty()) throw Error(ErrorCode::NotInvertible, "polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1, 0);
  Elem lead_inv = F.inv(b.back());
  for (std::size_t k = a.size(); k-- >= b.size();) {
    Elem c = F.mul(a[k], lead_inv);
    q[k - b.size() + 1] = c;
    if (c)
      for (std::size_t i = 0; i < b.size(); ++i) a[k - b.size() + 1 + i] = F.sub(a[k - b.size() + 1 + i], F.mul(c, b[i]));
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline UPoly mod(const Field& F, const UPoly& a, const UPoly& b) { return divmod(F, a, b).second; }

inline UPoly monic(const Field& F, UPoly a) {
  if (a.empty()) return a;
  Elem inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

inline UPoly gcd(const Field& F, UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline UPoly derivative(const Field& F, const UPoly& a) {
  if (a.size() <= 1) return {};
  UPoly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = F.mul(a[i], F.from_int(static_cast<std::int64_t>(i)));
  trim(out);
  return out;
}

inline UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m) { return mod(F, mul(F, a, b), m); }

inline UPoly powmod(const Field& F, UPoly base, std::uint64_t e, const UPoly& m) {
  UPoly result{1};
  result = mod(F, result, m);
  base = mod(F, base, m);
  while (e) {
    if (e & 1) result = mulmod(F, result, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return result;
}

inline bool is_one(const UPoly& a) { return a.size() == 1 && a[0] == 1; }

// p-th root of a polynomial whose derivative vanishes.
inline UPoly pth_root(const Field& F, const UPoly& a) {
  std::uint32_t p = F.p();
  std::int64_t root_exp = F.q() / p;  // a^(q/p) is the p-th root in GF(q)
  UPoly out;
  for (std::size_t i = 0; i < a.size(); i += p) out.push_back(F.pow(a[i], root_exp));
  trim(out);
  return out;
}

/// Distinct monic irreducible factors, without multiplicity.
inline std::vector<UPoly> squarefree_parts(const Field& F, const UPoly& f) {
  std::vector<UPoly> out;
  UPoly a = monic(F, f);
  if (degree(a) < 1) return out;
  UPoly da = derivative(F, a);
  if (da.empty()) return squarefree_parts(F, pth_root(F, a));
  UPoly c = gcd(F, a, da);
  UPoly w = divmod(F, a, c).first;
  while (degree(w) >= 1) {
    UPoly y = gcd(F, w, c);
    UPoly fac = divmod(F, w, y).first;
    if (degree(fac) >= 1) out.push_back(monic(F, fac));
    w = y;
    c = divmod(F, c, y).first;
  }
  if (degree(c) >= 1) {
    for (auto& g : squarefree_parts(F, pth_root(F, c))) out.push_back(g);
  }
  return out;
}

inline void equal_degree_split(const Field& F, const UPoly& g, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  const UPoly x{0, 1};
  for (;;) {
    UPoly a(static_cast<std::size_t>(degree(g)));
    for (auto& c : a) c = static_cast<Elem>(rng() % F.q());
    trim(a);
    if (degree(a) < 1) continue;
    UPoly b;
    if (F.p() == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k.
      UPoly t = mod(F, a, g), acc = t;
      for (std::uint32_t i = 1; i < F.f() * static_cast<std::uint32_t>(d); ++i) {
        t = mulmod(F, t, t, g);
        acc = add(F, acc, t);
      }
      b = acc;
    } else {
      // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
      UPoly t = mod(F, a, g), prod = t;
      for (int i = 1; i < d; ++i) {
        t = powmod(F, t, F.q(), g);
        prod = mulmod(F, prod, t, g);
      }
      b = sub(F, powmod(F, prod, (F.q() - 1) / 2, g), UPoly{1});
    }
    UPoly h = gcd(F, g, b);
    if (degree(h) >= 1 && degree(h) < degree(g)) {
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, divmod(F, g, h).first, d, rng, out);
      return;
    }
  }
}

/// Distinct monic irreducible factors of f, sorted by (degree, coefficients).
inline std::vector<UPoly> irreducible_factors(const Field& F, const UPoly& f, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::vector<UPoly> out;
  const UPoly x{0, 1};
  for (auto s : squarefree_parts(F, f)) {
    UPoly h = mod(F, x, s);
    for (int d = 1; degree(s) >= 2 * d; ++d) {
      h = powmod(F, h, F.q(), s);
      UPoly g = gcd(F, s, sub(F, h, x));
      if (degree(g) >= 1) {
        equal_degree_split(F, g, d, rng, out);
        s = divmod(F, s, g).first;
        h = mod(F, h, s);
      }
    }
    if (degree(s) >= 1) out.push_back(monic(F, s));
  }
  std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline Matrix evaluate(const UPoly& f, const Matrix& A) {
  const FieldPtr& F = A.field();
  Matrix out(F, A.rows(), A.cols());
  for (std::size_t i = f.size(); i-- > 0;) out = out * A + Matrix::scalar(F, A.rows(), f[i]);
  return out;
}

inline Elem evaluate(const Field& F, const UPoly& f, Elem x) {
  Elem acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

}  // namespace upoly
}  // namespace defring
