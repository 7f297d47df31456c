#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "defring/charpoly.hpp"
#include "defring/gmodule.hpp"
#include "defring/group.hpp"
#include "defring/meataxe.hpp"
#include "defring/poly.hpp"
#include "defring/pseudochar.hpp"

namespace defring {

/// Term c * w of a noncommutative relation; the empty word is the identity.
struct NCTerm {
  Poly coeff;
  Word word;
};
using NCPoly = std::vector<NCTerm>;

struct LambdaValue {
  Word word;
  std::vector<Poly> values;  // Lambda_1..Lambda_d in the base variables
};

struct IdealGenerator {
  Poly poly;
  std::string origin;
};

struct GenericAlgebraPresentation {
  std::size_t d = 0;
  std::size_t n_gens = 0;
  std::size_t word_bound = 0;
  std::vector<std::string> gen_names;
  std::vector<std::string> base_vars;
  std::vector<std::string> fresh_vars;
  std::vector<std::string> var_names;  // base, then matrix entries, then fresh symbols
  std::vector<IdealGenerator> ideal;
  std::vector<IdealGenerator> minimal;  // after eliminating base and fresh symbols
  std::vector<std::pair<std::string, Poly>> eliminated;

  std::size_t matrix_var(std::size_t g, std::size_t i, std::size_t j) const { return base_vars.size() + g * d * d + i * d + j; }

  PolyMatrix generic(std::size_t g) const {
    PolyMatrix m(d, std::vector<Poly>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] = Poly::var(matrix_var(g, i, j));
    return m;
  }
};

/// Lambda_1..Lambda_d of a polynomial matrix.
inline std::vector<Poly> poly_lambdas(const PolyMatrix& m) {
  auto c = berkowitz(m, PolyRing{});
  std::vector<Poly> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(i % 2 ? -c[i] : c[i]);
  return out;
}

/// Least cyclic rotation; words equal up to rotation share every Lambda_i.
inline Word canonical_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
    best = std::min(best, r);
  }
  return best;
}

/// Positive words of length 1..L in n letters, shortlex order.
inline std::vector<Word> words_up_to(std::size_t n, std::size_t L, std::size_t limit = 100000) {
  std::vector<Word> out;
  std::vector<Word> level{{}};
  for (std::size_t len = 1; len <= L; ++len) {
    std::vector<Word> next;
    for (auto& w : level)
      for (std::size_t g = 1; g <= n; ++g) {
        Word x = w;
        x.push_back(static_cast<int>(g));
        next.push_back(std::move(x));
        if (out.size() + next.size() > limit) throw Error(ErrorCode::SizeExceeded, "too many words");
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

namespace detail {

inline std::string word_label(const std::vector<std::string>& names, const Word& w) {
  std::string s;
  for (int letter : w) {
    std::size_t k = static_cast<std::size_t>(letter > 0 ? letter : -letter) - 1;
    s += k < names.size() ? names[k] : "g" + std::to_string(k + 1);
    if (letter < 0) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

inline PolyMatrix eval_word(const GenericAlgebraPresentation& P, const Word& w) {
  PolyMatrix m = poly_identity(P.d);
  for (int letter : w) {
    if (letter <= 0 || static_cast<std::size_t>(letter) > P.n_gens)
      throw Error(ErrorCode::ValidationError, "relation words use positive generator letters");
    m = poly_mul(m, P.generic(static_cast<std::size_t>(letter) - 1));
  }
  return m;
}

// Eliminate variables that occur linearly with unit coefficient.
inline void reduce_presentation(GenericAlgebraPresentation& P, const std::vector<std::size_t>& supplied,
                                const std::vector<std::size_t>& relations, const std::vector<std::size_t>& fresh) {
  std::vector<IdealGenerator> work = P.ideal;
  std::vector<char> alive(work.size(), 1);
  std::vector<std::size_t> order;
  order.insert(order.end(), supplied.begin(), supplied.end());
  order.insert(order.end(), relations.begin(), relations.end());
  order.insert(order.end(), fresh.begin(), fresh.end());
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < P.base_vars.size(); ++v) vars.push_back(v);
  std::size_t fresh0 = P.base_vars.size() + P.n_gens * P.d * P.d;
  for (std::size_t v = 0; v < P.fresh_vars.size(); ++v) vars.push_back(fresh0 + v);
  for (auto v : vars) {
    for (auto idx : order) {
      if (!alive[idx] || work[idx].poly.degree_in(v) != 1) continue;
      auto [a, b] = work[idx].poly.split_linear(v);
      if (!a.is_constant() || (a.constant_term() != 1 && a.constant_term() != -1)) continue;
      Poly value = a.constant_term() == 1 ? -b : b;
      if (value.involves(v)) continue;
      if (v < P.base_vars.size()) P.minimal.push_back(P.ideal[idx]);
      P.eliminated.emplace_back(P.var_names[v], value);
      alive[idx] = 0;
      for (std::size_t k = 0; k < work.size(); ++k)
        if (alive[k]) work[k].poly = work[k].poly.substitute(v, value);
      break;
    }
  }
  for (auto idx : order)
    if (alive[idx] && !work[idx].poly.is_zero()) P.minimal.push_back(work[idx]);
}

}  // namespace detail

/// Relation ideal of the generic-matrix algebra: matrix entries of each
/// relation on generic matrices, plus Lambda_i(X_w) - c_i(w) for all words of
/// length <= L.  Words without a supplied value receive fresh symbols.
inline GenericAlgebraPresentation build_agen(std::size_t d, const std::vector<std::string>& gens,
                                             const std::vector<std::string>& base_vars,
                                             const std::vector<NCPoly>& relations,
                                             const std::vector<LambdaValue>& lambda_values,
                                             std::optional<std::size_t> word_bound = std::nullopt) {
  GenericAlgebraPresentation P;
  P.d = d;
  P.n_gens = gens.size();
  P.gen_names = gens;
  P.base_vars = base_vars;
  P.word_bound = word_bound.value_or(2 * gens.size());
  if (d < 1 || d > 8) throw Error(ErrorCode::PreconditionViolated, "d must lie in 1..8");
  P.var_names = base_vars;
  for (std::size_t g = 0; g < P.n_gens; ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        P.var_names.push_back(gens[g] + std::to_string(i + 1) + std::to_string(j + 1));

  std::map<Word, std::vector<Poly>> values;
  for (auto& lv : lambda_values) {
    if (lv.values.size() != d) throw Error(ErrorCode::InconsistentLambda, "need d coefficient values per word");
    Word key = canonical_rotation(lv.word);
    auto [it, inserted] = values.emplace(key, lv.values);
    if (!inserted && it->second != lv.values)
      throw Error(ErrorCode::InconsistentLambda, "word " + detail::word_label(gens, lv.word) + " has two values");
  }

  std::vector<std::size_t> supplied, rel_idx, fresh_idx;
  for (std::size_t r = 0; r < relations.size(); ++r) {
    PolyMatrix acc(d, std::vector<Poly>(d));
    for (auto& term : relations[r]) acc = poly_add(acc, poly_scale(detail::eval_word(P, term.word), term.coeff));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (acc[i][j].is_zero()) continue;
        rel_idx.push_back(P.ideal.size());
        P.ideal.push_back({acc[i][j], "relation " + std::to_string(r + 1) + " entry (" + std::to_string(i + 1) + "," +
                                          std::to_string(j + 1) + ")"});
      }
  }

  for (auto& w : words_up_to(P.n_gens, P.word_bound)) {
    auto lam = poly_lambdas(detail::eval_word(P, w));
    Word key = canonical_rotation(w);
    std::string label = detail::word_label(gens, w);
    if (auto it = values.find(key); it != values.end()) {
      for (std::size_t i = 0; i < d; ++i) {
        supplied.push_back(P.ideal.size());
        P.ideal.push_back({lam[i] - it->second[i], "Lambda_" + std::to_string(i + 1) + "(" + label + ")"});
      }
      continue;
    }
    std::vector<std::size_t> syms;
    std::string key_label = detail::word_label(gens, key);
    for (std::size_t i = 0; i < d; ++i) {
      std::string name = "c" + std::to_string(i + 1) + "[" + key_label + "]";
      auto pos = std::find(P.var_names.begin(), P.var_names.end(), name);
      std::size_t idx = static_cast<std::size_t>(pos - P.var_names.begin());
      if (pos == P.var_names.end()) {
        P.var_names.push_back(name);
        P.fresh_vars.push_back(name);
      }
      fresh_idx.push_back(P.ideal.size());
      P.ideal.push_back({lam[i] - Poly::var(idx), "Lambda_" + std::to_string(i + 1) + "(" + label + ")"});
    }
  }
  detail::reduce_presentation(P, supplied, rel_idx, fresh_idx);
  return P;
}

struct Example35Report {
  bool ch_identity_vanishes = false;   // every entry of M^2 - (2+t)M + (1+d)I is 0 after substitution
  bool generators_match = false;       // the ideal reduces to exactly tr - (2+t), det - (1+d)
  bool lambdas_match = false;          // Berkowitz Lambda_1, Lambda_2 agree with trace and determinant
  bool specialization_ok = false;      // x = [[1, u], [0, 1]] with t = d = 0 satisfies both relations
  std::vector<std::string> entries;    // the four reduced entries
  std::vector<std::string> generators;
  double seconds = 0;

  bool ok() const { return ch_identity_vanishes && generators_match && lambdas_match && specialization_ok; }
};

/// Single generator x with relation x^2 - (2+t)x + (1+d) = 0 and Lambda(x) = (2+t, 1+d).
inline Example35Report verify_example_3_5() {
  auto start = std::chrono::steady_clock::now();
  Example35Report R;
  std::vector<std::string> base{"t", "d"};
  Poly t = Poly::var(0), dd = Poly::var(1);
  NCPoly rel{{Poly(1), {1, 1}}, {-(Poly(2) + t), {1}}, {Poly(1) + dd, {}}};
  auto P = build_agen(2, {"x"}, base, {rel}, {{{1}, {Poly(2) + t, Poly(1) + dd}}});

  Poly x11 = Poly::var(P.matrix_var(0, 0, 0)), x12 = Poly::var(P.matrix_var(0, 0, 1));
  Poly x21 = Poly::var(P.matrix_var(0, 1, 0)), x22 = Poly::var(P.matrix_var(0, 1, 1));
  Poly g1 = x11 + x22 - (Poly(2) + t);
  Poly g2 = x11 * x22 - x12 * x21 - (Poly(1) + dd);

  // (a) Cayley-Hamilton identity modulo the two generators.
  PolyMatrix X = P.generic(0);
  PolyMatrix E = poly_add(poly_add(poly_mul(X, X), poly_scale(X, -(Poly(2) + t))), poly_scale(poly_identity(2), Poly(1) + dd));
  Poly t_value = x11 + x22 - Poly(2);
  Poly d_value = x11 * x22 - x12 * x21 - Poly(1);
  R.ch_identity_vanishes = true;
  for (auto& row : E)
    for (auto& e : row) {
      Poly red = e.substitute(0, t_value).substitute(1, d_value);
      R.entries.push_back(red.to_string(P.var_names));
      R.ch_identity_vanishes = R.ch_identity_vanishes && red.is_zero();
    }

  // (b) the reduced ideal is generated by tr - (2+t) and det - (1+d).
  auto lam = poly_lambdas(X);
  R.lambdas_match = lam.size() == 2 && lam[0] - (Poly(2) + t) == g1 && lam[1] - (Poly(1) + dd) == g2;
  R.generators_match = P.minimal.size() == 2 && P.minimal[0].poly == g1 && P.minimal[1].poly == g2;
  for (auto& g : P.minimal) R.generators.push_back(g.poly.to_string(P.var_names));

  // (c) x = [[1, u], [0, 1]], t = d = 0, u free.
  Poly u = Poly::var(P.var_names.size());
  auto specialize = [&](const Poly& p) {
    return p.substitute(0, Poly(0))
        .substitute(1, Poly(0))
        .substitute(P.matrix_var(0, 0, 0), Poly(1))
        .substitute(P.matrix_var(0, 0, 1), u)
        .substitute(P.matrix_var(0, 1, 0), Poly(0))
        .substitute(P.matrix_var(0, 1, 1), Poly(1));
  };
  R.specialization_ok = specialize(g1).is_zero() && specialize(g2).is_zero();
  for (auto& row : E)
    for (auto& e : row) R.specialization_ok = R.specialization_ok && specialize(e).is_zero();

  R.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return R;
}

struct TraceInvariants {
  std::vector<std::string> var_names;
  std::vector<Word> words;         // word whose Lambda_i produced each entry
  std::vector<std::size_t> index;  // i of Lambda_i
  std::vector<Poly> polys;
};

/// Lambda_i(X_w) for every word of length <= L, deduplicated.
inline TraceInvariants trace_invariants(std::size_t n_gens, std::size_t d, std::size_t L) {
  if (L > 6 || d > 3 || n_gens > 3 || L < 1 || d < 1 || n_gens < 1)
    throw Error(ErrorCode::SizeExceeded, "trace invariants limited to L <= 6, d <= 3, n <= 3");
  std::vector<std::string> names;
  for (std::size_t g = 0; g < n_gens; ++g) names.push_back(std::string(1, static_cast<char>('X' + g)));
  auto P = build_agen(d, names, {}, {}, {}, 0);
  TraceInvariants T;
  T.var_names = P.var_names;
  std::set<Word> seen_words;
  std::set<Poly> seen;
  for (auto& w : words_up_to(n_gens, L)) {
    Word key = canonical_rotation(w);
    if (!seen_words.insert(key).second) continue;
    auto lam = poly_lambdas(detail::eval_word(P, key));
    for (std::size_t i = 0; i < lam.size(); ++i) {
      if (!seen.insert(lam[i]).second) continue;
      T.words.push_back(key);
      T.index.push_back(i + 1);
      T.polys.push_back(lam[i]);
    }
  }
  return T;
}

/// True iff the tuple is conjugate to its semisimplification.
inline bool orbit_is_closed(const std::vector<Matrix>& tuple, const IrreducibilityOptions& opt = {}) {
  auto M = GModule::custom(tuple.at(0).field(), tuple);
  auto ss = semisimplify(M, opt);
  return is_isomorphic(M, GModule::custom(M.field, ss.block_diagonal));
}

namespace detail {

// First-order numbers a + sum_k b_k eps_k with eps_k eps_l = 0.
struct Jet {
  Elem a = 0;
  std::vector<Elem> b;
};

struct JetRing {
  using T = Jet;
  const Field* F;
  std::size_t N;
  T zero() const { return {0, std::vector<Elem>(N, 0)}; }
  T one() const { return {1, std::vector<Elem>(N, 0)}; }
  T add(const T& x, const T& y) const {
    T out{F->add(x.a, y.a), std::vector<Elem>(N)};
    for (std::size_t k = 0; k < N; ++k) out.b[k] = F->add(x.b[k], y.b[k]);
    return out;
  }
  T sub(const T& x, const T& y) const {
    T out{F->sub(x.a, y.a), std::vector<Elem>(N)};
    for (std::size_t k = 0; k < N; ++k) out.b[k] = F->sub(x.b[k], y.b[k]);
    return out;
  }
  T mul(const T& x, const T& y) const {
    T out{F->mul(x.a, y.a), std::vector<Elem>(N)};
    for (std::size_t k = 0; k < N; ++k) out.b[k] = F->add(F->mul(x.a, y.b[k]), F->mul(y.a, x.b[k]));
    return out;
  }
  T neg(const T& x) const {
    T out{F->neg(x.a), std::vector<Elem>(N)};
    for (std::size_t k = 0; k < N; ++k) out.b[k] = F->neg(x.b[k]);
    return out;
  }
};

using JetMatrix = std::vector<std::vector<Jet>>;

inline JetMatrix jet_mul(const JetRing& R, const JetMatrix& x, const JetMatrix& y) {
  std::size_t d = x.size();
  JetMatrix out(d, std::vector<Jet>(d, R.zero()));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) out[i][j] = R.add(out[i][j], R.mul(x[i][k], y[k][j]));
  return out;
}

}  // namespace detail

/// Dimension of the space of first-order deformations of the tuple that keep
/// every Lambda_i(w) fixed.  Words are the closure witnesses extended by
/// generator letters until a full round adds no new equation.
inline std::size_t fibre_tangent_dimension(const std::vector<Matrix>& tuple, std::size_t cap = default_cap(),
                                           std::size_t max_rounds = 3) {
  const FieldPtr& F = tuple.at(0).field();
  std::size_t d = tuple[0].rows(), arity = tuple.size(), N = arity * d * d;
  detail::JetRing R{F.get(), N};
  std::vector<detail::JetMatrix> gens;
  for (std::size_t s = 0; s < arity; ++s) {
    detail::JetMatrix m(d, std::vector<detail::Jet>(d, R.zero()));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        m[i][j].a = tuple[s](i, j);
        m[i][j].b[s * d * d + i * d + j] = 1;
      }
    gens.push_back(std::move(m));
  }
  auto G = MatrixGroup::closure(tuple, cap);
  EchelonBasis eqs(F.get(), N);
  auto absorb = [&](const detail::JetMatrix& m) {
    auto c = berkowitz(m, R);
    for (std::size_t i = 1; i < c.size(); ++i) eqs.insert(c[i].b);
  };
  std::vector<detail::JetMatrix> level;
  for (auto& w : G.words()) {
    detail::JetMatrix m(d, std::vector<detail::Jet>(d, R.zero()));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = R.one();
    for (int letter : w) m = detail::jet_mul(R, m, gens[static_cast<std::size_t>(letter) - 1]);
    absorb(m);
    level.push_back(std::move(m));
  }
  for (std::size_t round = 0; round < max_rounds && eqs.size() < N; ++round) {
    std::size_t before = eqs.size();
    std::vector<detail::JetMatrix> next;
    for (auto& m : level)
      for (auto& g : gens) {
        auto x = detail::jet_mul(R, m, g);
        absorb(x);
        next.push_back(std::move(x));
      }
    level = std::move(next);
    if (eqs.size() == before) break;
  }
  return N - eqs.size();
}

struct FibreResult {
  std::vector<std::vector<Matrix>> points;
  std::vector<std::size_t> tangent;
  std::size_t count() const { return points.size(); }
};

/// Every tuple over GF(q) with the same pseudo-character as the target.
inline FibreResult fibre_enumerate(const std::vector<Matrix>& target, bool with_tangent = true,
                                   std::size_t cap = default_cap()) {
  if (target.empty()) throw Error(ErrorCode::PreconditionViolated, "empty target");
  const FieldPtr& F = target[0].field();
  std::size_t d = target[0].rows(), arity = target.size();
  long double space = 1;
  for (std::size_t i = 0; i < d * d * arity; ++i) space *= F->q();
  if (space > static_cast<long double>(1u << 25)) throw Error(ErrorCode::SizeExceeded, "q^(d^2 arity) exceeds 2^25");

  std::size_t cells = 1;
  for (std::size_t i = 0; i < d * d; ++i) cells *= F->q();
  std::map<std::vector<Elem>, std::vector<Matrix>> buckets;
  std::vector<std::vector<Elem>> wanted;
  for (auto& g : target) wanted.push_back(char_poly_coeffs(g));
  for (std::size_t code = 0; code < cells; ++code) {
    Matrix m(F, d, d);
    std::size_t c = code;
    for (std::size_t k = 0; k < d * d; ++k) {
      m(k / d, k % d) = static_cast<Elem>(c % F->q());
      c /= F->q();
    }
    auto lam = char_poly_coeffs(m);
    if (std::find(wanted.begin(), wanted.end(), lam) != wanted.end()) buckets[lam].push_back(std::move(m));
  }
  std::vector<const std::vector<Matrix>*> choices;
  for (auto& w : wanted) {
    auto it = buckets.find(w);
    if (it == buckets.end()) return {};
    choices.push_back(&it->second);
  }
  FibreResult out;
  std::vector<std::size_t> pick(arity, 0);
  for (;;) {
    std::vector<Matrix> tuple;
    for (std::size_t s = 0; s < arity; ++s) tuple.push_back((*choices[s])[pick[s]]);
    if (pseudo_equal(tuple, target, cap)) {
      if (with_tangent) out.tangent.push_back(fibre_tangent_dimension(tuple, cap));
      out.points.push_back(std::move(tuple));
    }
    std::size_t s = 0;
    while (s < arity && ++pick[s] == choices[s]->size()) pick[s++] = 0;
    if (s == arity) break;
  }
  return out;
}

inline std::string fibre_csv(const FibreResult& r) {
  std::string s;
  if (r.points.empty()) return s;
  std::size_t d = r.points[0][0].rows();
  for (std::size_t g = 0; g < r.points[0].size(); ++g)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) s += "g" + std::to_string(g + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1) + ",";
  s += "tangent_dim\n";
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    for (auto& m : r.points[k])
      for (auto x : m.entries()) s += m.field()->to_string(x) + ",";
    s += (k < r.tangent.size() ? std::to_string(r.tangent[k]) : "") + "\n";
  }
  return s;
}

}  // namespace defring
