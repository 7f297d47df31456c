#pragma once

#include <cstdlib>
#include <limits>
#include <numeric>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "defring/clifford.hpp"
#include "defring/cohom.hpp"
#include "defring/components.hpp"
#include "defring/dimension.hpp"
#include "defring/meataxe.hpp"
#include "defring/pseudochar.hpp"

namespace defring {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "defring 1.0.0";

struct Issue {
  std::string field;
  std::string message;
};

/// Every problem found while validating an input document.
class InputErrors : public Error {
 public:
  InputErrors(ErrorCode code, std::vector<Issue> issues)
      : Error(code, summary(issues), issues.empty() ? std::string() : issues[0].field), issues_(std::move(issues)) {}
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  static std::string summary(const std::vector<Issue>& issues) {
    std::string s;
    for (auto& i : issues) s += (s.empty() ? "" : "; ") + i.field + ": " + i.message;
    return s;
  }
  std::vector<Issue> issues_;
};

struct InputSpec {
  ResidualRep rep;
  std::size_t cap = kDefaultCap;
  IrreducibilityOptions opt;
  std::optional<std::vector<std::vector<Word>>> kummer_subgroups;
  Json echo;
};

namespace detail {

struct Reader {
  std::vector<Issue> issues;

  void fail(const std::string& field, const std::string& msg) { issues.push_back({field, msg}); }

  const Json* object(const Json& j, const std::string& key, const std::string& where, bool required = true) {
    std::string f = where.empty() ? key : where + "." + key;
    if (!j.contains(key)) {
      if (required) fail(f, "missing");
      return nullptr;
    }
    if (!j[key].is_object()) {
      fail(f, "expected an object");
      return nullptr;
    }
    return &j[key];
  }

  std::optional<std::int64_t> integer(const Json& j, const std::string& key, const std::string& where, bool required,
                                      std::int64_t lo, std::int64_t hi) {
    std::string f = where + "." + key;
    if (!j.contains(key)) {
      if (required) fail(f, "missing");
      return std::nullopt;
    }
    if (!j[key].is_number_integer()) {
      fail(f, "expected an integer");
      return std::nullopt;
    }
    auto v = j[key].get<std::int64_t>();
    if (v < lo || v > hi) {
      fail(f, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return v;
  }
};

}  // namespace detail

/// Validate a parsed document and build the representation it describes.
inline InputSpec ingest_json(const Json& doc) {
  detail::Reader R;
  InputSpec S;
  S.echo = doc;
  if (!doc.is_object()) throw InputErrors(ErrorCode::ValidationError, {{"", "top level must be an object"}});

  FieldPtr F;
  if (auto* fj = R.object(doc, "field", "")) {
    auto p = R.integer(*fj, "p", "field", true, 2, 65536);
    auto f = R.integer(*fj, "f", "field", false, 1, 16);
    if (p) {
      try {
        if (fj->contains("modulus")) {
          const auto& mj = (*fj)["modulus"];
          std::vector<std::uint32_t> mod;
          bool ok = mj.is_array();
          if (ok)
            for (auto& c : mj) {
              if (!c.is_number_integer() || c.get<std::int64_t>() < 0) ok = false;
              else mod.push_back(static_cast<std::uint32_t>(c.get<std::int64_t>()));
            }
          if (!ok) R.fail("field.modulus", "expected an array of non-negative integers");
          else if (f && static_cast<std::size_t>(*f) + 1 != mod.size()) R.fail("field.modulus", "degree disagrees with field.f");
          else F = Field::make_with_modulus(static_cast<std::uint32_t>(*p), mod);
        } else {
          F = Field::make(static_cast<std::uint32_t>(*p), static_cast<std::uint32_t>(f.value_or(1)));
        }
      } catch (const Error& e) {
        R.fail(e.field().empty() ? "field" : e.field(), e.what());
      }
    }
  }

  LocalFieldData lf;
  bool lf_ok = false;
  if (auto* lj = R.object(doc, "local_field", "")) {
    auto p = R.integer(*lj, "p", "local_field", true, 2, 65536);
    auto e = R.integer(*lj, "e", "local_field", false, 1, 1 << 20);
    auto f = R.integer(*lj, "f", "local_field", false, 1, 1 << 20);
    auto mu = R.integer(*lj, "mu_order", "local_field", false, 1, std::int64_t{1} << 40);
    auto z = R.integer(*lj, "zeta_degree", "local_field", false, 1, 65535);
    if (p) {
      lf.p = static_cast<std::uint32_t>(*p);
      lf.e = static_cast<std::uint32_t>(e.value_or(1));
      lf.f = static_cast<std::uint32_t>(f.value_or(1));
      lf.mu_order = static_cast<std::uint64_t>(mu.value_or(lf.p == 2 ? 2 : 1));
      if (z) lf.zeta_degree = static_cast<std::uint32_t>(*z);
      try {
        lf.validate();
        lf_ok = true;
      } catch (const Error& err) {
        R.fail(err.field(), err.what());
      }
    }
  }
  if (F && lf_ok && F->p() != lf.p) R.fail("local_field.p", "field and local field disagree on p");

  std::vector<Matrix> gens;
  std::vector<std::int64_t> omega;
  if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty()) {
    R.fail("generators", "expected a non-empty array");
  } else {
    const auto& gj = doc["generators"];
    std::size_t d = 0;
    for (std::size_t i = 0; i < gj.size(); ++i) {
      std::string where = "generators[" + std::to_string(i) + "]";
      if (!gj[i].is_object()) {
        R.fail(where, "expected an object");
        continue;
      }
      auto w = R.integer(gj[i], "omega", where, true, std::numeric_limits<std::int64_t>::min(),
                         std::numeric_limits<std::int64_t>::max());
      if (w && lf_ok && (*w < 1 || *w >= static_cast<std::int64_t>(lf.p))) R.fail(where + ".omega", "must lie in [1, p-1]");
      const Json* mj = gj[i].contains("matrix") ? &gj[i]["matrix"] : nullptr;
      if (!mj || !mj->is_array() || mj->empty()) {
        R.fail(where + ".matrix", "expected a square array of integers");
        continue;
      }
      std::size_t rows = mj->size();
      bool shape = true;
      for (auto& row : *mj)
        if (!row.is_array() || row.size() != rows) shape = false;
        else
          for (auto& x : row)
            if (!x.is_number_integer()) shape = false;
      if (!shape) {
        R.fail(where + ".matrix", "expected a square array of integers");
        continue;
      }
      if (i == 0) d = rows;
      if (rows != d) {
        R.fail(where + ".matrix", "dimension differs from generators[0]");
        continue;
      }
      if (rows > 8) {
        R.fail(where + ".matrix", "dimension must lie in 1..8");
        continue;
      }
      if (!F) continue;
      Matrix A(F, rows, rows);
      bool range = true;
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < rows; ++c) {
          auto v = (*mj)[r][c].get<std::int64_t>();
          if (F->f() == 1) {
            A(r, c) = F->from_int(v);
          } else if (v < 0 || v >= static_cast<std::int64_t>(F->q())) {
            range = false;
          } else {
            A(r, c) = static_cast<Elem>(v);
          }
        }
      if (!range) {
        R.fail(where + ".matrix", "entries must be element codes in [0, q)");
        continue;
      }
      if (!A.invertible()) {
        R.fail(where + ".matrix", "matrix is singular");
        continue;
      }
      if (w) {
        gens.push_back(A);
        omega.push_back(*w);
      }
    }
  }

  S.cap = default_cap();
  if (doc.contains("options")) {
    if (auto* oj = R.object(doc, "options", "")) {
      auto cap = R.integer(*oj, "cap", "options", false, 1, std::int64_t{1} << 32);
      if (cap && !std::getenv("DEFRING_CAP")) S.cap = static_cast<std::size_t>(*cap);
      if (auto v = R.integer(*oj, "exhaustive_limit", "options", false, 0, std::int64_t{1} << 40))
        S.opt.exhaustive_limit = static_cast<std::uint64_t>(*v);
      if (auto v = R.integer(*oj, "kernel_scan_limit", "options", false, 0, std::int64_t{1} << 40))
        S.opt.kernel_scan_limit = static_cast<std::uint64_t>(*v);
      if (auto v = R.integer(*oj, "meataxe_seeds", "options", false, 1, 1 << 20)) S.opt.seeds = static_cast<int>(*v);
      if (oj->contains("kummer_subgroups")) {
        const auto& kj = (*oj)["kummer_subgroups"];
        std::vector<std::vector<Word>> subs;
        bool ok = kj.is_array();
        if (ok)
          for (std::size_t s = 0; s < kj.size() && ok; ++s) {
            if (!kj[s].is_array()) {
              ok = false;
              break;
            }
            std::vector<Word> words;
            for (auto& w : kj[s]) {
              if (!w.is_array()) {
                ok = false;
                break;
              }
              Word word;
              for (auto& l : w) {
                if (!l.is_number_integer()) {
                  ok = false;
                  break;
                }
                auto letter = l.get<std::int64_t>();
                if (letter == 0 || static_cast<std::size_t>(letter < 0 ? -letter : letter) > gens.size()) {
                  R.fail("options.kummer_subgroups[" + std::to_string(s) + "]", "word letter out of range");
                  ok = false;
                  break;
                }
                word.push_back(static_cast<int>(letter));
              }
              words.push_back(word);
            }
            if (ok) subs.push_back(words);
          }
        if (!ok && R.issues.empty()) R.fail("options.kummer_subgroups", "expected a list of lists of words");
        if (ok) S.kummer_subgroups = subs;
      }
    }
  }

  if (R.issues.empty()) {
    S.rep.field = F;
    S.rep.local = lf;
    S.rep.gens = gens;
    S.rep.omega = omega;
    try {
      S.rep.validate();
    } catch (const Error& e) {
      R.fail(e.field(), e.what());
    }
  }
  if (!R.issues.empty()) throw InputErrors(ErrorCode::ValidationError, R.issues);
  return S;
}

inline InputSpec ingest_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputErrors(ErrorCode::ParseError, {{"", e.what()}});
  }
  return ingest_json(doc);
}

inline InputSpec ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputErrors(ErrorCode::ParseError, {{"", "cannot open " + path}});
  std::stringstream ss;
  ss << in.rdbuf();
  return ingest_text(ss.str());
}

/// Value tagged with the operation that produced it.
inline Json entry(const Json& value, const std::string& provenance) { return Json{{"value", value}, {"provenance", provenance}}; }

struct ConstituentClass {
  GModule module;
  std::size_t multiplicity = 1;
  bool absolutely_irreducible = false;
};

/// Constituents of the semisimplification, grouped by isomorphism class.
inline std::vector<ConstituentClass> constituent_classes(const std::vector<GModule>& factors, const IrreducibilityOptions& opt) {
  std::vector<ConstituentClass> out;
  for (auto& c : factors) {
    bool placed = false;
    for (auto& k : out)
      if (k.module.dim == c.dim && is_isomorphic(k.module, c)) {
        ++k.multiplicity;
        placed = true;
        break;
      }
    if (!placed) out.push_back({c, 1, is_absolutely_irreducible(c, opt)});
  }
  return out;
}

inline std::uint64_t omega_order(const ResidualRep& rep) {
  auto Fp = Field::make(rep.local.p);
  std::uint64_t ord = 1;
  for (auto w : rep.omega) ord = std::lcm(ord, static_cast<std::uint64_t>(Fp->order(Fp->from_int(w))));
  return ord;
}

/// Partition of constituent-class indices into classes related by some Tate twist.
inline std::vector<std::vector<std::size_t>> twist_relation(const std::vector<ConstituentClass>& cls, std::uint64_t wo,
                                                            std::size_t cap) {
  std::vector<int> label(cls.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = static_cast<int>(out.size());
    out.push_back({i});
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      if (label[j] >= 0 || cls[j].module.dim != cls[i].module.dim) continue;
      for (std::uint64_t k = 1; k < wo; ++k)
        if (pseudo_equal(twist(cls[i].module, static_cast<int>(k)).action, cls[j].module.action, cap)) {
          label[j] = label[i];
          out.back().push_back(j);
          break;
        }
    }
  }
  return out;
}

inline Json partition_json(const PartitionData& P) {
  Json j;
  j["blocks"] = entry(P.block_dims, "dimension.partition_stats");
  j["classes"] = blocks_label(P);
  j["l_P"] = entry(P.l, "dimension.partition_stats");
  j["n_P"] = entry(P.nP, "dimension.partition_stats");
  j["p_P"] = entry(P.pP, "dimension.partition_stats");
  j["delta_P"] = entry(P.delta, "dimension.partition_stats");
  j["bound_ZP"] = entry(bound_ZP(P), "dimension.bound_ZP");
  j["bound_ZPij"] = entry(bound_ZPij(P), "dimension.bound_ZPij");
  j["bound_Y"] = entry(bound_Y(P), "dimension.bound_Y");
  j["codim_gap"] = entry(codim_gap(P), "dimension.codim_gap");
  return j;
}

inline Json sweep_json(std::int64_t d, std::int64_t n) {
  Json rows = Json::array();
  for (auto& P : partition_sweep(d, n)) {
    auto j = partition_json(P);
    j["codim_gap_Y"] = entry(codim_gap_Y(P), "dimension.codim_gap_Y");
    j["minimal"] = entry(P.is_minimal(), "dimension.PartitionData");
    rows.push_back(j);
  }
  return rows;
}

inline std::string lambda_string(const Field& F, const std::vector<Elem>& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + F.to_string(l[i]);
  return s + ")";
}

struct ReportResult {
  Json json;
  std::vector<std::string> failed_sections;
};

/// The full pipeline; sections that throw are recorded and the rest still run.
inline ReportResult build_report(const InputSpec& S) {
  const auto& rep = S.rep;
  const auto& F = *rep.field;
  auto d = static_cast<std::int64_t>(rep.d());
  std::int64_t n = rep.local.n();
  ReportResult out;
  Json& J = out.json;
  J["version"] = kVersion;
  J["input"] = S.echo;
  J["errors"] = Json::array();
  Json warnings = Json::array();

  auto section = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const Error& e) {
      J["errors"].push_back({{"section", name}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}});
      out.failed_sections.push_back(name);
    }
  };

  std::uint64_t wo = omega_order(rep);
  if (rep.local.p <= std::numeric_limits<std::uint32_t>::max() && d % static_cast<std::int64_t>(rep.local.p) == 0)
    warnings.push_back("p divides d: ad0 is not a direct summand of ad");
  if (rep.local.p == 2) warnings.push_back("p = 2: omega is trivial");
  if (rep.local.mu_order > 1 && wo > 1)
    warnings.push_back("mu_order > 1 forces omega = 1 but nontrivial omega values were supplied");
  if (is_Qp(rep.local) && rep.local.p > 2 && wo != rep.local.p - 1)
    warnings.push_back("Q_p data with omega of order " + std::to_string(wo) + " instead of p-1");

  section("image", [&] {
    auto G = rep.joint_image(S.cap);
    auto rho = MatrixGroup::closure(rep.gens, S.cap);
    J["image"] = {{"order", entry(rho.order(), "group.closure")},
                  {"joint_order_with_omega", entry(G.order(), "ResidualRep.joint_image")},
                  {"omega_order", entry(wo, "field.order")}};
  });

  std::vector<GModule> factors;
  std::vector<ConstituentClass> classes;
  bool abs_irr = false;
  section("constituents", [&] {
    auto V = make_base(rep);
    factors = semisimplify(V, S.opt).constituents;
    classes = constituent_classes(factors, S.opt);
    abs_irr = factors.size() == 1 && classes[0].absolutely_irreducible;
    auto tw = twist_relation(classes, wo, S.cap);
    Json cj = Json::array();
    for (auto& c : classes)
      cj.push_back({{"dim", entry(c.module.dim, "meataxe.semisimplify")},
                    {"multiplicity", entry(c.multiplicity, "gmodule.is_isomorphic")},
                    {"absolutely_irreducible", entry(c.absolutely_irreducible, "meataxe.is_absolutely_irreducible")}});
    J["constituents"] = {{"irreducible", entry(factors.size() == 1, "meataxe.composition_series")},
                         {"absolutely_irreducible", entry(abs_irr, "meataxe.is_absolutely_irreducible")},
                         {"classes", cj},
                         {"twist_classes", entry(tw, "pseudochar.pseudo_equal after gmodule.twist")}};

    // Blocks are composition factors; a twist class gathers every copy of its members.
    std::vector<std::int64_t> blocks;
    std::vector<std::vector<std::size_t>> block_classes;
    std::vector<std::int64_t> fibre_dims, fibre_classes;
    for (auto& t : tw) {
      std::vector<std::size_t> members;
      for (auto ci : t)
        for (std::size_t m = 0; m < classes[ci].multiplicity; ++m) {
          members.push_back(blocks.size());
          blocks.push_back(static_cast<std::int64_t>(classes[ci].module.dim));
        }
      block_classes.push_back(members);
    }
    for (auto& c : classes) {
      for (std::size_t m = 0; m < c.multiplicity; ++m) fibre_dims.push_back(static_cast<std::int64_t>(c.module.dim));
      fibre_classes.push_back(static_cast<std::int64_t>(c.multiplicity));
    }
    auto P = partition_stats(d, n, blocks, block_classes);
    Json pj = partition_json(P);
    pj["bound_fibre"] = entry(bound_fibre(d, n, fibre_dims, fibre_classes), "dimension.bound_fibre");
    J["partition"] = pj;
    auto M = mrs_bound(d, n, fibre_dims);
    J["mrs"] = {{"generic", entry(M.generic, "dimension.mrs_bound")}, {"special", entry(M.special, "dimension.mrs_bound")}};
    auto K = kummer_codims(d, n, static_cast<std::int64_t>(factors.size()));
    Json kj{{"spcl", entry(K.spcl, "dimension.kummer_codims")},
            {"kred", entry(K.kred, "dimension.kummer_codims")},
            {"generic_all_irreducible", entry(K.generic_all_irreducible, "dimension.kummer_codims")}};
    kj["complement"] = K.complement ? entry(*K.complement, "dimension.kummer_codims") : Json(nullptr);
    kj["generic_complement"] = K.generic_complement ? entry(*K.generic_complement, "dimension.kummer_codims") : Json(nullptr);
    if (S.kummer_subgroups && abs_irr)
      kj["kummer_irreducible"] = entry(kummer_irreducible(V, *S.kummer_subgroups, S.opt), "clifford.kummer_irreducible");
    J["kummer"] = kj;
  });

  section("partition_table", [&] { J["partition_table"] = sweep_json(d, n); });

  section("cohomology", [&] {
    auto P = profile(rep);
    const std::string src = "cohom.profile";
    J["cohomology"] = {{"h0_ad", entry(P.h0_ad, "cohom.h0")},       {"h1_ad", entry(P.h1_ad, "cohom.h1")},
                       {"h2_ad", entry(P.h2_ad, "cohom.h2")},       {"h0_ad0", entry(P.h0_ad0, "cohom.h0")},
                       {"h1_ad0", entry(P.h1_ad0, "cohom.h1")},     {"h2_ad0", entry(P.h2_ad0, "cohom.h2")},
                       {"dimZ1_ad", entry(P.dimZ1_ad, src)},        {"dimZ1_ad0", entry(P.dimZ1_ad0, src)},
                       {"r", entry(P.r, src)},                      {"s", entry(P.s, src)},
                       {"t", entry(P.t, src)},                      {"expected_dim_R", entry(P.expected_dim_R, src)},
                       {"expected_dim_R_mod", entry(P.expected_dim_R_mod, src)},
                       {"rel_dim_fixed_det", entry(P.rel_dim_fixed_det, src)}};
  });

  section("expected_dims", [&] {
    auto E = expected_dims(d, n, rep.local.mu_order);
    const std::string src = "dimension.expected_dims";
    J["expected_dims"] = {{"R", entry(E.R, src)},           {"R_mod", entry(E.R_mod, src)},
                          {"Agen", entry(E.Agen, src)},     {"Agen_mod", entry(E.Agen_mod, src)},
                          {"R_chi", entry(E.R_chi, src)},   {"R_chi_mod", entry(E.R_chi_mod, src)},
                          {"R_psi", entry(E.R_psi, src)},   {"R_psi_mod", entry(E.R_psi_mod, src)},
                          {"Agen_psi", entry(E.Agen_psi, src)}};
  });

  section("components", [&] {
    auto C = component_report(rep, abs_irr, S.opt);
    Json per = Json::array();
    for (auto& [chi, dim] : C.per_chi_dims) per.push_back({{"chi_index", chi.index}, {"dim", dim}});
    J["components"] = {
        {"mu_order", entry(C.mu_order, "components.mu_characters")},
        {"component_count", entry(C.component_count_generic, "components.component_count")},
        {"large_L_convention", entry(C.large_L_convention, "components.component_report")},
        {"det_ring", {{"group_algebra_rank", entry(C.det_ring.mu_order, "components.det_ring_structure")},
                      {"variable_count", entry(C.det_ring.variable_count, "components.det_ring_structure")}}},
        {"per_chi_dims", entry(per, "dimension.expected_dims")},
        {"fixed_det_dim", entry(C.fixed_det_dim, "dimension.expected_dims")},
        {"fixed_det_dim_mod", entry(C.fixed_det_dim_mod, "dimension.expected_dims")},
        {"factorial_exception",
         C.factorial_exception ? entry(*C.factorial_exception, "components.factorial_exception") : Json(nullptr)}};
    auto phi = phi_d_data(static_cast<std::uint64_t>(d), rep.local);
    J["components"]["phi_d"] = {{"prime_to_p", entry(phi.prime_to_p, "components.phi_d_data")},
                                {"p_part", entry(phi.p_part, "components.phi_d_data")},
                                {"flat_degree", entry(phi.flat_degree, "components.phi_d_data")}};
  });

  section("smoothness", [&] {
    auto Sm = smoothness_predicates(rep, S.opt);
    J["smoothness"] = {{"h2_ad", entry(Sm.h2_ad, "cohom.h2")},
                       {"h2_ad0", entry(Sm.h2_ad0, "cohom.h2")},
                       {"formally_smooth", entry(Sm.formally_smooth, "components.smoothness_predicates")},
                       {"pnot2_hypothesis",
                        Sm.pnot2_hypothesis ? entry(*Sm.pnot2_hypothesis, "components.smoothness_predicates") : Json(nullptr)},
                       {"peq2_hypothesis",
                        Sm.peq2_hypothesis ? entry(*Sm.peq2_hypothesis, "components.smoothness_predicates") : Json(nullptr)}};
  });

  section("pseudo_character", [&] {
    auto P = pseudo_of(rep.gens, S.cap);
    std::map<std::string, std::size_t> counts;
    for (auto& l : P.lambda) ++counts[lambda_string(F, l)];
    Json pj{{"group_order", entry(P.group.order(), "pseudochar.pseudo_of")},
            {"distinct_coefficient_vectors", entry(counts.size(), "pseudochar.pseudo_of")}};
    Json gl = Json::array();
    for (auto& g : rep.gens) gl.push_back(lambda_string(F, char_poly_coeffs(g)));
    pj["generator_coefficients"] = entry(gl, "charpoly.char_poly_coeffs");
    if (counts.size() <= 64) {
      Json cl = Json::array();
      for (auto& [k, v] : counts) cl.push_back({{"coefficients", k}, {"count", v}});
      pj["coefficient_classes"] = entry(cl, "pseudochar.pseudo_of");
    }
    J["pseudo_character"] = pj;
  });

  J["warnings"] = warnings;
  return out;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace defring
