#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "defring/defring.hpp"

using namespace defring;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInternal = 2;

int report_issues(const InputErrors& e) {
  Json j{{"error", std::string(to_string(e.code()))}, {"issues", Json::array()}};
  for (auto& i : e.issues()) j["issues"].push_back({{"field", i.field}, {"message", i.message}});
  std::cerr << j.dump(2) << "\n";
  return kInvalid;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int cmd_report(const std::string& in, const std::string& out) {
  auto spec = ingest(in);
  auto R = build_report(spec);
  auto text = dump(R.json);
  if (out.empty()) {
    std::cout << text;
  } else if (!write_text(out, text)) {
    std::cerr << "cannot write " << out << "\n";
    return kInternal;
  }
  return R.failed_sections.empty() ? kOk : kInternal;
}

int cmd_bounds(std::int64_t d, std::int64_t n, bool sweep, bool csv) {
  if (d < 1 || n < 1) {
    std::cerr << "--d and --degree must be positive\n";
    return kInvalid;
  }
  if (sweep && csv) {
    std::cout << sweep_csv(d, n);
    return kOk;
  }
  Json j;
  j["d"] = d;
  j["degree"] = n;
  auto E = expected_dims(d, n, 1);
  j["expected_dims"] = {{"R", E.R},         {"R_mod", E.R_mod},         {"Agen", E.Agen},
                        {"Agen_mod", E.Agen_mod}, {"R_chi", E.R_chi},   {"R_chi_mod", E.R_chi_mod},
                        {"R_psi", E.R_psi}, {"R_psi_mod", E.R_psi_mod}, {"Agen_psi", E.Agen_psi}};
  j["bound_fibre_irreducible"] = bound_fibre(d, n, {d}, {1});
  auto K = kummer_codims(d, n, 2);
  j["kummer_codims"] = {{"spcl", K.spcl}, {"kred", K.kred}};
  j["kummer_codims"]["complement"] = K.complement ? Json(*K.complement) : Json(nullptr);
  if (sweep) j["partition_table"] = sweep_json(d, n);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_example35() {
  auto R = verify_example_3_5();
  Json j{{"ch_identity_vanishes", R.ch_identity_vanishes},
         {"generators_match", R.generators_match},
         {"lambdas_match", R.lambdas_match},
         {"specialization_ok", R.specialization_ok},
         {"generators", R.generators},
         {"reduced_entries", R.entries},
         {"ok", R.ok()}};
  std::cout << j.dump(2) << "\n";
  return R.ok() ? kOk : kInternal;
}

int cmd_fibre(std::uint32_t q, std::size_t d, const std::string& spec_path, const std::string& csv) {
  auto spec = ingest(spec_path);
  if (spec.rep.field->q() != q) {
    std::cerr << "--q " << q << " disagrees with the field of " << spec_path << "\n";
    return kInvalid;
  }
  if (spec.rep.d() != d) {
    std::cerr << "--d " << d << " disagrees with the generators of " << spec_path << "\n";
    return kInvalid;
  }
  auto r = fibre_enumerate(spec.rep.gens, true, spec.cap);
  std::map<std::size_t, std::size_t> hist;
  for (auto t : r.tangent) ++hist[t];
  Json j{{"points", r.count()}, {"tangent_histogram", Json::object()}};
  for (auto& [t, c] : hist) j["tangent_histogram"][std::to_string(t)] = c;
  auto D = static_cast<std::int64_t>(d);
  if (is_absolutely_irreducible(make_base(spec.rep), spec.opt))
    j["bound_fibre_irreducible"] = bound_fibre(D, spec.rep.local.n(), {D}, {1});
  std::cout << j.dump(2) << "\n";
  if (!csv.empty() && !write_text(csv, fibre_csv(r))) {
    std::cerr << "cannot write " << csv << "\n";
    return kInternal;
  }
  return kOk;
}

int cmd_selftest() {
  bool all = true;
  for (auto& c : run_selftest()) {
    std::printf("%-26s %s  %.2fs  %s\n", c.name.c_str(), c.passed ? "PASS" : "FAIL", c.seconds, c.detail.c_str());
    all = all && c.passed;
  }
  return all ? kOk : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformation-ring invariants of residual representations"};
  app.require_subcommand(1);

  std::string in, out;
  auto* rep = app.add_subcommand("report", "Full report for a representation JSON file");
  rep->add_option("input", in, "Input JSON")->required();
  rep->add_option("--out", out, "Write the report here instead of stdout");

  std::int64_t d = 0, n = 0;
  bool sweep = false, csv_flag = false;
  auto* bnd = app.add_subcommand("bounds", "Dimension bounds for given d and [F:Q_p]");
  bnd->add_option("--d", d, "Dimension")->required();
  bnd->add_option("--degree", n, "[F:Q_p]")->required();
  bnd->add_flag("--sweep", sweep, "Include every partition and twist structure");
  bnd->add_flag("--csv", csv_flag, "Emit the sweep as CSV");

  auto* ex = app.add_subcommand("example35", "Verify the single-generator Cayley-Hamilton example");

  std::uint32_t q = 0;
  std::size_t fd = 0;
  std::string spec, csv;
  auto* fib = app.add_subcommand("fibre-count", "Enumerate tuples with the pseudo-character of a target");
  fib->add_option("--q", q, "Field size")->required();
  fib->add_option("--d", fd, "Dimension")->required();
  fib->add_option("--spec", spec, "Input JSON naming the target")->required();
  fib->add_option("--csv", csv, "Write one row per point");

  auto* st = app.add_subcommand("selftest", "Run the built-in checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*rep) return cmd_report(in, out);
    if (*bnd) return cmd_bounds(d, n, sweep, csv_flag);
    if (*ex) return cmd_example35();
    if (*fib) return cmd_fibre(q, fd, spec, csv);
    if (*st) return cmd_selftest();
  } catch (const InputErrors& e) {
    return report_issues(e);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ValidationError || e.code() == ErrorCode::ParseError ||
                   e.code() == ErrorCode::InvalidField || e.code() == ErrorCode::SizeExceeded
               ? kInvalid
               : kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
