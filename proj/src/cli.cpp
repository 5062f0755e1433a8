#include "davenport/cli.hpp"

#include "davenport/errors.hpp"
#include "davenport/harness.hpp"
#include "davenport/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace davenport::cli {

namespace {

using nlohmann::json;
using namespace davenport::harness;

struct CommonSearch {
  std::uint64_t budget = kDefaultNodeBudget;
  unsigned workers = 1;
  std::string cache;
  bool no_cache = false;
  bool closure_check = false;

  std::optional<std::filesystem::path> cache_path() const {
    if (no_cache) return std::nullopt;
    if (!cache.empty()) return std::filesystem::path(cache);
    return default_cache_path();
  }
};

void add_search_flags(CLI::App* cmd, CommonSearch& s) {
  cmd->add_option("--budget", s.budget, "search node budget")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", s.workers, "parallel workers")->check(CLI::PositiveNumber);
  cmd->add_option("--cache", s.cache, "result cache file (default: $" + std::string(kCacheDirEnv) +
                                          "/" + kCacheFileName + ")");
  cmd->add_flag("--no-cache", s.no_cache, "ignore the result cache");
  cmd->add_flag("--closure-check", s.closure_check,
                "re-verify downward closure on every irreducible sequence visited");
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path);
  f << text;
  if (!f) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

std::string describe_report(const DavenportReport& r) {
  std::ostringstream os;
  os << "ring Z_" << r.ring.to_string() << "  |S_R|=" << r.ring.order() << '\n';
  if (!r.exact) {
    os << "INEXACT (node budget exhausted): D(S_R) >= " << r.d_semigroup
       << ", D(U(S_R)) >= " << r.d_units << '\n';
    return os.str();
  }
  os << "D(S_R) = " << r.d_semigroup << "  (d(S_R) = " << r.small_d() << ")\n";
  os << "D(U(S_R)) = " << r.d_units << "  P2 = " << r.invariants.p2
     << "  delta = " << r.invariants.delta << "  gap = " << r.gap() << '\n';
  os << "bounds [" << r.lower_bound() << ", " << r.upper_bound() << "] "
     << (r.bounds_ok() ? "OK" : "VIOLATED") << '\n';
  if (r.cap_hit) os << "FALSIFICATION: an irreducible sequence reached the upper-bound cap\n";
  os << "conjecture bound " << r.invariants.conj_bound << ": "
     << (r.conjecture_ok() ? "ok" : "exceeded (finding)") << '\n';
  os << "retracted equality D(S_R) = D(U)+P2: "
     << (r.retracted_equality_holds() ? "holds" : "fails") << '\n';
  os << "witness " << format_sequence(r.ring, r.witness) << '\n';
  os << "nodes " << r.stats.nodes << "  millis " << r.stats.millis << '\n';
  return os.str();
}

int cmd_compute(const std::string& moduli_text, const std::string& json_path,
                const CommonSearch& s, std::ostream& out, std::ostream& err) {
  const RingSpec ring = RingSpec(parse_moduli(moduli_text)).canonical();

  std::optional<ResultCache> cache;
  if (auto path = s.cache_path()) {
    cache.emplace(*path);
    if (cache->warning()) err << "warning: " << *cache->warning() << '\n';
  }

  std::optional<DavenportReport> report;
  if (cache && !s.closure_check) report = cache->lookup(ring);
  bool fresh = false;
  if (!report) {
    ReportOptions options;
    options.search.node_budget = s.budget;
    options.search.workers = s.workers;
    options.search.check_downward_closure = s.closure_check;
    options.partial_on_budget = true;
    report = davenport_semigroup(ring, options);
    fresh = true;
  }

  const std::string text = report_to_json(*report).dump(2) + "\n";
  if (json_path.empty()) {
    out << text;
  } else {
    if (!write_file(json_path, text, err)) return kExitIo;
    out << describe_report(*report);
  }
  if (report->stats.closure_violations) {
    err << "FALSIFICATION: downward closure violated " << report->stats.closure_violations << " times\n";
    return kExitFalsified;
  }

  if (!report->exact) return kExitBudget;
  if (!report->bounds_ok()) return kExitFalsified;
  if (cache && fresh) {
    cache->store(*report);
    try {
      cache->save();
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitIo;
    }
  }
  return kExitOk;
}

struct ScanArgs {
  ScanConfig config;
  std::string parity = "any";
  std::string csv_path;
};

int cmd_scan(ScanArgs& a, const CommonSearch& s, std::ostream& out, std::ostream& err) {
  if (a.parity == "even") a.config.parity = Parity::kEven;
  else if (a.parity == "odd") a.config.parity = Parity::kOdd;
  else a.config.parity = Parity::kAny;
  a.config.node_budget = s.budget;
  a.config.workers = s.workers;
  a.config.cache_path = s.cache_path();
  a.config.check_downward_closure = s.closure_check;
  validate(a.config);

  const auto result = run_scan(a.config);
  const auto csv = render_csv(result);
  const auto summary = render_summary(result);
  if (a.csv_path.empty()) {
    out << csv;
    err << summary;
  } else {
    if (!write_file(a.csv_path, csv, err)) return kExitIo;
    out << summary;
  }
  return result.exit_code();
}

struct VerifyArgs {
  std::string lemma;
  std::string moduli;
  std::string group;
  std::uint64_t max_group_order = 0;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 1;
  std::string json_path;
};

int cmd_verify(const VerifyArgs& a, const CommonSearch& s, std::ostream& out, std::ostream& err) {
  std::vector<verify::SuiteResult> results;
  SearchOptions search;
  search.node_budget = s.budget;
  search.workers = s.workers;

  if (a.lemma == "lemma1") {
    std::vector<AbelianGroupSpec> groups;
    if (!a.group.empty()) {
      groups.push_back(AbelianGroupSpec{parse_moduli(a.group)});
    } else if (a.max_group_order) {
      groups = verify::abelian_groups_up_to(a.max_group_order);
    } else if (!a.moduli.empty()) {
      groups.push_back(unit_group_structure(RingSpec(parse_moduli(a.moduli))).group);
    } else {
      err << "verify lemma1 needs --moduli, --group or --max-group-order\n";
      return kExitUsage;
    }
    verify::GroupDavenportMemo memo;
    for (const auto& g : groups) results.push_back(verify::lemma1_suite(g, memo, search));
  } else {
    if (a.moduli.empty()) {
      err << "verify " << a.lemma << " needs --moduli\n";
      return kExitUsage;
    }
    const RingSpec ring(parse_moduli(a.moduli));
    if (a.lemma == "lemma2") results.push_back(verify::lemma2_suite(ring));
    else if (a.lemma == "assertionB") results.push_back(verify::assertion_b_suite(ring, 200'000, a.seed));
    else results.push_back(verify::reduce_suite(ring, 100'000, a.samples, a.seed));
  }

  bool ok = true;
  json all = json::array();
  for (const auto& r : results) {
    out << verify::render(r);
    all.push_back(verify::to_json(r));
    ok = ok && r.passed();
  }
  out << (ok ? "verify: pass\n" : "verify: FAIL\n");
  if (!a.json_path.empty() && !write_file(a.json_path, all.dump(2) + "\n", err)) return kExitIo;
  return ok ? kExitOk : kExitFalsified;
}

struct WitnessArgs {
  std::string family;
  std::size_t r1 = 0, r2 = 0, r3 = 0;
  std::string moduli;
};

int cmd_witness(const WitnessArgs& a, std::ostream& out, std::ostream& err) {
  json j;
  j["family"] = a.family;
  RingSpec ring(std::vector<std::uint64_t>{2});
  Sequence witness;
  bool verified = false;
  if (a.family == "tight") {
    const auto w = tight_family_witness(a.r1, a.r2, a.r3);
    ring = w.ring;
    witness = w.witness;
    j["parameters"] = {{"r1", a.r1}, {"r2", a.r2}, {"r3", a.r3}};
    j["expected_length"] = 3 * a.r1 + 2 * a.r2 + a.r3;
    verified = w.irreducible.value_or(false);
    if (!w.irreducible) j["note"] = "ring exceeds the enumeration cap; irreducibility not checked";
  } else {
    if (a.moduli.empty()) {
      err << "witness --family lowerbound needs --moduli\n";
      return kExitUsage;
    }
    ring = RingSpec(parse_moduli(a.moduli));
    const auto units_run = unit_group_search(ring);
    witness = lower_bound_witness(ring, units_run.witness, units_run.length + 1);
    j["unit_sequence"] = sequence_theta_json(ring, units_run.witness);
    j["D_units"] = units_run.length + 1;
    verified = !is_reducible(ring, witness);
  }
  const auto total = sigma(ring, witness);
  j["moduli"] = std::vector<std::uint64_t>(ring.moduli().begin(), ring.moduli().end());
  j["witness_theta"] = sequence_theta_json(ring, witness);
  j["witness_zero_based"] = sequence_zero_based_json(witness);
  j["length"] = witness.size();
  j["sigma_theta"] = theta_form(ring, total);
  j["sigma_zero_based"] = total.residues;
  j["irreducible"] = verified;
  out << j.dump(2) << '\n';
  return verified || a.family == "tight" ? kExitOk : kExitFalsified;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Davenport constants of multiplicative semigroups of Z_n1 + ... + Z_nr"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonSearch search;

  std::string compute_moduli, compute_json;
  auto* compute = app.add_subcommand("compute", "D(S_R), D(U(S_R)) and bound checks for one ring");
  compute->add_option("--moduli", compute_moduli, "comma-separated moduli, e.g. 8,2")->required();
  compute->add_option("--json", compute_json, "write the JSON report to this file");
  add_search_flags(compute, search);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "scan a family of rings, CSV table + summary");
  scan->add_option("--max-order", scan_args.config.max_order, "largest |S_R|")->required();
  scan->add_option("--min-order", scan_args.config.min_order, "smallest |S_R|");
  scan->add_option("--max-rank", scan_args.config.max_rank, "largest number of moduli");
  scan->add_option("--csv", scan_args.csv_path, "write the CSV table to this file");
  scan->add_option("--parity", scan_args.parity, "modulus filter")
      ->check(CLI::IsMember({"any", "even", "odd"}));
  scan->add_flag("--prime-power-only", scan_args.config.prime_power_only,
                 "only prime-power moduli");
  scan->add_flag("--check-permutations", scan_args.config.check_permutations,
                 "recompute each ring with reversed moduli and compare");
  add_search_flags(scan, search);

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "exhaustive property suites");
  verify_cmd->add_option("--lemma", verify_args.lemma, "suite to run")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2", "assertionB", "reduce"}));
  verify_cmd->add_option("--moduli", verify_args.moduli, "ring moduli");
  verify_cmd->add_option("--group", verify_args.group, "lemma1: cyclic factor orders, e.g. 2,4");
  verify_cmd->add_option("--max-group-order", verify_args.max_group_order,
                         "lemma1: every abelian group up to this order");
  verify_cmd->add_option("--samples", verify_args.samples, "reduce: sample size for large rings");
  verify_cmd->add_option("--seed", verify_args.seed, "sampling seed");
  verify_cmd->add_option("--json", verify_args.json_path, "write suite results as JSON");
  add_search_flags(verify_cmd, search);

  WitnessArgs witness_args;
  auto* witness = app.add_subcommand("witness", "explicit irreducible witness sequences");
  witness->add_option("--family", witness_args.family,
                      "tight (Z_8^r1 + Z_4^r2 + Z_2^r3; alias section4) | lowerbound")
      ->required()
      ->transform(CLI::CheckedTransformer(std::map<std::string, std::string>{
          {"tight", "tight"}, {"section4", "tight"}, {"lowerbound", "lowerbound"}}));
  witness->add_option("--r1", witness_args.r1, "copies of Z_8");
  witness->add_option("--r2", witness_args.r2, "copies of Z_4");
  witness->add_option("--r3", witness_args.r3, "copies of Z_2");
  witness->add_option("--moduli", witness_args.moduli, "ring moduli (lowerbound)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(compute_moduli, compute_json, search, out, err);
    if (*scan) return cmd_scan(scan_args, search, out, err);
    if (*verify_cmd) return cmd_verify(verify_args, search, out, err);
    if (*witness) return cmd_witness(witness_args, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Falsification& e) {
    err << "FALSIFICATION: " << e.what() << "\ncounterexample: " << e.counterexample() << '\n';
    return kExitFalsified;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << " (partial lower bound " << e.partial_lower_bound()
        << ")\n";
    return kExitBudget;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace davenport::cli
