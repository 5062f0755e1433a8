#include "davenport/harness.hpp"

#include "davenport/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

namespace davenport::harness {

using nlohmann::json;

std::vector<std::uint64_t> parse_moduli(std::string_view text) {
  std::vector<std::uint64_t> out;
  if (text.empty()) throw InvalidInput("empty moduli list");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    auto token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw InvalidInput("cannot parse modulus '" + std::string(token) + "'");
    if (value < 2) throw InvalidInput("moduli must be >= 2, got " + std::to_string(value));
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------- JSON

json sequence_theta_json(const RingSpec& ring, const Sequence& t) {
  json out = json::array();
  for (const auto& a : t.terms()) out.push_back(theta_form(ring, a));
  return out;
}

json sequence_zero_based_json(const Sequence& t) {
  json out = json::array();
  for (const auto& a : t.terms()) out.push_back(a.residues);
  return out;
}

Sequence sequence_from_theta_json(const RingSpec& ring, const json& tuples) {
  std::vector<Element> terms;
  for (const auto& tuple : tuples) {
    std::vector<std::int64_t> values;
    for (const auto& v : tuple) values.push_back(v.get<std::int64_t>());
    terms.push_back(make_element(ring, std::move(values)));
  }
  return Sequence(ring, std::move(terms));
}

json report_to_json(const DavenportReport& r) {
  json j;
  j["moduli"] = std::vector<std::uint64_t>(r.ring.moduli().begin(), r.ring.moduli().end());
  j["D_semigroup"] = r.d_semigroup;
  j["D_units"] = r.d_units;
  j["P2"] = r.invariants.p2;
  j["delta"] = r.invariants.delta;
  j["conj_bound"] = r.invariants.conj_bound;
  j["gap"] = r.gap();
  if (r.exact) {
    j["bounds_ok"] = r.bounds_ok();
    j["conjecture_ok"] = r.conjecture_ok();
  } else {
    j["bounds_ok"] = nullptr;
    j["conjecture_ok"] = nullptr;
  }
  j["witness"] = sequence_theta_json(r.ring, r.witness);
  j["stats"] = {{"nodes", r.stats.nodes}, {"millis", r.stats.millis}};
  j["exact"] = r.exact;
  return j;
}

json report_to_json_without_timing(const DavenportReport& r) {
  auto j = report_to_json(r);
  j["stats"].erase("millis");
  return j;
}

json report_detail_json(const DavenportReport& r) {
  return {{"unit_witness", sequence_theta_json(r.ring, r.unit_witness)},
          {"search_cap", r.search_cap},
          {"cap_hit", r.cap_hit},
          {"cap_heuristic", r.cap_heuristic},
          {"closure_checks", r.stats.closure_checks},
          {"closure_violations", r.stats.closure_violations}};
}

DavenportReport report_from_json(const json& schema, const json& detail) {
  DavenportReport r;
  r.ring = RingSpec(schema.at("moduli").get<std::vector<std::uint64_t>>());
  r.invariants = ring_invariants(r.ring);
  r.d_semigroup = schema.at("D_semigroup").get<std::size_t>();
  r.d_units = schema.at("D_units").get<std::size_t>();
  r.exact = schema.at("exact").get<bool>();
  r.witness = sequence_from_theta_json(r.ring, schema.at("witness"));
  r.stats.nodes = schema.at("stats").at("nodes").get<std::uint64_t>();
  r.stats.millis = schema.at("stats").value("millis", std::uint64_t{0});
  r.unit_witness = sequence_from_theta_json(r.ring, detail.at("unit_witness"));
  r.search_cap = detail.at("search_cap").get<std::size_t>();
  r.cap_hit = detail.at("cap_hit").get<bool>();
  r.cap_heuristic = detail.at("cap_heuristic").get<bool>();
  r.stats.closure_checks = detail.value("closure_checks", std::uint64_t{0});
  r.stats.closure_violations = detail.value("closure_violations", std::uint64_t{0});
  if (schema.at("P2").get<std::size_t>() != r.invariants.p2 ||
      schema.at("delta").get<std::size_t>() != r.invariants.delta ||
      schema.at("conj_bound").get<std::size_t>() != r.invariants.conj_bound)
    throw InvalidInput("report invariants do not match its moduli");
  return r;
}

json trace_to_json(const RingSpec& ring, const ReductionTrace& trace) {
  json chain = json::array();
  for (std::size_t i = 0; i < trace.chain.subgroups.size(); ++i) {
    json members = json::array();
    for (const auto& u : trace.chain.subgroups[i].members) members.push_back(theta_form(ring, u));
    chain.push_back({{"prefix_product", theta_form(ring, trace.chain.prefix_products[i])},
                     {"stabilizer", members}});
  }
  json lifts = json::array();
  for (const auto& [a, lifted] : trace.lifts)
    lifts.push_back({{"term", theta_form(ring, a)}, {"lift", theta_form(ring, lifted)}});
  return {{"moduli", std::vector<std::uint64_t>(ring.moduli().begin(), ring.moduli().end())},
          {"input", sequence_theta_json(ring, trace.input)},
          {"V", sequence_theta_json(ring, trace.v)},
          {"rest", sequence_theta_json(ring, trace.rest)},
          {"saturated_primes", trace.primes.per_coordinate},
          {"chain", chain},
          {"strict_growth", trace.chain.strict_growth},
          {"t", trace.chain.t},
          {"delta", trace.chain.delta},
          {"assertion_b", trace.chain.assertion_b()},
          {"lifts", lifts},
          {"W", sequence_theta_json(ring, trace.w)},
          {"output", sequence_theta_json(ring, trace.output)}};
}

// ---------------------------------------------------------------- CSV

std::string csv_row(const DavenportReport& r) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  std::ostringstream os;
  os << '"' << r.ring.to_string() << "\"," << r.d_semigroup << ',' << r.d_units << ','
     << r.invariants.p2 << ',' << r.invariants.delta << ',' << r.gap() << ','
     << r.invariants.conj_bound << ',';
  if (r.exact)
    os << flag(r.bounds_ok()) << ',' << flag(r.conjecture_ok());
  else
    os << "unknown,unknown";
  os << ',' << flag(r.exact);
  return os.str();
}

// ---------------------------------------------------------------- cache

std::string cache_key(const RingSpec& ring) { return ring.canonical().to_string(); }

ResultCache::ResultCache(std::filesystem::path path, std::string tool_version)
    : path_(std::move(path)), version_(std::move(tool_version)), doc_(json::object()) {
  std::error_code ec;
  if (!std::filesystem::exists(path_, ec)) return;
  std::ifstream in(path_);
  try {
    in >> doc_;
    if (!doc_.is_object()) throw std::runtime_error("top level is not an object");
  } catch (const std::exception& e) {
    warning_ = "discarding unreadable cache " + path_.string() + ": " + e.what();
    doc_ = json::object();
  }
}

std::optional<DavenportReport> ResultCache::lookup(const RingSpec& ring) const {
  const auto key = cache_key(ring);
  const auto it = doc_.find(key);
  if (it == doc_.end()) return std::nullopt;
  try {
    if (it->at("tool_version").get<std::string>() != version_) return std::nullopt;
    auto r = report_from_json(it->at("report"), it->at("detail"));
    if (cache_key(r.ring) != key) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const DavenportReport& report) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  doc_[cache_key(report.ring)] = {{"tool_version", version_},
                                  {"timestamp", ts.str()},
                                  {"report", report_to_json(report)},
                                  {"detail", report_detail_json(report)}};
}

void ResultCache::save() const {
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp);
    out << doc_.dump(1) << '\n';
    if (!out) throw std::runtime_error("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, path_, ec);
  if (ec) throw std::runtime_error("cannot replace cache file " + path_.string() + ": " + ec.message());
}

std::optional<std::filesystem::path> default_cache_path() {
  const char* dir = std::getenv(kCacheDirEnv);
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir) / kCacheFileName;
}

// ---------------------------------------------------------------- scan

void validate(const ScanConfig& config) {
  if (config.max_order < 2) throw InvalidInput("max order must be >= 2");
  if (config.max_rank < 1) throw InvalidInput("max rank must be >= 1");
  if (config.workers < 1) throw InvalidInput("worker count must be >= 1");
}

namespace {

bool modulus_allowed(const ScanConfig& config, std::uint64_t n) {
  if (config.parity == Parity::kEven && n % 2) return false;
  if (config.parity == Parity::kOdd && n % 2 == 0) return false;
  if (config.prime_power_only && factorize(n).size() != 1) return false;
  return true;
}

}  // namespace

std::vector<RingSpec> enumerate_rings(const ScanConfig& config) {
  validate(config);
  std::vector<RingSpec> out;
  std::vector<std::uint64_t> current;
  std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec =
      [&](std::size_t rank, std::uint64_t min_modulus, std::uint64_t order) {
        if (current.size() == rank) {
          if (order >= config.min_order) out.emplace_back(current);
          return;
        }
        for (std::uint64_t n = min_modulus; order * n <= config.max_order; ++n) {
          if (!modulus_allowed(config, n)) continue;
          current.push_back(n);
          rec(rank, n, order * n);
          current.pop_back();
        }
      };
  for (std::size_t rank = 1; rank <= config.max_rank; ++rank) rec(rank, 2, 1);
  return out;
}

int ScanResult::exit_code() const {
  if (summary.bound_violations || summary.permutation_mismatches || summary.closure_violations)
    return kExitFalsified;
  if (summary.cache_error) return kExitIo;
  if (summary.inexact) return kExitBudget;
  return kExitOk;
}

ScanResult run_scan(const ScanConfig& config) {
  const auto rings = enumerate_rings(config);
  ScanResult result;
  result.rows.resize(rings.size());

  std::optional<ResultCache> cache;
  if (config.cache_path) {
    cache.emplace(*config.cache_path);
    if (cache->warning()) result.summary.cache_warning = cache->warning();
  }

  ReportOptions options;
  options.search.node_budget = config.node_budget;
  options.search.check_downward_closure = config.check_downward_closure;
  options.partial_on_budget = true;

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    if (cache && !config.check_downward_closure) {
      if (auto hit = cache->lookup(rings[i])) {
        result.rows[i].report = std::move(*hit);
        result.rows[i].from_cache = true;
        continue;
      }
    }
    todo.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < todo.size(); k = next++) {
      auto& row = result.rows[todo[k]];
      const auto& ring = rings[todo[k]];
      row.report = davenport_semigroup(ring, options);
      if (config.check_permutations && ring.rank() > 1 && row.report.exact) {
        auto reversed = std::vector<std::uint64_t>(ring.moduli().rbegin(), ring.moduli().rend());
        const auto other = davenport_semigroup(RingSpec(reversed), options);
        row.permutation_consistent = other.exact ? std::optional<bool>(
                                                       other.d_semigroup == row.report.d_semigroup &&
                                                       other.d_units == row.report.d_units)
                                                 : std::nullopt;
      }
    }
  };
  const unsigned workers = std::max(1U, config.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  auto& s = result.summary;
  s.rings = rings.size();
  for (auto& row : result.rows) {
    const auto& r = row.report;
    if (row.from_cache) ++s.cache_hits;
    s.closure_checks += r.stats.closure_checks;
    s.closure_violations += r.stats.closure_violations;
    if (!r.exact) {
      ++s.inexact;
      continue;
    }
    if (!r.bounds_ok()) {
      ++s.bound_violations;
      s.findings.push_back("bounds violated for " + r.ring.to_string());
    }
    if (!r.conjecture_ok()) {
      ++s.conjecture_findings;
      s.findings.push_back("conjecture bound exceeded for " + r.ring.to_string() + " (gap " +
                           std::to_string(r.gap()) + " > " +
                           std::to_string(r.invariants.conj_bound) + ")");
    }
    if (row.permutation_consistent == false) {
      ++s.permutation_mismatches;
      s.findings.push_back("permutation changed D for " + r.ring.to_string());
    }
    if (cache && !row.from_cache && r.exact) cache->store(r);
  }
  if (cache) {
    try {
      cache->save();
    } catch (const std::exception& e) {
      s.cache_error = e.what();
    }
  }
  return result;
}

std::string render_csv(const ScanResult& result) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : result.rows) out += csv_row(row.report) + "\n";
  return out;
}

std::string render_summary(const ScanResult& result) {
  const auto& s = result.summary;
  std::ostringstream os;
  os << "rings scanned: " << s.rings << " (cache hits " << s.cache_hits << ")\n";
  os << "bound violations: " << s.bound_violations << "\n";
  os << "conjecture findings (observational): " << s.conjecture_findings << "\n";
  os << "inexact (budget): " << s.inexact << "\n";
  if (s.closure_checks) {
    os << "downward-closure checks: " << s.closure_checks << ", violations "
       << s.closure_violations << "\n";
  }
  if (s.permutation_mismatches) os << "permutation mismatches: " << s.permutation_mismatches << "\n";
  std::map<long long, std::size_t> gaps;
  for (const auto& row : result.rows)
    if (row.report.exact) ++gaps[row.report.gap()];
  os << "gap histogram:";
  for (auto [g, c] : gaps) os << ' ' << g << ':' << c;
  os << '\n';
  for (const auto& f : s.findings) os << "finding: " << f << '\n';
  if (s.cache_warning) os << "warning: " << *s.cache_warning << '\n';
  if (s.cache_error) os << "cache error: " << *s.cache_error << '\n';
  return os.str();
}

}  // namespace davenport::harness
