#pragma once

// Report serialization (JSON for single rings, CSV for scans), the persistent
// result cache and ring-family scans.

#include "davenport/proof.hpp"
#include "davenport/search.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace davenport::harness {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCacheDirEnv = "DAVENPORT_CACHE_DIR";
inline constexpr const char* kCacheFileName = "davenport-cache.json";

enum ExitCode : int {
  kExitOk = 0,
  kExitFalsified = 1,
  kExitUsage = 2,
  kExitBudget = 3,
  kExitIo = 4,
};

/// "a,b,c" -> {a, b, c}; every entry must be an integer >= 2.
std::vector<std::uint64_t> parse_moduli(std::string_view text);

/// Fixed schema: moduli, D_semigroup, D_units, P2, delta, conj_bound, gap,
/// bounds_ok, conjecture_ok, witness (theta tuples), stats{nodes, millis}, exact.
nlohmann::json report_to_json(const DavenportReport& report);
nlohmann::json report_to_json_without_timing(const DavenportReport& report);

/// Fields outside the public schema that the cache needs for a faithful reload.
nlohmann::json report_detail_json(const DavenportReport& report);
DavenportReport report_from_json(const nlohmann::json& schema, const nlohmann::json& detail);

nlohmann::json sequence_theta_json(const RingSpec& ring, const Sequence& t);
nlohmann::json sequence_zero_based_json(const Sequence& t);
Sequence sequence_from_theta_json(const RingSpec& ring, const nlohmann::json& tuples);
nlohmann::json trace_to_json(const RingSpec& ring, const ReductionTrace& trace);

inline constexpr const char* kCsvHeader =
    "moduli,D,DU,P2,delta,gap,conj_bound,bounds_ok,conj_ok,exact";
std::string csv_row(const DavenportReport& report);

/// Canonical cache key: sorted moduli joined by commas.
std::string cache_key(const RingSpec& ring);

/// Single JSON document { key: {tool_version, timestamp, report, detail} }.
/// Writes go through save(); callers serialize access (single writer).
class ResultCache {
public:
  ResultCache(std::filesystem::path path, std::string tool_version = kToolVersion);

  std::optional<DavenportReport> lookup(const RingSpec& ring) const;
  void store(const DavenportReport& report);

  /// Throws std::runtime_error when the file cannot be written.
  void save() const;

  const std::filesystem::path& path() const noexcept { return path_; }
  /// Set when an unreadable cache file was discarded on load.
  const std::optional<std::string>& warning() const noexcept { return warning_; }

private:
  std::filesystem::path path_;
  std::string version_;
  nlohmann::json doc_;
  std::optional<std::string> warning_;
};

std::optional<std::filesystem::path> default_cache_path();

enum class Parity { kAny, kEven, kOdd };

struct ScanConfig {
  std::uint64_t max_order = 16;
  std::uint64_t min_order = 2;
  std::size_t max_rank = 1;
  Parity parity = Parity::kAny;  // applied to every modulus
  bool prime_power_only = false;
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned workers = 1;
  bool check_downward_closure = false;
  bool check_permutations = false;
  std::optional<std::filesystem::path> cache_path;
};

void validate(const ScanConfig& config);

/// Sorted moduli tuples within the limits, by rank then lexicographically.
std::vector<RingSpec> enumerate_rings(const ScanConfig& config);

struct ScanRow {
  DavenportReport report;
  bool from_cache = false;
  std::optional<bool> permutation_consistent;
};

struct ScanSummary {
  std::size_t rings = 0;
  std::size_t bound_violations = 0;
  std::size_t conjecture_findings = 0;
  std::size_t inexact = 0;
  std::size_t cache_hits = 0;
  std::size_t permutation_mismatches = 0;
  std::uint64_t closure_checks = 0;
  std::uint64_t closure_violations = 0;
  std::optional<std::string> cache_error;
  std::optional<std::string> cache_warning;
  std::vector<std::string> findings;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
  int exit_code() const;
};

/// Ring-level parallel campaign; rows come back in enumeration order.
ScanResult run_scan(const ScanConfig& config);

std::string render_csv(const ScanResult& result);
std::string render_summary(const ScanResult& result);

}  // namespace davenport::harness
