// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criterion 9 is observational and never fails the run.

#include "davenport/harness.hpp"
#include "davenport/proof.hpp"
#include "davenport/search.hpp"
#include "davenport/verify.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

using namespace davenport;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, const std::string& title, bool ok, const std::string& detail,
            bool observational = false) {
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : (observational ? "NOTE" : "FAIL"), id,
              title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok && !observational) ++failures;
}

oracle::Ring as_oracle(const RingSpec& r) {
  return {std::vector<std::uint64_t>(r.moduli().begin(), r.moduli().end())};
}

std::string fmt_time(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

// Closure statistics gathered during criteria 1-3.
SearchStats closure_stats;

ReportOptions closure_options(unsigned workers = 1) {
  ReportOptions o;
  o.search.check_downward_closure = true;
  o.search.workers = workers;
  return o;
}

std::vector<RingSpec> criterion1_rings() {
  std::vector<RingSpec> out;
  for (std::uint64_t n : {2, 4, 6, 8, 9, 12}) out.emplace_back(std::vector<std::uint64_t>{n});
  return out;
}

const std::vector<std::array<std::size_t, 3>> kTightTriples{
    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {0, 1, 1}};

void criterion1() {
  const auto start = Clock::now();
  const std::map<std::uint64_t, std::size_t> expected{{2, 2}, {4, 3}, {6, 3}, {8, 4}, {12, 4}};
  bool ok = true;
  std::ostringstream detail;
  for (const auto& r : criterion1_rings()) {
    const auto rep = davenport_semigroup(r, closure_options());
    closure_stats += rep.stats;
    const auto naive = oracle::davenport_semigroup(as_oracle(r));
    const auto naive_units = oracle::davenport_units(as_oracle(r));
    const auto n = r.modulus(0);
    bool row = rep.exact && rep.d_semigroup == naive.d && rep.d_units == naive_units.d;
    if (n == 9) row = row && rep.d_semigroup == rep.d_units;
    else row = row && rep.d_semigroup == expected.at(n);
    ok = ok && row;
    detail << "Z_" << n << "=" << rep.d_semigroup << (row ? "" : "!") << ' ';
  }
  // The retracted equality D = D(U) + P2 must fail on Z_4 (3 > 2 + 0).
  const auto z4 = davenport_semigroup(RingSpec({4}));
  const bool correction = !z4.retracted_equality_holds() && z4.d_semigroup == 3 &&
                          z4.lower_bound() == 2;
  ok = ok && correction;
  detail << "| Z_4 retracted equality " << (correction ? "fails as expected" : "UNEXPECTED");
  const double t = seconds_since(start);
  ok = ok && t < 60;
  detail << " | " << fmt_time(t) << " (limit 60s)";
  report(1, "exact values vs naive oracle", ok, detail.str());
}

void criterion2() {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  double slowest = 0;
  for (auto [r1, r2, r3] : kTightTriples) {
    const auto one = Clock::now();
    const auto w = tight_family_witness(r1, r2, r3);
    const auto rep = davenport_semigroup(w.ring, closure_options());
    closure_stats += rep.stats;
    const std::size_t len = 3 * r1 + 2 * r2 + r3;
    const bool row = rep.exact && rep.d_semigroup == rep.d_units + rep.invariants.delta &&
                     rep.d_units == 2 * r1 + r2 + 1 && w.witness.size() == len &&
                     w.irreducible.value_or(false) && !is_reducible(w.ring, w.witness) &&
                     rep.d_semigroup == len + 1;
    ok = ok && row;
    slowest = std::max(slowest, seconds_since(one));
    detail << "Z_" << w.ring.to_string() << ":D=" << rep.d_semigroup << ",DU=" << rep.d_units
           << (row ? "" : "!") << ' ';
  }
  ok = ok && slowest < 300;
  detail << "| slowest " << fmt_time(slowest) << " (limit 300s), total "
         << fmt_time(seconds_since(start));
  report(2, "tight family D = D(U) + delta", ok, detail.str());
}

harness::ScanResult scan36;

void criterion3() {
  const auto start = Clock::now();
  harness::ScanConfig config;
  config.max_order = 36;
  config.max_rank = 2;
  config.check_downward_closure = true;
  config.check_permutations = true;
  config.workers = std::max(1U, std::thread::hardware_concurrency());
  scan36 = harness::run_scan(config);
  for (const auto& row : scan36.rows) closure_stats += row.report.stats;
  const auto& s = scan36.summary;
  const double t = seconds_since(start);
  const bool ok = s.rings > 0 && s.bound_violations == 0 && s.inexact == 0 &&
                  s.permutation_mismatches == 0 && t < 1800;
  std::ostringstream detail;
  detail << s.rings << " rings, " << s.bound_violations << " bound violations, " << s.inexact
         << " inexact, " << s.permutation_mismatches << " permutation mismatches | "
         << fmt_time(t) << " (limit 1800s)";
  report(3, "bounds on rank <= 2, |S_R| <= 36 scan", ok, detail.str());
}

void criterion4() {
  const auto start = Clock::now();
  std::size_t rings = 0;
  std::uint64_t pairs = 0, separated = 0, violations = 0;
  std::string first_failure;
  std::function<void(std::vector<std::uint64_t>&, std::uint64_t, std::uint64_t)> rec =
      [&](std::vector<std::uint64_t>& cur, std::uint64_t lo, std::uint64_t order) {
        if (!cur.empty()) {
          const auto res = verify::lemma2_suite(RingSpec(cur));
          ++rings;
          for (const auto& c : res.checks) {
            violations += c.violations;
            if (!c.passed() && first_failure.empty())
              first_failure = res.subject + " " + c.name + " " + c.counterexample.value_or("");
            if (c.name == "leq_H_matches_definition") pairs += c.checked;
            if (c.name == "separating_unit") separated += c.checked;
          }
        }
        for (std::uint64_t m = lo; order * m <= 36; ++m) {
          cur.push_back(m);
          rec(cur, m, order * m);
          cur.pop_back();
        }
      };
  std::vector<std::uint64_t> cur;
  rec(cur, 2, 1);
  std::ostringstream detail;
  detail << rings << " rings, " << pairs << " pairs, " << separated
         << " separating units verified, " << violations << " violations";
  if (!first_failure.empty()) detail << " (first: " << first_failure << ")";
  detail << " | " << fmt_time(seconds_since(start));
  report(4, "Green structure suite, |S_R| <= 36", violations == 0 && separated > 0, detail.str());
}

void criterion5() {
  const auto start = Clock::now();
  verify::GroupDavenportMemo memo;
  std::size_t groups = 0;
  std::uint64_t subgroups = 0, violations = 0;
  std::string first_failure;
  for (const auto& g : verify::abelian_groups_up_to(24)) {
    const auto res = verify::lemma1_suite(g, memo);
    ++groups;
    for (const auto& c : res.checks) {
      subgroups += c.checked;
      violations += c.violations;
      if (!c.passed() && first_failure.empty())
        first_failure = res.subject + " " + c.counterexample.value_or("");
    }
  }
  std::ostringstream detail;
  detail << groups << " groups, " << subgroups << " cyclic subgroups, " << violations
         << " violations";
  if (!first_failure.empty()) detail << " (first: " << first_failure << ")";
  detail << " | " << fmt_time(seconds_since(start));
  report(5, "D(G) >= D(G/H) + D(H) - 1, |G| <= 24", violations == 0 && groups == 37,
         detail.str());
}

void criterion6() {
  const auto start = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  for (std::uint64_t n : {4, 6, 8}) {
    const RingSpec r({n});
    const auto rep = davenport_semigroup(r);
    std::uint64_t expected = 1;
    for (std::size_t i = 0; i < rep.d_units + rep.invariants.delta; ++i) expected *= n;
    const auto res = verify::reduce_suite(r, expected, 0);
    bool row = res.passed();
    for (const auto& c : res.checks) row = row && c.checked == expected;
    ok = ok && row;
    detail << "Z_" << n << ":" << expected << (row ? "" : "!") << ' ';
  }
  detail << "sequences | " << fmt_time(seconds_since(start));
  report(6, "reduce_sequence on every sequence of length D(U)+delta", ok, detail.str());
}

void criterion7() {
  const auto start = Clock::now();
  const RingSpec r({12});
  const auto o = as_oracle(r);
  const auto elems = all_elements(r);
  std::uint64_t sequences = 0, mismatches = 0;
  // Every ordered tuple, extended term by term in the given order.
  std::vector<Element> terms;
  std::function<void(const SubsumState&)> dfs = [&](const SubsumState& state) {
    std::vector<oracle::Tuple> naive_terms;
    for (const auto& a : terms) naive_terms.push_back(a.residues);
    std::vector<oracle::Tuple> sums;
    for (auto i : state.proper_sums()) sums.push_back(element_at(r, i).residues);
    std::sort(sums.begin(), sums.end());
    ++sequences;
    if (sums != oracle::proper_products(o, naive_terms) ||
        state.reducible() != oracle::reducible(o, naive_terms) ||
        is_reducible(r, Sequence(r, terms)) != state.reducible())
      ++mismatches;
    if (terms.size() == 5) return;
    for (const auto& a : elems) {
      terms.push_back(a);
      dfs(extend_subsums(r, state, a));
      terms.pop_back();
    }
  };
  dfs(empty_subsums(r));
  const double t = seconds_since(start);
  std::ostringstream detail;
  detail << sequences << " ordered sequences over Z_12, " << mismatches << " mismatches | "
         << fmt_time(t) << " (limit 60s)";
  report(7, "SubsumState vs naive enumeration", mismatches == 0 && t < 60, detail.str());
}

void criterion8() {
  std::ostringstream detail;
  detail << closure_stats.closure_checks << " deletions checked during criteria 1-3, "
         << closure_stats.closure_violations << " violations";
  report(8, "downward closure", closure_stats.closure_checks > 0 &&
                                    closure_stats.closure_violations == 0,
         detail.str());
}

void criterion9() {
  const char* path = "acceptance_gap_table.csv";
  std::ofstream(path) << harness::render_csv(scan36);
  std::map<long long, std::size_t> histogram;
  std::size_t within = 0;
  for (const auto& row : scan36.rows) {
    ++histogram[row.report.gap()];
    within += row.report.conjecture_ok();
  }
  std::ostringstream detail;
  detail << "gap <= #{pot_2(n_i) in [1,3]} on " << within << "/" << scan36.rows.size()
         << " rings, " << scan36.summary.conjecture_findings << " findings; gaps";
  for (auto [gap, count] : histogram) detail << ' ' << gap << ":" << count;
  detail << "; table in " << path;
  report(9, "conjecture table (observational)", scan36.summary.conjecture_findings == 0,
         detail.str(), true);
}

void criterion10() {
  const auto start = Clock::now();
  std::vector<RingSpec> rings = criterion1_rings();
  for (auto [r1, r2, r3] : kTightTriples) rings.push_back(tight_family_witness(r1, r2, r3).ring);
  std::size_t mismatches = 0;
  for (const auto& r : rings) {
    std::string base;
    for (unsigned w : {1U, 2U, 8U}) {
      ReportOptions o;
      o.search.workers = w;
      const auto text = harness::report_to_json_without_timing(davenport_semigroup(r, o)).dump();
      if (w == 1) base = text;
      else if (text != base) ++mismatches;
    }
  }
  std::ostringstream detail;
  detail << rings.size() << " rings x workers {1,2,8}, " << mismatches << " differing reports | "
         << fmt_time(seconds_since(start));
  report(10, "determinism across worker counts", mismatches == 0, detail.str());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3,
                                                    criterion4, criterion5, criterion6,
                                                    criterion7, criterion8, criterion9,
                                                    criterion10};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
    }
  }
  std::printf("acceptance: %s (%d failing)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
