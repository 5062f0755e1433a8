#include "davenport/search.hpp"

#include "davenport/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

namespace davenport {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t millis_since(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

struct SharedSearch {
  const CayleyTable& table;
  std::span<const ElementIndex> ground;
  std::size_t cap;
  const SearchOptions& options;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  std::atomic<std::size_t> best_seen{0};  // monotone; only feeds the partial bound
};

struct BranchResult {
  std::size_t length = 0;
  std::vector<ElementIndex> witness;
  bool reached_cap = false;
  SearchStats stats;
};

class BranchSearch {
public:
  explicit BranchSearch(SharedSearch& shared)
      : shared_(shared), stack_(shared.cap + 1) {
    stack_[0] = SubsumState(shared.table.order(), shared.table.identity_index());
    current_.reserve(shared.cap);
  }

  BranchResult run(std::size_t first_position) {
    result_ = BranchResult{};
    current_.clear();
    const ElementIndex a = shared_.ground[first_position];
    if (!stack_[0].extension_reducible(shared_.table, a)) visit(1, first_position, a);
    flush();
    return std::move(result_);
  }

private:
  static constexpr std::uint64_t kFlushEvery = 1024;

  // Returns false once the branch must stop (cap reached or aborted).
  bool visit(std::size_t depth, std::size_t position, ElementIndex a) {
    const auto& table = shared_.table;
    stack_[depth].assign_extension(table, stack_[depth - 1], a);
    current_.push_back(a);
    ++result_.stats.nodes;
    if (++pending_ >= kFlushEvery && !flush()) {
      current_.pop_back();
      return false;
    }
    if (shared_.options.check_downward_closure) check_closure();

    if (depth > result_.length) {
      result_.length = depth;
      result_.witness = current_;
    }
    if (depth == shared_.cap) {
      result_.reached_cap = true;
      current_.pop_back();
      return false;
    }
    const auto& state = stack_[depth];
    for (std::size_t p = position; p < shared_.ground.size(); ++p) {
      const ElementIndex x = shared_.ground[p];
      if (state.extension_reducible(table, x)) continue;
      if (!visit(depth + 1, p, x)) {
        current_.pop_back();
        return false;
      }
    }
    current_.pop_back();
    return true;
  }

  bool flush() {
    const auto total = shared_.nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    auto seen = shared_.best_seen.load();
    while (result_.length > seen && !shared_.best_seen.compare_exchange_weak(seen, result_.length)) {
    }
    if (total > shared_.options.node_budget) shared_.abort = true;
    return !shared_.abort.load(std::memory_order_relaxed);
  }

  void check_closure() {
    const std::size_t len = current_.size();
    if (len < 2) return;
    scratch_.resize(len - 1);
    // Deleting the last term gives the (irreducible) parent; delete one copy of
    // every other distinct value.
    for (std::size_t j = 0; j + 1 < len; ++j) {
      if (current_[j] == current_[j + 1]) continue;
      std::copy(current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(j), scratch_.begin());
      std::copy(current_.begin() + static_cast<std::ptrdiff_t>(j) + 1, current_.end(),
                scratch_.begin() + static_cast<std::ptrdiff_t>(j));
      ++result_.stats.closure_checks;
      if (is_reducible_indices(shared_.table, std::span<const ElementIndex>(scratch_)))
        ++result_.stats.closure_violations;
    }
  }

  SharedSearch& shared_;
  std::vector<SubsumState> stack_;
  std::vector<ElementIndex> current_;
  std::vector<ElementIndex> scratch_;
  BranchResult result_;
  std::uint64_t pending_ = 0;
};

void validate_ground(const CayleyTable& table, std::span<const ElementIndex> ground) {
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (ground[i] >= table.order()) throw InvalidInput("ground element outside the table");
    if (i && ground[i] <= ground[i - 1]) throw InvalidInput("ground set must be sorted and distinct");
  }
}

}  // namespace

LongestIrreducible longest_irreducible(const CayleyTable& table,
                                       std::span<const ElementIndex> ground, std::size_t cap,
                                       const SearchOptions& options) {
  validate_ground(table, ground);
  const auto start = Clock::now();
  LongestIrreducible out;
  out.stats.nodes = 1;  // the empty sequence
  if (cap == 0) {
    out.cap_limited = true;
    return out;
  }

  SharedSearch shared{table, ground, cap, options};
  std::vector<BranchResult> branches(ground.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(options.workers,
                                                          static_cast<unsigned>(ground.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    BranchSearch search(shared);
    for (std::size_t b = next++; b < ground.size(); b = next++) {
      if (shared.abort) break;
      branches[b] = search.run(b);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  if (shared.abort || shared.nodes.load() > options.node_budget) {
    throw ResourceLimit("search node budget of " + std::to_string(options.node_budget) +
                            " exceeded",
                        shared.best_seen.load());
  }

  // Branches are in canonical order of their first term, so the first branch
  // attaining the maximum holds the lexicographically least witness.
  for (auto& b : branches) {
    out.stats += b.stats;
    if (b.length > out.length) {
      out.length = b.length;
      out.witness = std::move(b.witness);
    }
  }
  out.cap_limited = out.length == cap;
  out.stats.millis = millis_since(start);
  return out;
}

RingSearchResult longest_irreducible(std::span<const Element> ground, const RingSpec& ring,
                                     std::size_t cap, const SearchOptions& options) {
  const auto table = semigroup_table(ring);
  std::vector<ElementIndex> idx;
  idx.reserve(ground.size());
  for (const auto& a : ground) {
    check_element(ring, a);
    idx.push_back(static_cast<ElementIndex>(element_index(ring, a)));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  auto r = longest_irreducible(table, idx, cap, options);
  return {r.length, from_indices(ring, r.witness), r.cap_limited, r.stats};
}

namespace {

std::vector<ElementIndex> unit_indices(const RingSpec& ring) {
  std::vector<ElementIndex> out;
  for (std::uint64_t i = 0; i < ring.order(); ++i)
    if (is_unit(ring, element_at(ring, i))) out.push_back(static_cast<ElementIndex>(i));
  return out;
}

}  // namespace

RingSearchResult unit_group_search(const RingSpec& ring, const ReportOptions& options) {
  const auto table = semigroup_table(ring, options.order_cap);
  const auto ground = unit_indices(ring);
  auto r = longest_irreducible(table, ground, ground.size(), options.search);
  return {r.length, from_indices(ring, r.witness), r.cap_limited, r.stats};
}

DavenportReport davenport_semigroup(const RingSpec& ring, const ReportOptions& options) {
  const auto start = Clock::now();
  const auto table = semigroup_table(ring, options.order_cap);

  DavenportReport report;
  report.ring = ring;
  report.invariants = ring_invariants(ring);

  auto inexact = [&](const ResourceLimit& e, bool in_unit_search) -> DavenportReport& {
    if (!options.partial_on_budget) throw e;
    report.exact = false;
    if (in_unit_search) report.d_units = e.partial_lower_bound() + 1;
    // Unit sequences are semigroup sequences too.
    report.d_semigroup = std::max(report.d_units, e.partial_lower_bound() + 1);
    report.stats.millis = millis_since(start);
    return report;
  };

  const auto unit_ground = unit_indices(ring);
  LongestIrreducible unit_run;
  try {
    // D(G) <= |G|, so a cap of |U| is never binding.
    unit_run = longest_irreducible(table, unit_ground, unit_ground.size(), options.search);
  } catch (const ResourceLimit& e) {
    return inexact(e, true);
  }
  report.d_units = unit_run.length + 1;
  report.unit_witness = from_indices(ring, unit_run.witness);

  std::vector<ElementIndex> all(table.order());
  std::iota(all.begin(), all.end(), ElementIndex{0});
  if (options.theorem_cap) {
    report.search_cap = report.d_units + report.invariants.delta;
  } else {
    report.search_cap = table.order() + 1;
    report.cap_heuristic = true;
  }
  LongestIrreducible run;
  try {
    run = longest_irreducible(table, all, report.search_cap, options.search);
  } catch (const ResourceLimit& e) {
    report.stats = unit_run.stats;
    return inexact(e, false);
  }
  report.d_semigroup = run.length + 1;
  report.witness = from_indices(ring, run.witness);
  report.cap_hit = run.cap_limited;

  report.stats = unit_run.stats;
  report.stats += run.stats;
  report.stats.millis = millis_since(start);
  return report;
}

std::size_t davenport_of_table(const CayleyTable& group, const SearchOptions& options,
                               SearchStats* stats) {
  std::vector<ElementIndex> all(group.order());
  std::iota(all.begin(), all.end(), ElementIndex{0});
  auto r = longest_irreducible(group, all, group.order(), options);
  if (stats) *stats += r.stats;
  return r.length + 1;
}

std::size_t davenport_group(const AbelianGroupSpec& group, const SearchOptions& options) {
  return davenport_of_table(group_table(group), options);
}

std::size_t davenport_lower_formula(const AbelianGroupSpec& group) {
  std::size_t d = 1;
  for (std::size_t j = 0; j < group.factors.size(); ++j) {
    const auto f = group.factors[j];
    if (f < 2) throw InvalidInput("invariant factors must be >= 2");
    if (j && f % group.factors[j - 1] != 0)
      throw InvalidInput("factors are not in invariant-factor form (d_1 | d_2 | ...)");
    d += f - 1;
  }
  return d;
}

Lemma1Result lemma1_check(const AbelianGroupSpec& group,
                          const std::vector<std::vector<std::uint64_t>>& generators,
                          const SearchOptions& options) {
  const auto table = group_table(group);
  std::vector<ElementIndex> gens;
  for (const auto& g : generators) gens.push_back(static_cast<ElementIndex>(group_index(group, g)));
  const auto subgroup = subgroup_closure(table, gens);

  Lemma1Result r;
  r.subgroup_order = subgroup.size();
  r.d_group = davenport_of_table(table, options);
  r.d_subgroup = davenport_of_table(restrict_table(table, subgroup), options);
  r.d_quotient = davenport_of_table(quotient_table(table, subgroup), options);
  r.holds = r.d_group + 1 >= r.d_quotient + r.d_subgroup;
  return r;
}

}  // namespace davenport
