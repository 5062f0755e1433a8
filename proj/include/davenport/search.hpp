#pragma once

// Exact Davenport constants by exhaustive search over canonically ordered
// (non-decreasing) sequences, extending only irreducible prefixes.
//
// Irreducible sequences are closed under taking sub-multisets, so every
// irreducible sequence is reached through irreducible prefixes. Each extension
// costs O(|proper sums|) via SubsumState.

#include "davenport/monoid.hpp"
#include "davenport/ring.hpp"
#include "davenport/sequence.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace davenport {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  unsigned workers = 1;
  // Re-check every single-term deletion of every irreducible sequence visited.
  bool check_downward_closure = false;
};

struct SearchStats {
  std::uint64_t nodes = 0;   // irreducible sequences visited, the empty one included
  std::uint64_t millis = 0;  // wall clock; excluded from determinism comparisons
  std::uint64_t closure_checks = 0;
  std::uint64_t closure_violations = 0;

  SearchStats& operator+=(const SearchStats& o) {
    nodes += o.nodes;
    millis += o.millis;
    closure_checks += o.closure_checks;
    closure_violations += o.closure_violations;
    return *this;
  }
};

struct LongestIrreducible {
  std::size_t length = 0;
  std::vector<ElementIndex> witness;  // lexicographically least of maximal length
  bool cap_limited = false;           // length == cap
  SearchStats stats;
};

/// Maximum length L <= cap of an irreducible sequence over `ground` (sorted,
/// distinct indices of `table`). Throws ResourceLimit once more than
/// options.node_budget nodes have been visited.
LongestIrreducible longest_irreducible(const CayleyTable& table,
                                       std::span<const ElementIndex> ground, std::size_t cap,
                                       const SearchOptions& options = {});

struct RingSearchResult {
  std::size_t length = 0;
  Sequence witness;
  bool cap_limited = false;
  SearchStats stats;
};

RingSearchResult longest_irreducible(std::span<const Element> ground, const RingSpec& ring,
                                     std::size_t cap, const SearchOptions& options = {});

struct ReportOptions {
  SearchOptions search;
  std::uint64_t order_cap = kDefaultSearchOrderCap;
  // Off: cap the semigroup search at |S_R| + 1 instead of D(U) + delta.
  bool theorem_cap = true;
  // On budget exhaustion return an inexact report holding lower bounds instead
  // of throwing ResourceLimit.
  bool partial_on_budget = false;
};

struct DavenportReport {
  RingSpec ring{std::vector<std::uint64_t>{2}};
  std::size_t d_semigroup = 0;  // D(S_R)
  std::size_t d_units = 0;      // D(U(S_R))
  RingInvariants invariants;
  Sequence witness;        // irreducible, |witness| = D(S_R) - 1
  Sequence unit_witness;   // irreducible over U(S_R), length D(U) - 1
  std::size_t search_cap = 0;
  bool cap_hit = false;    // an irreducible sequence reached the cap
  bool cap_heuristic = false;
  bool exact = true;
  SearchStats stats;

  std::size_t small_d() const { return d_semigroup - 1; }
  std::size_t lower_bound() const { return d_units + invariants.p2; }
  std::size_t upper_bound() const { return d_units + invariants.delta; }
  long long gap() const {
    return static_cast<long long>(d_semigroup) - static_cast<long long>(d_units);
  }
  bool lower_ok() const { return d_semigroup >= lower_bound(); }
  bool upper_ok() const { return !cap_hit && d_semigroup <= upper_bound(); }
  bool bounds_ok() const { return lower_ok() && upper_ok(); }
  bool conjecture_ok() const { return gap() <= static_cast<long long>(invariants.conj_bound); }
  // The retracted equality D(S_R) = D(U(S_R)) + P_2.
  bool retracted_equality_holds() const { return d_semigroup == lower_bound(); }
};

/// D(U(S_R)) alone, with its maximal unit witness.
RingSearchResult unit_group_search(const RingSpec& ring, const ReportOptions& options = {});

DavenportReport davenport_semigroup(const RingSpec& ring, const ReportOptions& options = {});

/// D of a finite group given by its table (cap |G|, since D(G) <= |G|).
std::size_t davenport_of_table(const CayleyTable& group, const SearchOptions& options = {},
                               SearchStats* stats = nullptr);

std::size_t davenport_group(const AbelianGroupSpec& group, const SearchOptions& options = {});

/// 1 + sum (d_j - 1); requires invariant-factor form d_1 | d_2 | ... | d_k.
std::size_t davenport_lower_formula(const AbelianGroupSpec& group);

struct Lemma1Result {
  std::size_t d_group = 0;
  std::size_t d_subgroup = 0;
  std::size_t d_quotient = 0;
  std::size_t subgroup_order = 0;
  bool holds = false;  // D(G) >= D(G/H) + D(H) - 1
};

/// H is the subgroup generated by the given element tuples.
Lemma1Result lemma1_check(const AbelianGroupSpec& group,
                          const std::vector<std::vector<std::uint64_t>>& generators,
                          const SearchOptions& options = {});

}  // namespace davenport
