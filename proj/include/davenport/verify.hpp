#pragma once

// Exhaustive property suites behind `davenport verify`.

#include "davenport/monoid.hpp"
#include "davenport/ring.hpp"
#include "davenport/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace davenport::verify {

struct CheckOutcome {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::optional<std::string> counterexample;  // first violation

  bool passed() const { return violations == 0; }
  void fail(std::string example) {
    ++violations;
    if (!counterexample) counterexample = std::move(example);
  }
};

struct SuiteResult {
  std::string suite;
  std::string subject;
  std::deque<CheckOutcome> checks;  // stable references across check()
  std::vector<std::string> notes;  // observations that are not pass/fail

  bool passed() const;
  CheckOutcome& check(const std::string& name);
};

nlohmann::json to_json(const SuiteResult& result);
std::string render(const SuiteResult& result);

/// Green structure over all element pairs: criterion vs definitional preorder,
/// divisibility and stabilizer inclusion, H-classes, separating units.
SuiteResult lemma2_suite(const RingSpec& ring);

/// D keyed by the element-order signature of a group table.
class GroupDavenportMemo {
public:
  std::size_t get(const CayleyTable& group, const SearchOptions& options = {});

private:
  std::map<std::vector<std::size_t>, std::size_t> values_;
};

/// D(G) >= D(G/H) + D(H) - 1 for every cyclic subgroup H.
SuiteResult lemma1_suite(const AbelianGroupSpec& group, GroupDavenportMemo& memo,
                         const SearchOptions& options = {});

/// Every finite abelian group of order <= max_order in invariant-factor form,
/// the trivial group included.
std::vector<AbelianGroupSpec> abelian_groups_up_to(std::uint64_t max_order);

/// Stabilizer chain nesting, strict Green descent and |M| >= t - delta for the
/// shortest V of every sequence of length 1 .. D(U) + delta (sampled when the
/// number of multisets exceeds max_sequences).
SuiteResult assertion_b_suite(const RingSpec& ring, std::uint64_t max_sequences = 200'000,
                              std::uint64_t seed = 1);

/// reduce_sequence on every ordered tuple of length D(U) + delta (sampled
/// multisets when |S_R|^length exceeds max_sequences).
SuiteResult reduce_suite(const RingSpec& ring, std::uint64_t max_sequences = 100'000,
                         std::uint64_t samples = 10'000, std::uint64_t seed = 1);

}  // namespace davenport::verify
