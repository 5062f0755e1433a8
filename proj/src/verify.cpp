#include "davenport/verify.hpp"

#include "davenport/errors.hpp"
#include "davenport/green.hpp"
#include "davenport/proof.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace davenport::verify {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
}

CheckOutcome& SuiteResult::check(const std::string& name) {
  for (auto& c : checks)
    if (c.name == name) return c;
  checks.emplace_back();
  checks.back().name = name;
  return checks.back();
}

nlohmann::json to_json(const SuiteResult& result) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) {
    nlohmann::json j{{"name", c.name}, {"checked", c.checked}, {"violations", c.violations}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    checks.push_back(std::move(j));
  }
  return {{"suite", result.suite},
          {"subject", result.subject},
          {"passed", result.passed()},
          {"checks", checks},
          {"notes", result.notes}};
}

std::string render(const SuiteResult& result) {
  std::ostringstream os;
  for (const auto& c : result.checks) {
    os << (c.passed() ? "PASS " : "FAIL ") << result.suite << '/' << c.name << " [" << result.subject
       << "] checked=" << c.checked << " violations=" << c.violations << '\n';
    if (c.counterexample) os << "  counterexample: " << *c.counterexample << '\n';
  }
  for (const auto& n : result.notes) os << "note: " << n << '\n';
  return os.str();
}

// ---------------------------------------------------------------- Green structure

SuiteResult lemma2_suite(const RingSpec& ring) {
  SuiteResult out{"lemma2", ring.to_string(), {}, {}};
  const auto elements = all_elements(ring);
  std::vector<GcdProfile> profiles;
  std::vector<StabilizerSubgroup> stabilizers;
  for (const auto& e : elements) {
    profiles.push_back(gcd_profile(ring, e));
    stabilizers.push_back(stabilizer(ring, e));
  }
  auto pair_text = [&](std::size_t i, std::size_t j) {
    return "ring=" + ring.to_string() + " a=" + format_element(ring, elements[i]) +
           " b=" + format_element(ring, elements[j]);
  };

  const std::size_t n = elements.size();
  std::vector<std::vector<char>> definitional(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      definitional[i][j] = leq_H_definitional(ring, elements[i], elements[j]);

  std::uint64_t strict_without_site = 0, strict_without_site_but_separated = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = elements[i];
      const auto& b = elements[j];
      const bool def = definitional[i][j];

      auto& oracle = out.check("leq_H_matches_definition");
      ++oracle.checked;
      if (leq_H(ring, a, b) != def) oracle.fail(pair_text(i, j));

      if (def) {
        auto& inclusion = out.check("divisibility_and_stabilizer_inclusion");
        ++inclusion.checked;
        bool divides = true;
        for (std::size_t c = 0; c < ring.rank(); ++c)
          divides = divides && profiles[i].entries[c] % profiles[j].entries[c] == 0;
        if (!divides || !stabilizers[j].subset_of(stabilizers[i])) inclusion.fail(pair_text(i, j));
      }

      auto& equivalence = out.check("h_equiv_iff_equal_profiles");
      ++equivalence.checked;
      const bool mutual = def && definitional[j][i];
      if (h_equiv(ring, a, b) != mutual || mutual != (profiles[i] == profiles[j]))
        equivalence.fail(pair_text(i, j));

      if (!strictly_below(ring, a, b)) continue;
      const bool strict_stabilizers = stabilizers[j].order() < stabilizers[i].order();
      if (!separation_site(ring, a, b)) {
        ++strict_without_site;
        if (strict_stabilizers) ++strict_without_site_but_separated;
        continue;
      }
      auto& separation = out.check("separating_unit");
      ++separation.checked;
      try {
        const auto d = separating_unit(ring, a, b);
        const bool ok = is_unit(ring, d) && mul(ring, d, a) == a && mul(ring, d, b) != b &&
                        stabilizers[i].contains(d) && !stabilizers[j].contains(d) &&
                        stabilizers[j].subset_of(stabilizers[i]) && strict_stabilizers;
        if (!ok) separation.fail(pair_text(i, j) + " d=" + format_element(ring, d));
      } catch (const std::exception& e) {
        separation.fail(pair_text(i, j) + " error=" + e.what());
      }
    }
  }
  out.check("separating_unit");  // present even when no pair qualifies

  // H-classes partition S_R; the class of the identity is U(S_R).
  auto& classes = out.check("h_classes");
  std::set<std::vector<std::uint64_t>> distinct;
  for (const auto& p : profiles) distinct.insert(p.entries);
  std::size_t expected = 1;
  for (auto m : ring.moduli()) expected *= divisor_count(m);
  ++classes.checked;
  if (distinct.size() != expected)
    classes.fail("ring=" + ring.to_string() + " classes=" + std::to_string(distinct.size()) +
                 " expected=" + std::to_string(expected));
  const auto id_profile = gcd_profile(ring, identity(ring));
  std::vector<Element> id_class;
  for (std::size_t i = 0; i < n; ++i)
    if (profiles[i] == id_profile) id_class.push_back(elements[i]);
  ++classes.checked;
  if (id_class != units(ring)) classes.fail("ring=" + ring.to_string() + " identity class != units");

  out.notes.push_back(std::to_string(strict_without_site) +
                      " strictly-below pairs lack the separation hypothesis; " +
                      std::to_string(strict_without_site_but_separated) +
                      " of them still have strictly smaller stabilizer (observed, not inferred)");
  return out;
}

// ---------------------------------------------------------------- groups

std::size_t GroupDavenportMemo::get(const CayleyTable& group, const SearchOptions& options) {
  auto key = element_order_signature(group);
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  const auto d = davenport_of_table(group, options);
  values_.emplace(std::move(key), d);
  return d;
}

SuiteResult lemma1_suite(const AbelianGroupSpec& group, GroupDavenportMemo& memo,
                         const SearchOptions& options) {
  std::ostringstream subject;
  subject << "C[";
  for (std::size_t j = 0; j < group.factors.size(); ++j) subject << (j ? "," : "") << group.factors[j];
  subject << "]";
  SuiteResult out{"lemma1", subject.str(), {}, {}};

  const auto table = group_table(group);
  const auto d_group = memo.get(table, options);
  std::set<std::vector<ElementIndex>> seen;
  auto& check = out.check("quotient_inequality");
  for (std::size_t g = 0; g < table.order(); ++g) {
    const ElementIndex gen = static_cast<ElementIndex>(g);
    auto h = subgroup_closure(table, std::span<const ElementIndex>(&gen, 1));
    if (!seen.insert(h).second) continue;
    const auto d_sub = memo.get(restrict_table(table, h), options);
    const auto d_quot = memo.get(quotient_table(table, h), options);
    ++check.checked;
    if (d_group + 1 < d_quot + d_sub)
      check.fail(out.subject + " H=<" + std::to_string(g) + "> D(G)=" + std::to_string(d_group) +
                 " D(G/H)=" + std::to_string(d_quot) + " D(H)=" + std::to_string(d_sub));
  }
  return out;
}

std::vector<AbelianGroupSpec> abelian_groups_up_to(std::uint64_t max_order) {
  std::vector<AbelianGroupSpec> out{AbelianGroupSpec{}};
  std::vector<std::uint64_t> factors;
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t prev, std::uint64_t order) {
    for (std::uint64_t d = prev; order * d <= max_order; d += prev) {
      if (d < 2) continue;
      factors.push_back(d);
      out.push_back(AbelianGroupSpec{factors});
      rec(d, order * d);
      factors.pop_back();
    }
  };
  rec(1, 1);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.order() < b.order(); });
  return out;
}

// ---------------------------------------------------------------- proof suites

namespace {

std::uint64_t multiset_count(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
  // C(n + k - 1, k), saturated at limit + 1.
  long double c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n + i - 1) / static_cast<long double>(i);
    if (c > static_cast<long double>(limit)) return limit + 1;
  }
  return static_cast<std::uint64_t>(c + 0.5L);
}

// Calls f on every non-decreasing index tuple of length k over [0, n).
void for_each_multiset(std::size_t n, std::size_t k,
                       const std::function<void(const std::vector<ElementIndex>&)>& f) {
  std::vector<ElementIndex> cur(k, 0);
  if (k == 0) {
    f(cur);
    return;
  }
  while (true) {
    f(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] + 1 == n) --i;
    if (i == 0) return;
    const ElementIndex v = cur[i - 1] + 1;
    for (std::size_t j = i - 1; j < k; ++j) cur[j] = v;
  }
}

}  // namespace

SuiteResult assertion_b_suite(const RingSpec& ring, std::uint64_t max_sequences,
                              std::uint64_t seed) {
  SuiteResult out{"assertionB", ring.to_string(), {}, {}};
  const auto d_units = unit_group_search(ring).length + 1;
  const std::size_t max_len = d_units + ring_invariants(ring).delta;
  const std::size_t n = ring.order();

  auto& nested = out.check("chain_nested");
  auto& strict = out.check("green_chain_strict");
  auto& bound = out.check("strict_growth_at_least_t_minus_delta");
  auto examine = [&](const std::vector<ElementIndex>& idx) {
    const auto t = from_indices(ring, idx);
    const auto v = shortest_H_prefix(ring, t);
    const auto chain = stabilizer_chain(ring, v);
    const auto text = "ring=" + ring.to_string() + " T=" + format_sequence(ring, t) +
                      " V=" + format_sequence(ring, v);
    ++nested.checked;
    ++strict.checked;
    ++bound.checked;
    if (!chain.nested) nested.fail(text);
    if (!chain.green_chain_strict) strict.fail(text);
    if (!chain.assertion_b()) bound.fail(text);
  };

  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= max_len; ++k) total += multiset_count(n, k, max_sequences);
  if (total <= max_sequences) {
    for (std::size_t k = 1; k <= max_len; ++k) for_each_multiset(n, k, examine);
    out.notes.push_back("exhaustive over " + std::to_string(total) + " multisets of length 1.." +
                        std::to_string(max_len));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(n - 1));
    std::vector<ElementIndex> idx;
    for (std::uint64_t s = 0; s < max_sequences; ++s) {
      idx.resize(len(rng));
      for (auto& x : idx) x = pick(rng);
      std::sort(idx.begin(), idx.end());
      examine(idx);
    }
    out.notes.push_back("sampled " + std::to_string(max_sequences) + " multisets (seed " +
                        std::to_string(seed) + ")");
  }
  return out;
}

SuiteResult reduce_suite(const RingSpec& ring, std::uint64_t max_sequences, std::uint64_t samples,
                         std::uint64_t seed) {
  SuiteResult out{"reduce", ring.to_string(), {}, {}};
  const auto d_units = unit_group_search(ring).length + 1;
  const std::size_t len = d_units + ring_invariants(ring).delta;
  const std::size_t n = ring.order();

  auto& valid = out.check("proper_equal_sum_subsequence");
  auto& chain_ok = out.check("trace_chain_nested_and_assertion_b");
  std::map<std::vector<ElementIndex>, bool> memo;
  auto examine = [&](std::vector<ElementIndex> idx) {
    std::sort(idx.begin(), idx.end());
    ++valid.checked;
    ++chain_ok.checked;
    if (auto it = memo.find(idx); it != memo.end()) {
      if (!it->second) {
        ++valid.violations;
        ++chain_ok.violations;
      }
      return;
    }
    const auto t = from_indices(ring, idx);
    const auto text = "ring=" + ring.to_string() + " T=" + format_sequence(ring, t);
    bool ok = true;
    try {
      const auto [reduced, trace] = reduce_sequence(ring, t, d_units);
      if (!(reduced.divides(t) && reduced.size() < t.size() && sigma(ring, reduced) == sigma(ring, t))) {
        valid.fail(text + " T'=" + format_sequence(ring, reduced));
        ok = false;
      }
      if (!trace.chain.nested || !trace.chain.assertion_b()) {
        chain_ok.fail(text);
        ok = false;
      }
    } catch (const Falsification& e) {
      valid.fail(text + " " + e.what() + ": " + e.counterexample());
      chain_ok.fail(text);
      ok = false;
    }
    memo.emplace(std::move(idx), ok);
  };

  long double tuples = 1;
  for (std::size_t i = 0; i < len; ++i) tuples *= static_cast<long double>(n);
  if (tuples <= static_cast<long double>(max_sequences)) {
    std::vector<ElementIndex> cur(len, 0);
    while (true) {
      examine(cur);
      std::size_t i = len;
      while (i > 0 && cur[i - 1] + 1 == n) cur[--i] = 0;
      if (i == 0) break;
      ++cur[i - 1];
    }
    out.notes.push_back("exhaustive over " + std::to_string(valid.checked) + " ordered sequences (" +
                        std::to_string(memo.size()) + " distinct multisets) of length " +
                        std::to_string(len));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<ElementIndex> pick(0, static_cast<ElementIndex>(n - 1));
    std::vector<ElementIndex> idx(len);
    for (std::uint64_t s = 0; s < samples; ++s) {
      for (auto& x : idx) x = pick(rng);
      examine(idx);
    }
    out.notes.push_back("sampled " + std::to_string(samples) + " sequences of length " +
                        std::to_string(len) + " (seed " + std::to_string(seed) + ")");
  }
  return out;
}

}  // namespace davenport::verify
