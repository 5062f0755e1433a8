#include "davenport/proof.hpp"

#include "davenport/errors.hpp"
#include "davenport/search.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace davenport {

namespace {

// Sub-multisets of `t` with exactly k terms, in lexicographic order of their
// canonical listing. Stops when `visit` returns true; returns that subsequence.
std::optional<Sequence> first_submultiset(const Sequence& t, std::size_t k,
                                          const std::function<bool(const Sequence&)>& visit) {
  std::vector<Element> values;
  std::vector<std::size_t> counts;
  for (const auto& a : t.terms()) {
    if (values.empty() || values.back() != a) {
      values.push_back(a);
      counts.push_back(0);
    }
    ++counts.back();
  }
  std::vector<std::size_t> suffix(values.size() + 1, 0);
  for (std::size_t j = values.size(); j-- > 0;) suffix[j] = suffix[j + 1] + counts[j];

  std::vector<Element> chosen;
  std::optional<Sequence> found;
  // Taking more copies of an earlier value yields a lexicographically smaller
  // listing, so counts are tried in decreasing order.
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t left) {
    if (left == 0) {
      Sequence s;
      for (const auto& a : chosen) s.append(a);
      if (visit(s)) {
        found = std::move(s);
        return true;
      }
      return false;
    }
    if (j == values.size() || suffix[j] < left) return false;
    for (std::size_t c = std::min(counts[j], left) + 1; c-- > 0;) {
      for (std::size_t i = 0; i < c; ++i) chosen.push_back(values[j]);
      const bool stop = rec(j + 1, left - c);
      chosen.resize(chosen.size() - c);
      if (stop) return true;
    }
    return false;
  };
  rec(0, k);
  return found;
}

Element identity_with_two_at(const RingSpec& ring, std::size_t i) {
  Element b = identity(ring);
  b.residues[i] = 2 % ring.modulus(i);
  return b;
}

std::string describe(const RingSpec& ring, const Sequence& t) {
  return "ring=" + ring.to_string() + " T=" + format_sequence(ring, t);
}

}  // namespace

Sequence lower_bound_witness(const RingSpec& ring, const Sequence& units_seq, std::size_t d_units) {
  for (const auto& a : units_seq.terms()) {
    check_element(ring, a);
    if (!is_unit(ring, a)) throw PreconditionError("lower_bound_witness: A contains a non-unit");
  }
  if (units_seq.size() + 1 != d_units)
    throw PreconditionError("lower_bound_witness: |A| must equal D(U(S_R)) - 1");
  if (is_reducible(ring, units_seq)) throw PreconditionError("lower_bound_witness: A is reducible");

  Sequence b = units_seq;
  for (std::size_t i = 0; i < ring.rank(); ++i)
    if (pot(2, ring.modulus(i)) == 1) b.append(identity_with_two_at(ring, i));

  if (is_reducible(ring, b))
    throw Falsification("lower-bound witness B is reducible", describe(ring, b));
  return b;
}

Sequence lower_bound_witness(const RingSpec& ring, const Sequence& units_seq) {
  const auto unit_run = unit_group_search(ring);
  return lower_bound_witness(ring, units_seq, unit_run.length + 1);
}

Sequence shortest_H_prefix(const RingSpec& ring, const Sequence& t) {
  const auto target = gcd_profile(ring, sigma(ring, t));
  for (std::size_t k = 0; k <= t.size(); ++k) {
    auto v = first_submultiset(
        t, k, [&](const Sequence& s) { return gcd_profile(ring, sigma(ring, s)) == target; });
    if (v) return *v;
  }
  throw std::logic_error("shortest_H_prefix: T itself must qualify");
}

SaturatedPrimeSets saturated_primes(const RingSpec& ring, const Sequence& v) {
  const auto profile = gcd_profile(ring, sigma(ring, v));
  SaturatedPrimeSets sets;
  sets.per_coordinate.resize(ring.rank());
  for (std::size_t i = 0; i < ring.rank(); ++i)
    for (auto [p, e] : factorize(ring.modulus(i)))
      if (pot(p, profile.entries[i]) == e) sets.per_coordinate[i].push_back(p);
  return sets;
}

Element unit_lift(const RingSpec& ring, const Sequence& v, const Element& a) {
  check_element(ring, a);
  const auto sets = saturated_primes(ring, v);
  Element lifted = identity(ring);
  for (std::size_t i = 0; i < ring.rank(); ++i) {
    const auto& saturated = sets.per_coordinate[i];
    std::vector<Congruence> system;
    for (auto [p, e] : factorize(ring.modulus(i))) {
      const std::uint64_t pe = ipow(p, e);
      if (std::find(saturated.begin(), saturated.end(), p) != saturated.end()) {
        system.push_back({pe, 1});
      } else {
        if (a.residues[i] % p == 0)
          throw InvalidInput("unit_lift: prime " + std::to_string(p) + " divides coordinate " +
                             std::to_string(i) + " of " + format_element(ring, a) +
                             " but is not saturated by sigma(V)");
        system.push_back({pe, a.residues[i] % pe});
      }
    }
    lifted.residues[i] = crt_solve(system);
  }

  const auto s = sigma(ring, v);
  if (!is_unit(ring, lifted) || mul(ring, s, lifted) != mul(ring, s, a)) {
    throw Falsification("unit lift failed verification",
                        describe(ring, v) + " a=" + format_element(ring, a) +
                            " lift=" + format_element(ring, lifted));
  }
  return lifted;
}

StabilizerChain stabilizer_chain(const RingSpec& ring, const Sequence& v) {
  StabilizerChain chain;
  chain.t = v.size();
  chain.delta = ring_invariants(ring).delta;
  StabilizerCache cache(ring);
  Element acc = identity(ring);
  chain.prefix_products.push_back(acc);
  chain.subgroups.push_back(cache.get(acc));
  for (const auto& a : v.terms()) {
    const Element next = mul(ring, acc, a);
    if (!strictly_below(ring, next, acc)) chain.green_chain_strict = false;
    acc = next;
    chain.prefix_products.push_back(acc);
    chain.subgroups.push_back(cache.get(acc));
  }
  for (std::size_t i = 0; i < chain.t; ++i) {
    const auto& lo = chain.subgroups[i];
    const auto& hi = chain.subgroups[i + 1];
    if (!lo.subset_of(hi)) chain.nested = false;
    else if (lo.order() < hi.order()) chain.strict_growth.push_back(i);
  }
  return chain;
}

std::pair<Sequence, ReductionTrace> reduce_sequence(const RingSpec& ring, const Sequence& t,
                                                    std::size_t d_units) {
  const auto inv = ring_invariants(ring);
  if (t.size() < d_units + inv.delta)
    throw InvalidInput("reduce_sequence: |T| = " + std::to_string(t.size()) +
                       " is below D(U(S_R)) + delta = " + std::to_string(d_units + inv.delta));

  ReductionTrace trace;
  trace.input = t;
  trace.v = shortest_H_prefix(ring, t);
  trace.rest = trace.v.complement_in(t);
  trace.primes = saturated_primes(ring, trace.v);
  trace.chain = stabilizer_chain(ring, trace.v);
  if (!trace.chain.nested || !trace.chain.green_chain_strict || !trace.chain.assertion_b())
    throw Falsification("stabilizer chain violates nesting, strict descent or |M| >= t - delta",
                        describe(ring, t) + " V=" + format_sequence(ring, trace.v));

  std::map<Element, Element> lift_of;
  for (const auto& a : trace.rest.terms())
    if (!lift_of.count(a)) lift_of.emplace(a, unit_lift(ring, trace.v, a));
  trace.lifts.assign(lift_of.begin(), lift_of.end());

  const auto& top = trace.chain.subgroups.back();  // K_t = St(sigma(V))
  std::optional<Sequence> w;
  for (std::size_t k = 1; k <= trace.rest.size() && !w; ++k) {
    w = first_submultiset(trace.rest, k, [&](const Sequence& s) {
      Element prod = identity(ring);
      for (const auto& a : s.terms()) prod = mul(ring, prod, lift_of.at(a));
      return top.contains(prod);
    });
  }
  if (!w)
    throw Falsification("no nonempty W with lifted product in K_t", describe(ring, t));
  trace.w = *w;
  trace.output = trace.w.complement_in(t);

  if (trace.output.size() >= t.size() || sigma(ring, trace.output) != sigma(ring, t))
    throw Falsification("reduction output is not a proper equal-sum subsequence",
                        describe(ring, t) + " T'=" + format_sequence(ring, trace.output));
  return {trace.output, std::move(trace)};
}

std::pair<Sequence, ReductionTrace> reduce_sequence(const RingSpec& ring, const Sequence& t) {
  const auto unit_run = unit_group_search(ring);
  return reduce_sequence(ring, t, unit_run.length + 1);
}

TightFamilyWitness tight_family_witness(std::size_t r1, std::size_t r2, std::size_t r3,
                                    std::uint64_t verify_cap) {
  if (r1 + r2 + r3 == 0) throw InvalidInput("tight_family_witness: r1 + r2 + r3 must be positive");
  std::vector<std::uint64_t> moduli;
  moduli.insert(moduli.end(), r1, 8);
  moduli.insert(moduli.end(), r2, 4);
  moduli.insert(moduli.end(), r3, 2);
  TightFamilyWitness out{RingSpec(moduli), {}, std::nullopt};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::size_t copies = moduli[i] == 8 ? 3 : moduli[i] == 4 ? 2 : 1;
    for (std::size_t c = 0; c < copies; ++c) out.witness.append(identity_with_two_at(out.ring, i));
  }
  if (out.ring.order() <= verify_cap) {
    out.irreducible = !is_reducible(out.ring, out.witness);
    if (!*out.irreducible)
      throw Falsification("tight-family witness is reducible", describe(out.ring, out.witness));
  }
  return out;
}

}  // namespace davenport
