#pragma once

// Executable forms of the constructions behind
//   D(U(S_R)) + P_2 <= D(S_R) <= D(U(S_R)) + delta:
// the lower-bound witness, the unit lift, the stabilizer chain, the reduction
// of long sequences, and the Z_8^{r1} + Z_4^{r2} + Z_2^{r3} witness family.
// Every construction re-verifies its result before returning.

#include "davenport/green.hpp"
#include "davenport/ring.hpp"
#include "davenport/sequence.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace davenport {

/// B = A . b_1 ... b_{P_2}, where b_i is the identity with 2 at the i-th
/// coordinate having 2 || n_i. `units_seq` must be an irreducible unit sequence
/// of length D(U(S_R)) - 1.
Sequence lower_bound_witness(const RingSpec& ring, const Sequence& units_seq,
                             std::size_t d_units);
Sequence lower_bound_witness(const RingSpec& ring, const Sequence& units_seq);

/// Minimum-cardinality V | T with sigma(V) H sigma(T); canonically least among
/// those. Partial products of V descend strictly in the H-preorder.
Sequence shortest_H_prefix(const RingSpec& ring, const Sequence& t);

/// P_i = {p prime : pot_p(gcd(sigma(V)_i, n_i)) = pot_p(n_i) > 0}.
struct SaturatedPrimeSets {
  std::vector<std::vector<std::uint64_t>> per_coordinate;
  friend bool operator==(const SaturatedPrimeSets&, const SaturatedPrimeSets&) = default;
};

SaturatedPrimeSets saturated_primes(const RingSpec& ring, const Sequence& v);

/// The unit a~ with a~_i = 1 mod p^{pot_p(n_i)} for p in P_i and
/// a~_i = a_i mod q^{pot_q(n_i)} for the other primes q | n_i. Requires q not
/// dividing a_i for those q; guarantees sigma(V) a~ = sigma(V) a.
Element unit_lift(const RingSpec& ring, const Sequence& v, const Element& a);

/// K_i = St(a_1 ... a_i) along V, with M = {i : K_i strictly inside K_{i+1}}.
struct StabilizerChain {
  std::vector<Element> prefix_products;  // t + 1 entries, starting at the identity
  std::vector<StabilizerSubgroup> subgroups;
  std::vector<std::size_t> strict_growth;  // M
  std::size_t t = 0;
  std::size_t delta = 0;
  bool nested = true;             // K_i subset of K_{i+1} for all i
  bool green_chain_strict = true; // prefix products strictly descend
  bool assertion_b() const { return strict_growth.size() + delta >= t; }
};

StabilizerChain stabilizer_chain(const RingSpec& ring, const Sequence& v);

struct ReductionTrace {
  Sequence input;
  Sequence v;
  Sequence rest;  // T V^{[-1]}
  StabilizerChain chain;
  SaturatedPrimeSets primes;
  std::vector<std::pair<Element, Element>> lifts;  // distinct terms of rest -> lift
  Sequence w;
  Sequence output;  // T W^{[-1]}
};

/// A proper T' | T with sigma(T') = sigma(T), found by following the upper-bound
/// argument: shortest V, unit lifts of T V^{[-1]}, then the smallest nonempty W
/// whose lifted product lies in K_t. Requires |T| >= D(U(S_R)) + delta.
std::pair<Sequence, ReductionTrace> reduce_sequence(const RingSpec& ring, const Sequence& t,
                                                    std::size_t d_units);
std::pair<Sequence, ReductionTrace> reduce_sequence(const RingSpec& ring, const Sequence& t);

struct TightFamilyWitness {
  RingSpec ring{std::vector<std::uint64_t>{2}};
  Sequence witness;
  std::optional<bool> irreducible;  // set when |S_R| is within the enumeration cap
};

/// Ring Z_8^{r1} + Z_4^{r2} + Z_2^{r3} and the sequence with a_i (identity but 2
/// in coordinate i) repeated 3, 2, 1 times on the Z_8, Z_4, Z_2 coordinates.
TightFamilyWitness tight_family_witness(std::size_t r1, std::size_t r2, std::size_t r3,
                                    std::uint64_t verify_cap = kDefaultEnumerationCap);

}  // namespace davenport
