#pragma once

// Green's preorder and congruence on S_R, stabilizers St(c) in U(S_R), and the
// separating unit d in St(a) \ St(b).

#include "davenport/ring.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace davenport {

/// St(c) = {u in U(S_R) : u c = c}, members in canonical order.
struct StabilizerSubgroup {
  Element stabilized;
  std::vector<Element> members;

  bool contains(const Element& u) const;
  bool subset_of(const StabilizerSubgroup& other) const;
  std::size_t order() const { return members.size(); }
};

/// a <=_H b, i.e. a = b or a = b c for some c. Uses the criterion
/// gcd_i(b) | gcd_i(a) for every coordinate i.
bool leq_H(const RingSpec& ring, const Element& a, const Element& b);

/// The defining existence search over all c in S_R.
bool leq_H_definitional(const RingSpec& ring, const Element& a, const Element& b,
                        std::uint64_t cap = kDefaultEnumerationCap);

/// a H b iff equal gcd profiles.
bool h_equiv(const RingSpec& ring, const Element& a, const Element& b);

bool strictly_below(const RingSpec& ring, const Element& a, const Element& b);

StabilizerSubgroup stabilizer(const RingSpec& ring, const Element& c,
                              std::uint64_t cap = kDefaultEnumerationCap);

/// Memoized stabilizers for one ring. Safe for concurrent use; every entry
/// behaves as if computed once.
class StabilizerCache {
public:
  explicit StabilizerCache(RingSpec ring, std::uint64_t cap = kDefaultEnumerationCap)
      : ring_(std::move(ring)), cap_(cap) {}

  const StabilizerSubgroup& get(const Element& c);

private:
  RingSpec ring_;
  std::uint64_t cap_;
  std::mutex mutex_;
  std::map<Element, StabilizerSubgroup> entries_;
};

/// Where the separating-unit hypothesis holds: coordinate t, the largest prime
/// q with pot_q(gcd_t(b)) < pot_q(gcd_t(a)), and alpha = pot_q(gcd_t(a)).
struct SeparationSite {
  std::size_t coordinate = 0;
  std::uint64_t prime = 0;
  unsigned alpha = 0;
  friend bool operator==(const SeparationSite&, const SeparationSite&) = default;
};

/// First coordinate t at which either pot_p(gcd_t(b)) < pot_p(gcd_t(a)) for an
/// odd prime p, or pot_2(gcd_t(b)) < pot_2(gcd_t(a)) < pot_2(n_t).
std::optional<SeparationSite> separation_site(const RingSpec& ring, const Element& a,
                                              const Element& b);

/// Unit d with d_i = 1 off the separation coordinate t and
///   d_t = 2 n_t / q^alpha + 1  if q > 2 and that value is coprime to n_t,
///   d_t =   n_t / q^alpha + 1  otherwise,
/// so that d a = a and d b != b. Throws PreconditionError unless a <_H b and a
/// separation site exists; throws Falsification if the result fails to verify.
Element separating_unit(const RingSpec& ring, const Element& a, const Element& b);

}  // namespace davenport
