#include "davenport/green.hpp"

#include "davenport/errors.hpp"

#include <algorithm>

namespace davenport {

bool StabilizerSubgroup::contains(const Element& u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

bool StabilizerSubgroup::subset_of(const StabilizerSubgroup& other) const {
  return std::includes(other.members.begin(), other.members.end(), members.begin(), members.end());
}

bool leq_H(const RingSpec& ring, const Element& a, const Element& b) {
  const auto ga = gcd_profile(ring, a);
  const auto gb = gcd_profile(ring, b);
  for (std::size_t i = 0; i < ring.rank(); ++i)
    if (ga.entries[i] % gb.entries[i] != 0) return false;
  return true;
}

bool leq_H_definitional(const RingSpec& ring, const Element& a, const Element& b,
                        std::uint64_t cap) {
  check_element(ring, a);
  check_element(ring, b);
  if (a == b) return true;
  if (ring.order() > cap) throw ResourceLimit("leq_H_definitional: ring exceeds enumeration cap");
  for (std::uint64_t i = 0; i < ring.order(); ++i)
    if (mul(ring, b, element_at(ring, i)) == a) return true;
  return false;
}

bool h_equiv(const RingSpec& ring, const Element& a, const Element& b) {
  return gcd_profile(ring, a) == gcd_profile(ring, b);
}

bool strictly_below(const RingSpec& ring, const Element& a, const Element& b) {
  return leq_H(ring, a, b) && !h_equiv(ring, a, b);
}

StabilizerSubgroup stabilizer(const RingSpec& ring, const Element& c, std::uint64_t cap) {
  check_element(ring, c);
  StabilizerSubgroup st{c, {}};
  for (auto& u : units(ring, cap))
    if (mul(ring, u, c) == c) st.members.push_back(std::move(u));
  return st;
}

const StabilizerSubgroup& StabilizerCache::get(const Element& c) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(c); it != entries_.end()) return it->second;
  }
  auto st = stabilizer(ring_, c, cap_);
  std::lock_guard lock(mutex_);
  // std::map never moves nodes, so returned references stay valid.
  return entries_.try_emplace(c, std::move(st)).first->second;
}

std::optional<SeparationSite> separation_site(const RingSpec& ring, const Element& a,
                                              const Element& b) {
  const auto ga = gcd_profile(ring, a);
  const auto gb = gcd_profile(ring, b);
  for (std::size_t t = 0; t < ring.rank(); ++t) {
    const std::uint64_t n = ring.modulus(t);
    bool qualifies = false;
    std::uint64_t largest = 0;
    for (auto [p, e] : factorize(n)) {
      const unsigned pa = pot(p, ga.entries[t]);
      const unsigned pb = pot(p, gb.entries[t]);
      if (pb >= pa) continue;
      largest = p;  // factorize() lists primes ascending
      if (p > 2 || pa < e) qualifies = true;
    }
    if (qualifies) return SeparationSite{t, largest, pot(largest, ga.entries[t])};
  }
  return std::nullopt;
}

Element separating_unit(const RingSpec& ring, const Element& a, const Element& b) {
  if (!strictly_below(ring, a, b))
    throw PreconditionError("separating_unit: requires a <_H b");
  const auto site = separation_site(ring, a, b);
  if (!site)
    throw PreconditionError("separating_unit: no coordinate satisfies the separation hypothesis");

  const std::size_t t = site->coordinate;
  const std::uint64_t n = ring.modulus(t);
  const std::uint64_t step = n / ipow(site->prime, site->alpha);
  const std::uint64_t doubled = (2 * step + 1) % n;
  Element d = identity(ring);
  if (site->prime > 2 && gcd_with_zero_convention(doubled, n) == 1)
    d.residues[t] = doubled;
  else
    d.residues[t] = (step + 1) % n;

  if (!is_unit(ring, d) || mul(ring, d, a) != a || mul(ring, d, b) == b) {
    throw Falsification("separating unit failed verification",
                        "ring=" + ring.to_string() + " a=" + format_element(ring, a) +
                            " b=" + format_element(ring, b) + " d=" + format_element(ring, d));
  }
  return d;
}

}  // namespace davenport
