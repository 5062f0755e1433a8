#include "davenport/sequence.hpp"

#include "davenport/errors.hpp"

#include <algorithm>

namespace davenport {

Sequence::Sequence(const RingSpec& ring, std::vector<Element> terms) : terms_(std::move(terms)) {
  for (const auto& a : terms_) check_element(ring, a);
  std::sort(terms_.begin(), terms_.end());
}

void Sequence::append(const Element& a) {
  terms_.insert(std::upper_bound(terms_.begin(), terms_.end(), a), a);
}

Sequence Sequence::joined(const Sequence& other) const {
  Sequence out;
  out.terms_.reserve(size() + other.size());
  std::merge(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
             std::back_inserter(out.terms_));
  return out;
}

std::size_t Sequence::multiplicity(const Element& a) const {
  auto [lo, hi] = std::equal_range(terms_.begin(), terms_.end(), a);
  return static_cast<std::size_t>(hi - lo);
}

bool Sequence::divides(const Sequence& super) const {
  return std::includes(super.terms_.begin(), super.terms_.end(), terms_.begin(), terms_.end());
}

Sequence Sequence::complement_in(const Sequence& super) const {
  if (!divides(super)) throw InvalidInput("complement_in: not a subsequence");
  Sequence out;
  std::set_difference(super.terms_.begin(), super.terms_.end(), terms_.begin(), terms_.end(),
                      std::back_inserter(out.terms_));
  return out;
}

std::string format_sequence(const RingSpec& ring, const Sequence& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += format_element(ring, t[i]);
  }
  return out + "]";
}

Element sigma(const RingSpec& ring, const Sequence& t) {
  Element acc = identity(ring);
  for (const auto& a : t.terms()) acc = mul(ring, acc, a);
  return acc;
}

SubsumState empty_subsums(const RingSpec& ring) {
  const RingMonoid m(ring);
  return SubsumState(m.order(), m.identity_index());
}

SubsumState subsums_of(const RingSpec& ring, const Sequence& t) {
  const RingMonoid m(ring);
  const auto idx = to_indices(ring, t);
  return fold_subsums(m, std::span<const ElementIndex>(idx));
}

SubsumState extend_subsums(const RingSpec& ring, const SubsumState& state, const Element& a) {
  const RingMonoid m(ring);
  return state.extended(m, m.index_of(a));
}

bool is_reducible(const RingSpec& ring, const Sequence& t) {
  return subsums_of(ring, t).reducible();
}

std::vector<ElementIndex> to_indices(const RingSpec& ring, const Sequence& t) {
  std::vector<ElementIndex> out;
  out.reserve(t.size());
  for (const auto& a : t.terms()) out.push_back(static_cast<ElementIndex>(element_index(ring, a)));
  return out;
}

Sequence from_indices(const RingSpec& ring, std::span<const ElementIndex> indices) {
  std::vector<Element> terms;
  terms.reserve(indices.size());
  for (auto i : indices) {
    if (i >= ring.order()) throw InvalidInput("element index out of range");
    terms.push_back(element_at(ring, i));
  }
  return Sequence(ring, std::move(terms));
}

}  // namespace davenport
