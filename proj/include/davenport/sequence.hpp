#pragma once

// Sequences over S_R (finite multisets kept in canonical order) and the
// incremental proper-subsum state that decides reducibility.

#include "davenport/monoid.hpp"
#include "davenport/ring.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace davenport {

/// Multiset of elements stored non-decreasing in the canonical element order.
class Sequence {
public:
  Sequence() = default;
  Sequence(const RingSpec& ring, std::vector<Element> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::span<const Element> terms() const noexcept { return terms_; }
  const Element& operator[](std::size_t i) const { return terms_[i]; }

  void append(const Element& a);
  Sequence joined(const Sequence& other) const;

  /// v_a(T).
  std::size_t multiplicity(const Element& a) const;
  bool divides(const Sequence& super) const;  // this | super

  /// super * this^{[-1]}; throws InvalidInput unless this | super.
  Sequence complement_in(const Sequence& super) const;

  auto operator<=>(const Sequence&) const = default;

private:
  std::vector<Element> terms_;
};

std::string format_sequence(const RingSpec& ring, const Sequence& t);

/// Product of all terms; the identity for the empty sequence.
Element sigma(const RingSpec& ring, const Sequence& t);

/// Fixed-size bitset over element indices.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  bool contains(ElementIndex i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  // Returns true if `i` was newly inserted.
  bool insert(ElementIndex i) noexcept {
    auto& w = words_[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    const bool fresh = !(w & bit);
    w |= bit;
    return fresh;
  }
  void assign(const IndexSet& other) { words_.assign(other.words_.begin(), other.words_.end()); }

private:
  std::vector<std::uint64_t> words_;
};

/// sigma(T) together with the set of sums of all proper sub-multisets of T.
/// proper(T.a) = proper(T) u (proper(T) * a) u {sigma(T)}.
class SubsumState {
public:
  SubsumState() = default;
  SubsumState(std::size_t universe, ElementIndex identity)
      : total_(identity), sums_(universe) {}

  ElementIndex total() const noexcept { return total_; }
  std::span<const ElementIndex> proper_sums() const noexcept { return members_; }
  bool has_proper_sum(ElementIndex x) const noexcept { return sums_.contains(x); }
  std::size_t length() const noexcept { return length_; }

  /// Whether sigma(T) is the sum of a proper subsequence.
  bool reducible() const noexcept { return sums_.contains(total_); }

  /// Would T.a be reducible? Does not modify the state.
  template <FiniteMonoid M>
  bool extension_reducible(const M& m, ElementIndex a) const {
    const ElementIndex next = m.op(total_, a);
    if (next == total_ || sums_.contains(next)) return true;
    for (auto s : members_)
      if (m.op(s, a) == next) return true;
    return false;
  }

  /// Overwrites *this with the state of T.a, where `parent` is the state of T.
  template <FiniteMonoid M>
  void assign_extension(const M& m, const SubsumState& parent, ElementIndex a) {
    sums_.assign(parent.sums_);
    members_.assign(parent.members_.begin(), parent.members_.end());
    for (auto s : parent.members_) {
      const auto x = m.op(s, a);
      if (sums_.insert(x)) members_.push_back(x);
    }
    if (sums_.insert(parent.total_)) members_.push_back(parent.total_);
    total_ = m.op(parent.total_, a);
    length_ = parent.length_ + 1;
  }

  template <FiniteMonoid M>
  SubsumState extended(const M& m, ElementIndex a) const {
    SubsumState next;
    next.assign_extension(m, *this, a);
    return next;
  }

private:
  ElementIndex total_ = 0;
  IndexSet sums_;
  std::vector<ElementIndex> members_;
  std::size_t length_ = 0;
};

template <FiniteMonoid M>
SubsumState fold_subsums(const M& m, std::span<const ElementIndex> terms) {
  SubsumState state(m.order(), m.identity_index());
  for (auto a : terms) state = state.extended(m, a);
  return state;
}

template <FiniteMonoid M>
bool is_reducible_indices(const M& m, std::span<const ElementIndex> terms) {
  return fold_subsums(m, terms).reducible();
}

// Ring-level interface.
SubsumState empty_subsums(const RingSpec& ring);
SubsumState subsums_of(const RingSpec& ring, const Sequence& t);
SubsumState extend_subsums(const RingSpec& ring, const SubsumState& state, const Element& a);
bool is_reducible(const RingSpec& ring, const Sequence& t);

std::vector<ElementIndex> to_indices(const RingSpec& ring, const Sequence& t);
Sequence from_indices(const RingSpec& ring, std::span<const ElementIndex> indices);

}  // namespace davenport
