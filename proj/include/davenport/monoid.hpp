#pragma once

// Finite commutative monoids given by an explicit operation table. Both S_R and
// abstract abelian groups (and their subgroups and quotients) are lowered to
// this form before searching.

#include "davenport/ring.hpp"

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

namespace davenport {

inline constexpr std::uint64_t kDefaultSearchOrderCap = 4096;

template <class M>
concept FiniteMonoid = requires(const M& m, ElementIndex a, ElementIndex b) {
  { m.order() } -> std::convertible_to<std::size_t>;
  { m.identity_index() } -> std::convertible_to<ElementIndex>;
  { m.op(a, b) } -> std::convertible_to<ElementIndex>;
};

class CayleyTable {
public:
  CayleyTable() = default;
  CayleyTable(std::size_t order, ElementIndex identity, std::vector<ElementIndex> table);

  std::size_t order() const noexcept { return order_; }
  ElementIndex identity_index() const noexcept { return identity_; }
  ElementIndex op(ElementIndex a, ElementIndex b) const noexcept { return table_[a * order_ + b]; }

private:
  std::size_t order_ = 0;
  ElementIndex identity_ = 0;
  std::vector<ElementIndex> table_;
};

/// S_R on mixed-radix indices, computed on the fly without a table.
class RingMonoid {
public:
  explicit RingMonoid(RingSpec ring);

  const RingSpec& ring() const noexcept { return ring_; }
  std::size_t order() const noexcept { return static_cast<std::size_t>(ring_.order()); }
  ElementIndex identity_index() const noexcept { return identity_; }
  ElementIndex op(ElementIndex a, ElementIndex b) const noexcept;

  ElementIndex index_of(const Element& a) const;
  Element element(ElementIndex i) const { return element_at(ring_, i); }

private:
  RingSpec ring_;
  ElementIndex identity_ = 0;
};

CayleyTable semigroup_table(const RingSpec& ring, std::uint64_t cap = kDefaultSearchOrderCap);

/// Index of a group element = mixed-radix position of its tuple.
CayleyTable group_table(const AbelianGroupSpec& group, std::uint64_t cap = kDefaultSearchOrderCap);
std::uint64_t group_index(const AbelianGroupSpec& group, std::span<const std::uint64_t> tuple);

/// Elements of the subgroup generated by `generators` (sorted).
std::vector<ElementIndex> subgroup_closure(const CayleyTable& group,
                                           std::span<const ElementIndex> generators);

/// The closed subset `subset` (sorted, containing the identity) as its own table.
CayleyTable restrict_table(const CayleyTable& table, std::span<const ElementIndex> subset);

/// G/H via coset enumeration: coset k is represented by the least element of G
/// not in cosets 0..k-1.
CayleyTable quotient_table(const CayleyTable& group, std::span<const ElementIndex> subgroup);

/// Sorted element-order histogram; determines a finite abelian group up to
/// isomorphism.
std::vector<std::size_t> element_order_signature(const CayleyTable& group);

}  // namespace davenport
