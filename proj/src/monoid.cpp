#include "davenport/monoid.hpp"

#include "davenport/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace davenport {

namespace {

void check_search_cap(std::uint64_t order, std::uint64_t cap) {
  if (order > cap)
    throw ResourceLimit("table of order " + std::to_string(order) + " exceeds the search cap " +
                        std::to_string(cap));
  if (order > std::numeric_limits<ElementIndex>::max())
    throw ResourceLimit("table order does not fit element indices");
}

}  // namespace

CayleyTable::CayleyTable(std::size_t order, ElementIndex identity, std::vector<ElementIndex> table)
    : order_(order), identity_(identity), table_(std::move(table)) {
  if (order_ == 0 || table_.size() != order_ * order_ || identity_ >= order_)
    throw InvalidInput("malformed operation table");
}

RingMonoid::RingMonoid(RingSpec ring) : ring_(std::move(ring)) {
  check_search_cap(ring_.order(), std::numeric_limits<ElementIndex>::max());
  identity_ = static_cast<ElementIndex>(element_index(ring_, davenport::identity(ring_)));
}

ElementIndex RingMonoid::op(ElementIndex a, ElementIndex b) const noexcept {
  std::uint64_t x = a, y = b, out = 0, place = 1;
  for (std::size_t i = ring_.rank(); i-- > 0;) {
    const std::uint64_t n = ring_.modulus(i);
    out += place * ((x % n) * (y % n) % n);
    x /= n;
    y /= n;
    place *= n;
  }
  return static_cast<ElementIndex>(out);
}

ElementIndex RingMonoid::index_of(const Element& a) const {
  check_element(ring_, a);
  return static_cast<ElementIndex>(element_index(ring_, a));
}

CayleyTable semigroup_table(const RingSpec& ring, std::uint64_t cap) {
  check_search_cap(ring.order(), cap);
  const RingMonoid m(ring);
  const std::size_t n = m.order();
  std::vector<ElementIndex> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = m.op(static_cast<ElementIndex>(a), static_cast<ElementIndex>(b));
  return CayleyTable(n, m.identity_index(), std::move(table));
}

std::uint64_t group_index(const AbelianGroupSpec& group, std::span<const std::uint64_t> tuple) {
  if (tuple.size() != group.factors.size())
    throw InvalidInput("group element has " + std::to_string(tuple.size()) +
                       " coordinates, group has " + std::to_string(group.factors.size()));
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < tuple.size(); ++j) {
    if (tuple[j] >= group.factors[j])
      throw InvalidInput("group coordinate " + std::to_string(tuple[j]) + " out of range for C_" +
                         std::to_string(group.factors[j]));
    idx = idx * group.factors[j] + tuple[j];
  }
  return idx;
}

CayleyTable group_table(const AbelianGroupSpec& group, std::uint64_t cap) {
  for (auto d : group.factors)
    if (d < 2) throw InvalidInput("cyclic factor orders must be >= 2");
  const std::uint64_t order = group.order();
  check_search_cap(order, cap);
  const std::size_t n = order;
  const std::size_t k = group.factors.size();
  std::vector<ElementIndex> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::uint64_t x = a, y = b, out = 0, place = 1;
      for (std::size_t j = k; j-- > 0;) {
        const std::uint64_t d = group.factors[j];
        out += place * ((x % d + y % d) % d);
        x /= d;
        y /= d;
        place *= d;
      }
      table[a * n + b] = static_cast<ElementIndex>(out);
    }
  return CayleyTable(n, 0, std::move(table));
}

std::vector<ElementIndex> subgroup_closure(const CayleyTable& group,
                                           std::span<const ElementIndex> generators) {
  std::vector<bool> in(group.order(), false);
  std::vector<ElementIndex> members{group.identity_index()};
  in[group.identity_index()] = true;
  for (auto g : generators)
    if (g >= group.order()) throw InvalidInput("generator outside the group");
  // Finite: closing under multiplication by generators gives the subgroup.
  for (std::size_t i = 0; i < members.size(); ++i)
    for (auto g : generators) {
      const auto h = group.op(members[i], g);
      if (!in[h]) {
        in[h] = true;
        members.push_back(h);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

CayleyTable restrict_table(const CayleyTable& table, std::span<const ElementIndex> subset) {
  std::vector<ElementIndex> position(table.order(), std::numeric_limits<ElementIndex>::max());
  for (std::size_t i = 0; i < subset.size(); ++i) position[subset[i]] = static_cast<ElementIndex>(i);
  const std::size_t n = subset.size();
  std::vector<ElementIndex> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto p = position[table.op(subset[a], subset[b])];
      if (p == std::numeric_limits<ElementIndex>::max())
        throw InvalidInput("restrict_table: subset is not closed");
      out[a * n + b] = p;
    }
  const auto id = position[table.identity_index()];
  if (id == std::numeric_limits<ElementIndex>::max())
    throw InvalidInput("restrict_table: subset lacks the identity");
  return CayleyTable(n, id, std::move(out));
}

CayleyTable quotient_table(const CayleyTable& group, std::span<const ElementIndex> subgroup) {
  constexpr auto kNone = std::numeric_limits<ElementIndex>::max();
  std::vector<ElementIndex> coset_of(group.order(), kNone);
  std::vector<ElementIndex> representative;
  for (std::size_t g = 0; g < group.order(); ++g) {
    if (coset_of[g] != kNone) continue;
    const auto id = static_cast<ElementIndex>(representative.size());
    representative.push_back(static_cast<ElementIndex>(g));
    for (auto h : subgroup) {
      const auto x = group.op(static_cast<ElementIndex>(g), h);
      if (coset_of[x] != kNone && coset_of[x] != id)
        throw InvalidInput("quotient_table: not a subgroup");
      coset_of[x] = id;
    }
  }
  const std::size_t n = representative.size();
  std::vector<ElementIndex> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out[a * n + b] = coset_of[group.op(representative[a], representative[b])];
  return CayleyTable(n, coset_of[group.identity_index()], std::move(out));
}

std::vector<std::size_t> element_order_signature(const CayleyTable& group) {
  std::vector<std::size_t> orders;
  orders.reserve(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) {
    std::size_t k = 1;
    auto x = static_cast<ElementIndex>(g);
    while (x != group.identity_index()) {
      x = group.op(x, static_cast<ElementIndex>(g));
      ++k;
      if (k > group.order()) throw InvalidInput("element_order_signature: not a group");
    }
    orders.push_back(k);
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace davenport
