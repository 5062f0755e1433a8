#pragma once

#include "davenport/ring.hpp"
#include "davenport/sequence.hpp"

#include <initializer_list>
#include <vector>

namespace testing {

inline davenport::RingSpec ring(std::initializer_list<std::uint64_t> moduli) {
  return davenport::RingSpec(std::vector<std::uint64_t>(moduli));
}

inline davenport::Element el(const davenport::RingSpec& r, std::initializer_list<std::int64_t> v) {
  return davenport::make_element(r, std::vector<std::int64_t>(v));
}

// Rank-one shorthand: seq(Z_6, {5, 2}).
inline davenport::Sequence seq(const davenport::RingSpec& r, std::initializer_list<std::int64_t> v) {
  std::vector<davenport::Element> terms;
  for (auto x : v) terms.push_back(davenport::make_element(r, {x}));
  return davenport::Sequence(r, std::move(terms));
}

inline davenport::Sequence seq(const davenport::RingSpec& r,
                               std::vector<davenport::Element> terms) {
  return davenport::Sequence(r, std::move(terms));
}

// All rings with sorted moduli, rank <= max_rank and order <= max_order.
inline std::vector<davenport::RingSpec> small_rings(std::uint64_t max_order, std::size_t max_rank) {
  std::vector<davenport::RingSpec> out;
  std::vector<std::uint64_t> cur;
  auto rec = [&](auto&& self, std::uint64_t lo, std::uint64_t order) -> void {
    if (!cur.empty()) out.emplace_back(cur);
    if (cur.size() == max_rank) return;
    for (std::uint64_t m = lo; order * m <= max_order; ++m) {
      cur.push_back(m);
      self(self, m, order * m);
      cur.pop_back();
    }
  };
  rec(rec, 2, 1);
  return out;
}

}  // namespace testing
