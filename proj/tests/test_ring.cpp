#include "davenport/errors.hpp"
#include "davenport/ring.hpp"

#include "helpers.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <set>

using namespace davenport;
using testing::el;
using testing::ring;

TEST_CASE("RingSpec validation") {
  CHECK_THROWS_AS(RingSpec(std::vector<std::uint64_t>{}), InvalidInput);
  CHECK_THROWS_AS(ring({1}), InvalidInput);
  CHECK_THROWS_AS(ring({4, 0}), InvalidInput);
  CHECK_THROWS_AS(RingSpec(std::vector<std::uint64_t>{std::uint64_t{1} << 33}), InvalidInput);
  const auto r = ring({8, 2});
  CHECK(r.order() == 16);
  CHECK(r.canonical() == ring({2, 8}));
  CHECK(r.to_string() == "8,2");
}

TEST_CASE("mul") {
  const auto z6 = ring({6});
  CHECK(mul(z6, el(z6, {2}), el(z6, {5})) == el(z6, {4}));
  const auto r = ring({4, 2});
  CHECK(mul(r, el(r, {2, 1}), el(r, {2, 1})) == el(r, {0, 1}));
  for (const auto& a : all_elements(r)) CHECK(mul(r, a, identity(r)) == a);
  CHECK_THROWS_AS(mul(r, el(z6, {2}), el(r, {1, 1})), InvalidInput);
}

TEST_CASE("pot") {
  CHECK(pot(2, 12) == 2);
  CHECK(pot(3, 12) == 1);
  CHECK(pot(5, 12) == 0);
  CHECK_THROWS_AS(pot(4, 12), InvalidInput);
  CHECK_THROWS_AS(pot(2, 0), InvalidInput);
}

TEST_CASE("gcd_profile") {
  const auto z6 = ring({6});
  CHECK(gcd_profile(z6, el(z6, {4})).entries == std::vector<std::uint64_t>{2});
  CHECK(gcd_profile(z6, el(z6, {0})).entries == std::vector<std::uint64_t>{6});
  const auto r = ring({8, 2});
  CHECK(gcd_profile(r, el(r, {4, 0})).entries == std::vector<std::uint64_t>{4, 2});
}

TEST_CASE("is_unit and units") {
  const auto z12 = ring({12});
  CHECK(is_unit(z12, el(z12, {5})));
  CHECK_FALSE(is_unit(z12, el(z12, {6})));
  CHECK(is_unit(z12, identity(z12)));

  const auto z8 = ring({8});
  const auto u8 = units(z8);
  REQUIRE(u8.size() == 4);
  CHECK(u8 == std::vector<Element>{el(z8, {1}), el(z8, {3}), el(z8, {5}), el(z8, {7})});
  CHECK(units(ring({6})).size() == 2);
  CHECK(units(ring({2})) == std::vector<Element>{el(ring({2}), {1})});
  CHECK_THROWS_AS(units(ring({1000, 1000, 1000}), 1000), ResourceLimit);
}

TEST_CASE("unit_group_structure") {
  CHECK(unit_group_structure(ring({8})).group.factors == std::vector<std::uint64_t>{2, 2});
  CHECK(unit_group_structure(ring({9})).group.factors == std::vector<std::uint64_t>{6});
  CHECK(unit_group_structure(ring({12})).group.factors == std::vector<std::uint64_t>{2, 2});
  CHECK(unit_group_structure(ring({2})).group.factors.empty());
  CHECK(unit_group_structure(ring({8, 4, 2})).group.factors ==
        std::vector<std::uint64_t>{2, 2, 2});
  CHECK(unit_group_structure(ring({32})).group.factors == std::vector<std::uint64_t>{2, 8});
  CHECK(unit_group_structure(ring({5, 7})).group.factors == std::vector<std::uint64_t>{2, 12});
}

TEST_CASE("ring_invariants") {
  CHECK(ring_invariants(ring({6})) == RingInvariants{1, 1, 1});
  CHECK(ring_invariants(ring({8, 4, 2})) == RingInvariants{1, 3, 3});
  CHECK(ring_invariants(ring({9})) == RingInvariants{0, 0, 0});
  CHECK(ring_invariants(ring({16, 6})) == RingInvariants{1, 2, 1});
}

TEST_CASE("crt_solve") {
  const std::vector<Congruence> a{{2, 1}, {3, 2}};
  CHECK(crt_solve(a) == 5);
  const std::vector<Congruence> b{{4, 1}, {3, 1}};
  CHECK(crt_solve(b) == 1);
  const std::vector<Congruence> c{{8, 1}, {1, 0}};
  CHECK(crt_solve(c) == 1);
  const std::vector<Congruence> bad{{4, 1}, {6, 1}};
  CHECK_THROWS_AS(crt_solve(bad), InvalidInput);
}

TEST_CASE("theta form and element order") {
  const auto r = ring({4, 2});
  CHECK(theta_form(r, el(r, {0, 1})) == std::vector<std::uint64_t>{4, 1});
  CHECK(element_index(r, el(r, {1, 0})) == 2);
  CHECK(element_at(r, 7) == el(r, {3, 1}));
  CHECK(format_element(ring({6}), el(ring({6}), {4})) == "4");
  CHECK(format_element(r, el(r, {2, 1})) == "(2,1)");
}

TEST_CASE("property: arithmetic against the naive oracle for |S_R| <= 64") {
  for (const auto& r : testing::small_rings(64, 3)) {
    const oracle::Ring o{std::vector<std::uint64_t>(r.moduli().begin(), r.moduli().end())};
    const auto elems = all_elements(r);
    const auto naive = o.elements();
    REQUIRE(elems.size() == naive.size());
    std::set<std::vector<std::uint64_t>> profiles;
    std::uint64_t unit_total = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      CHECK(elems[i].residues == naive[i]);
      CHECK(element_index(r, elems[i]) == i);
      const bool u = is_unit(r, elems[i]);
      CHECK(u == o.unit(naive[i]));
      const auto p = gcd_profile(r, elems[i]).entries;
      CHECK(u == std::all_of(p.begin(), p.end(), [](auto x) { return x == 1; }));
      profiles.insert(p);
      unit_total += u;
      for (std::size_t j = 0; j < elems.size(); ++j) {
        const auto ab = mul(r, elems[i], elems[j]);
        CHECK(ab.residues == o.mul(naive[i], naive[j]));
        CHECK(ab == mul(r, elems[j], elems[i]));
      }
    }
    // Associativity on all triples.
    bool assoc = true;
    for (const auto& a : elems)
      for (const auto& b : elems)
        for (const auto& c : elems)
          assoc = assoc && mul(r, mul(r, a, b), c) == mul(r, a, mul(r, b, c));
    CHECK(assoc);

    std::uint64_t phi = 1, divisors = 1;
    for (auto n : r.moduli()) {
      phi *= euler_phi(n);
      divisors *= divisor_count(n);
    }
    CHECK(unit_total == phi);
    CHECK(units(r).size() == phi);
    CHECK(profiles.size() == divisors);
  }
}

TEST_CASE("property: unit group structure is an isomorphism") {
  for (const auto& r : testing::small_rings(200, 3)) {
    const auto s = unit_group_structure(r);
    CHECK(s.group.order() == unit_count(r));
    REQUIRE(s.generators.size() == s.group.factors.size());
    // Invariant-factor form.
    for (std::size_t j = 1; j < s.group.factors.size(); ++j)
      CHECK(s.group.factors[j] % s.group.factors[j - 1] == 0);
    // Exact generator orders, and every exponent tuple hits a distinct unit.
    std::set<Element> image;
    std::vector<std::uint64_t> e(s.group.factors.size(), 0);
    for (std::uint64_t k = 0; k < s.group.order(); ++k) {
      Element x = identity(r);
      for (std::size_t j = 0; j < e.size(); ++j)
        for (std::uint64_t t = 0; t < e[j]; ++t) x = mul(r, x, s.generators[j]);
      CHECK(is_unit(r, x));
      image.insert(x);
      for (std::size_t j = e.size(); j-- > 0;) {
        if (++e[j] < s.group.factors[j]) break;
        e[j] = 0;
      }
    }
    CHECK(image.size() == unit_count(r));
    for (std::size_t j = 0; j < s.generators.size(); ++j) {
      Element x = identity(r);
      for (std::uint64_t t = 0; t < s.group.factors[j]; ++t) x = mul(r, x, s.generators[j]);
      CHECK(x == identity(r));
    }
  }
}
