#include "davenport/errors.hpp"
#include "davenport/green.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <map>
#include <thread>

using namespace davenport;
using testing::el;
using testing::ring;

namespace {

std::vector<std::uint64_t> residues(const StabilizerSubgroup& s) {
  std::vector<std::uint64_t> out;
  for (const auto& u : s.members) out.push_back(u.residues.at(0));
  return out;
}

// Units u with u*c = c by direct filtering, independent of the library.
std::vector<Element> naive_stabilizer(const RingSpec& r, const Element& c) {
  std::vector<Element> out;
  for (const auto& u : all_elements(r))
    if (is_unit(r, u) && mul(r, u, c) == c) out.push_back(u);
  return out;
}

}  // namespace

TEST_CASE("leq_H") {
  const auto z6 = ring({6}), z4 = ring({4});
  CHECK(leq_H(z6, el(z6, {4}), el(z6, {2})));
  CHECK(leq_H(z4, el(z4, {2}), el(z4, {1})));
  CHECK_FALSE(leq_H(z4, el(z4, {1}), el(z4, {2})));
  CHECK_FALSE(leq_H_definitional(z4, el(z4, {1}), el(z4, {2})));
}

TEST_CASE("h_equiv") {
  const auto z6 = ring({6}), z4 = ring({4});
  CHECK(h_equiv(z6, el(z6, {2}), el(z6, {4})));
  CHECK(leq_H_definitional(z6, el(z6, {2}), el(z6, {4})));
  CHECK(leq_H_definitional(z6, el(z6, {4}), el(z6, {2})));
  CHECK(h_equiv(z4, el(z4, {1}), el(z4, {3})));
  CHECK_FALSE(h_equiv(z4, el(z4, {2}), el(z4, {0})));
}

TEST_CASE("strictly_below") {
  const auto z4 = ring({4}), z6 = ring({6}), z8 = ring({8});
  CHECK(strictly_below(z4, el(z4, {2}), el(z4, {1})));
  CHECK_FALSE(strictly_below(z6, el(z6, {4}), el(z6, {2})));
  CHECK(strictly_below(z8, el(z8, {4}), el(z8, {2})));
}

TEST_CASE("stabilizer") {
  const auto z4 = ring({4}), z6 = ring({6});
  CHECK(residues(stabilizer(z4, el(z4, {2}))) == std::vector<std::uint64_t>{1, 3});
  CHECK(residues(stabilizer(z4, el(z4, {1}))) == std::vector<std::uint64_t>{1});
  CHECK(residues(stabilizer(z6, el(z6, {0}))) == std::vector<std::uint64_t>{1, 5});
  CHECK(residues(stabilizer(z6, el(z6, {2}))) == std::vector<std::uint64_t>{1});
}

TEST_CASE("separating_unit") {
  const auto z8 = ring({8}), z9 = ring({9}), z12 = ring({12});
  CHECK(separating_unit(z8, el(z8, {4}), el(z8, {2})) == el(z8, {3}));
  CHECK(separating_unit(z9, el(z9, {3}), el(z9, {1})) == el(z9, {7}));
  CHECK(separating_unit(z12, el(z12, {3}), el(z12, {1})) == el(z12, {5}));
  CHECK(separation_site(z12, el(z12, {3}), el(z12, {1})) == SeparationSite{0, 3, 1});

  // Not strictly below.
  CHECK_THROWS_AS(separating_unit(z8, el(z8, {2}), el(z8, {4})), PreconditionError);
  // Strictly below, but only the 2-part grows and it reaches pot_2(n_t): 0 <_H 4 in Z_8.
  CHECK_FALSE(separation_site(z8, el(z8, {0}), el(z8, {4})).has_value());
  CHECK_THROWS_AS(separating_unit(z8, el(z8, {0}), el(z8, {4})), PreconditionError);
}

TEST_CASE("StabilizerCache is idempotent under concurrent fills") {
  const auto r = ring({8, 6});
  StabilizerCache cache(r);
  const auto elems = all_elements(r);
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&] {
      for (const auto& c : elems) (void)cache.get(c);
    });
  for (auto& t : pool) t.join();
  for (const auto& c : elems) CHECK(cache.get(c).members == naive_stabilizer(r, c));
}

TEST_CASE("property: Green structure exhaustively for |S_R| <= 36") {
  for (const auto& r : testing::small_rings(36, 3)) {
    const auto elems = all_elements(r);
    std::map<Element, std::vector<Element>> st;
    for (const auto& c : elems) {
      st[c] = naive_stabilizer(r, c);
      CHECK(stabilizer(r, c).members == st[c]);
    }
    std::map<std::vector<std::uint64_t>, std::vector<Element>> classes;
    for (const auto& a : elems) {
      classes[gcd_profile(r, a).entries].push_back(a);
      for (const auto& b : elems) {
        const bool le = leq_H(r, a, b);
        CHECK(le == leq_H_definitional(r, a, b));
        if (le) {
          const auto pa = gcd_profile(r, a).entries, pb = gcd_profile(r, b).entries;
          for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] % pb[i] == 0);
          CHECK(std::includes(st[a].begin(), st[a].end(), st[b].begin(), st[b].end()));
        }
        CHECK(h_equiv(r, a, b) == (gcd_profile(r, a) == gcd_profile(r, b)));
        if (strictly_below(r, a, b) && separation_site(r, a, b)) {
          const auto d = separating_unit(r, a, b);
          CHECK(is_unit(r, d));
          CHECK(mul(r, d, a) == a);
          CHECK(mul(r, d, b) != b);
          CHECK(st[b].size() < st[a].size());
        }
      }
    }
    // The class of the identity is exactly the unit group.
    CHECK(classes[gcd_profile(r, identity(r)).entries] == units(r));
  }
}
