#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library's search or subsum code: elements are plain residue
// tuples, reducibility is checked over all 2^len position subsets, and D is
// found by enumerating every multiset level by level.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using Tuple = std::vector<std::uint64_t>;

struct Ring {
  std::vector<std::uint64_t> moduli;

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (auto m : moduli) n *= m;
    return n;
  }
  Tuple one() const { return Tuple(moduli.size(), 1); }
  Tuple mul(const Tuple& a, const Tuple& b) const {
    Tuple c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] * b[i]) % moduli[i];
    return c;
  }
  // Mixed radix, first coordinate most significant.
  std::vector<Tuple> elements() const {
    std::vector<Tuple> out;
    Tuple t(moduli.size(), 0);
    for (std::uint64_t k = 0; k < order(); ++k) {
      out.push_back(t);
      for (std::size_t i = moduli.size(); i-- > 0;) {
        if (++t[i] < moduli[i]) break;
        t[i] = 0;
      }
    }
    return out;
  }
  bool unit(const Tuple& a) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::gcd(a[i], moduli[i]) != 1) return false;
    return true;
  }
};

inline Tuple product(const Ring& r, const std::vector<Tuple>& seq, std::uint64_t mask) {
  Tuple acc = r.one();
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (mask >> i & 1U) acc = r.mul(acc, seq[i]);
  return acc;
}

// Reducible: some proper position subset (the empty one included) has the
// same product as the whole sequence.
inline bool reducible(const Ring& r, const std::vector<Tuple>& seq) {
  const std::uint64_t full = (std::uint64_t{1} << seq.size()) - 1;
  const Tuple total = product(r, seq, full);
  for (std::uint64_t m = 0; m < full; ++m)
    if (product(r, seq, m) == total) return true;
  return false;
}

// All proper sub-multiset products, as a sorted distinct list.
inline std::vector<Tuple> proper_products(const Ring& r, const std::vector<Tuple>& seq) {
  const std::uint64_t full = (std::uint64_t{1} << seq.size()) - 1;
  std::vector<Tuple> out;
  for (std::uint64_t m = 0; m < full; ++m) out.push_back(product(r, seq, m));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Calls f on every non-decreasing index tuple of the given length.
inline void for_each_multiset(std::size_t ground, std::size_t length,
                              const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(length, 0);
  if (ground == 0 && length > 0) return;
  while (true) {
    f(idx);
    std::size_t k = length;
    while (k > 0 && idx[k - 1] == ground - 1) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t j = k; j < length; ++j) idx[j] = idx[k - 1];
  }
}

struct DResult {
  std::size_t d = 0;  // D = longest irreducible length + 1
  std::vector<Tuple> witness;  // first longest irreducible in enumeration order
};

// D over the given ground set: the first length with no irreducible multiset.
// Stopping there is sound since deleting a term keeps a sequence irreducible.
inline DResult davenport(const Ring& r, const std::vector<Tuple>& ground) {
  DResult res;
  for (std::size_t len = 0;; ++len) {
    bool found = false;
    for_each_multiset(ground.size(), len, [&](const std::vector<std::size_t>& idx) {
      if (found) return;
      std::vector<Tuple> seq;
      for (auto i : idx) seq.push_back(ground[i]);
      if (!reducible(r, seq)) {
        found = true;
        res.witness = seq;
      }
    });
    if (!found) {
      res.d = len;
      return res;
    }
  }
}

inline DResult davenport_semigroup(const Ring& r) { return davenport(r, r.elements()); }

inline DResult davenport_units(const Ring& r) {
  std::vector<Tuple> u;
  for (auto& a : r.elements())
    if (r.unit(a)) u.push_back(a);
  return davenport(r, u);
}

// Classical D(G) for G = C_{f1} + ... + C_{fk}: 1 + the longest zero-sum-free
// sequence over the nonzero elements.
inline std::size_t davenport_group_zero_sum_free(const std::vector<std::uint64_t>& factors) {
  Ring g{factors};
  std::vector<Tuple> nonzero;
  for (auto& a : g.elements())
    if (std::any_of(a.begin(), a.end(), [](auto x) { return x != 0; })) nonzero.push_back(a);
  auto zero_sum_free = [&](const std::vector<Tuple>& seq) {
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << seq.size()); ++m) {
      Tuple s(factors.size(), 0);
      for (std::size_t i = 0; i < seq.size(); ++i)
        if (m >> i & 1U)
          for (std::size_t j = 0; j < s.size(); ++j) s[j] = (s[j] + seq[i][j]) % factors[j];
      if (std::all_of(s.begin(), s.end(), [](auto x) { return x == 0; })) return false;
    }
    return true;
  };
  for (std::size_t len = 0;; ++len) {
    bool found = false;
    for_each_multiset(nonzero.size(), len, [&](const std::vector<std::size_t>& idx) {
      if (found) return;
      std::vector<Tuple> seq;
      for (auto i : idx) seq.push_back(nonzero[i]);
      found = zero_sum_free(seq);
    });
    if (!found) return len;
  }
}

}  // namespace oracle
