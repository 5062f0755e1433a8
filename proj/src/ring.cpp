#include "davenport/ring.hpp"

#include "davenport/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace davenport {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

void check_cap(const char* what, std::uint64_t size, std::uint64_t cap) {
  if (size > cap) {
    std::ostringstream os;
    os << what << ": " << size << " elements exceeds the enumeration cap " << cap;
    throw ResourceLimit(os.str());
  }
}

// Extended Euclid; returns g and x with a*x = g (mod m).
std::pair<std::uint64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  return {static_cast<std::uint64_t>(old_r), old_s};
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  auto [g, x] = ext_gcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m));
  if (g != 1) throw InvalidInput("mod_inverse: not invertible");
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((x % sm) + sm) % sm);
}

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t n) {
  std::uint64_t k = 1;
  std::uint64_t x = g % n;
  while (x != 1 % n) {
    x = mulmod(x, g, n);
    ++k;
  }
  return k;
}

// Smallest primitive root modulo an odd prime power.
std::uint64_t primitive_root(std::uint64_t p, unsigned e) {
  const std::uint64_t n = ipow(p, e);
  const std::uint64_t phi = n / p * (p - 1);
  for (std::uint64_t g = 2; g < n; ++g) {
    if (g % p == 0) continue;
    if (multiplicative_order(g, n) == phi) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

}  // namespace

// ---------------------------------------------------------------- RingSpec

RingSpec::RingSpec(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw InvalidInput("ring needs at least one modulus");
  for (auto n : moduli_) {
    if (n < 2) throw InvalidInput("every modulus must be >= 2, got " + std::to_string(n));
    if (n > std::numeric_limits<std::uint32_t>::max())
      throw InvalidInput("modulus exceeds 32 bits: " + std::to_string(n));
    order_ = saturating_mul(order_, n);
  }
}

RingSpec RingSpec::canonical() const {
  auto sorted = moduli_;
  std::sort(sorted.begin(), sorted.end());
  return RingSpec(std::move(sorted));
}

std::string RingSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(moduli_[i]);
  }
  return out;
}

std::uint64_t AbelianGroupSpec::order() const {
  std::uint64_t n = 1;
  for (auto d : factors) n = saturating_mul(n, d);
  return n;
}

// ---------------------------------------------------------------- elements

Element make_element(const RingSpec& ring, std::vector<std::int64_t> values) {
  if (values.size() != ring.rank())
    throw InvalidInput("element has " + std::to_string(values.size()) +
                       " coordinates, ring has rank " + std::to_string(ring.rank()));
  Element e;
  e.residues.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto n = static_cast<std::int64_t>(ring.modulus(i));
    e.residues.push_back(static_cast<Residue>(((values[i] % n) + n) % n));
  }
  return e;
}

Element identity(const RingSpec& ring) {
  Element e;
  e.residues.assign(ring.rank(), 1);
  for (std::size_t i = 0; i < ring.rank(); ++i) e.residues[i] %= ring.modulus(i);
  return e;
}

Element zero(const RingSpec& ring) { return Element{std::vector<Residue>(ring.rank(), 0)}; }

void check_element(const RingSpec& ring, const Element& a) {
  if (a.residues.size() != ring.rank())
    throw InvalidInput("element dimension " + std::to_string(a.residues.size()) +
                       " does not match ring rank " + std::to_string(ring.rank()));
  for (std::size_t i = 0; i < ring.rank(); ++i)
    if (a.residues[i] >= ring.modulus(i))
      throw InvalidInput("residue " + std::to_string(a.residues[i]) + " not reduced modulo " +
                         std::to_string(ring.modulus(i)));
}

std::uint64_t element_index(const RingSpec& ring, const Element& a) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < ring.rank(); ++i) idx = idx * ring.modulus(i) + a.residues[i];
  return idx;
}

Element element_at(const RingSpec& ring, std::uint64_t index) {
  Element e;
  e.residues.resize(ring.rank());
  for (std::size_t i = ring.rank(); i-- > 0;) {
    e.residues[i] = index % ring.modulus(i);
    index /= ring.modulus(i);
  }
  return e;
}

std::vector<std::uint64_t> theta_form(const RingSpec& ring, const Element& a) {
  std::vector<std::uint64_t> out(a.residues.begin(), a.residues.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i] == 0) out[i] = ring.modulus(i);
  return out;
}

std::string format_element(const RingSpec& ring, const Element& a) {
  (void)ring;
  if (a.residues.size() == 1) return std::to_string(a.residues[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < a.residues.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.residues[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------- number theory

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) result = mulmod(result, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return result;
}

std::uint64_t gcd_with_zero_convention(std::uint64_t residue, std::uint64_t n) {
  return std::gcd(residue % n, n);  // gcd(0, n) = n
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  while (exp--) out *= base;
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::size_t divisor_count(std::uint64_t n) {
  std::size_t count = 1;
  for (auto [p, e] : factorize(n)) count *= e + 1;
  return count;
}

unsigned pot(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) throw InvalidInput("pot: " + std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidInput("pot: n must be positive");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

std::uint64_t crt_solve(std::span<const Congruence> system) {
  std::uint64_t x = 0;
  std::uint64_t m = 1;
  for (const auto& c : system) {
    if (c.modulus == 0) throw InvalidInput("crt_solve: modulus must be positive");
    if (std::gcd(m, c.modulus) != 1)
      throw InvalidInput("crt_solve: moduli are not pairwise coprime (" + std::to_string(c.modulus) +
                         ")");
    const unsigned __int128 combined = static_cast<unsigned __int128>(m) * c.modulus;
    if (combined > std::numeric_limits<std::uint64_t>::max())
      throw InvalidInput("crt_solve: modulus product overflows");
    // x' = x + m * ((r - x) * m^{-1} mod n)
    const std::uint64_t n = c.modulus;
    const std::uint64_t r = c.residue % n;
    const std::uint64_t diff = (r + n - x % n) % n;
    const std::uint64_t k = mulmod(diff, mod_inverse(m % n, n), n);
    x = static_cast<std::uint64_t>(x + static_cast<unsigned __int128>(m) * k);
    m = static_cast<std::uint64_t>(combined);
  }
  return m == 0 ? 0 : x % m;
}

std::vector<std::uint64_t> invariant_factors(std::span<const std::uint64_t> cyclic_orders) {
  // prime -> exponents of the primary components
  std::map<std::uint64_t, std::vector<unsigned>> primary;
  for (auto c : cyclic_orders) {
    if (c == 0) throw InvalidInput("cyclic order must be positive");
    for (auto [p, e] : factorize(c)) primary[p].push_back(e);
  }
  std::size_t k = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    k = std::max(k, exps.size());
  }
  std::vector<std::uint64_t> out(k, 1);
  // out[k-1] is the largest factor.
  for (const auto& [p, exps] : primary)
    for (std::size_t j = 0; j < exps.size(); ++j) out[k - 1 - j] *= ipow(p, exps[j]);
  return out;
}

// ---------------------------------------------------------------- semigroup

Element mul(const RingSpec& ring, const Element& a, const Element& b) {
  check_element(ring, a);
  check_element(ring, b);
  Element c;
  c.residues.resize(ring.rank());
  for (std::size_t i = 0; i < ring.rank(); ++i)
    c.residues[i] = mulmod(a.residues[i], b.residues[i], ring.modulus(i));
  return c;
}

GcdProfile gcd_profile(const RingSpec& ring, const Element& a) {
  check_element(ring, a);
  GcdProfile g;
  g.entries.reserve(ring.rank());
  for (std::size_t i = 0; i < ring.rank(); ++i)
    g.entries.push_back(gcd_with_zero_convention(a.residues[i], ring.modulus(i)));
  return g;
}

bool is_unit(const RingSpec& ring, const Element& a) {
  const auto g = gcd_profile(ring, a);
  return std::all_of(g.entries.begin(), g.entries.end(), [](auto x) { return x == 1; });
}

Element inverse(const RingSpec& ring, const Element& unit) {
  if (!is_unit(ring, unit)) throw InvalidInput("inverse: element is not a unit");
  Element inv;
  inv.residues.resize(ring.rank());
  for (std::size_t i = 0; i < ring.rank(); ++i)
    inv.residues[i] = mod_inverse(unit.residues[i], ring.modulus(i));
  return inv;
}

std::vector<Element> all_elements(const RingSpec& ring, std::uint64_t cap) {
  check_cap("all_elements", ring.order(), cap);
  std::vector<Element> out;
  out.reserve(ring.order());
  for (std::uint64_t i = 0; i < ring.order(); ++i) out.push_back(element_at(ring, i));
  return out;
}

std::uint64_t unit_count(const RingSpec& ring) {
  std::uint64_t n = 1;
  for (auto m : ring.moduli()) n = saturating_mul(n, euler_phi(m));
  return n;
}

std::vector<Element> units(const RingSpec& ring, std::uint64_t cap) {
  check_cap("units", ring.order(), cap);
  std::vector<Element> out;
  out.reserve(unit_count(ring));
  for (std::uint64_t i = 0; i < ring.order(); ++i) {
    auto e = element_at(ring, i);
    if (is_unit(ring, e)) out.push_back(std::move(e));
  }
  return out;
}

UnitGroupStructure unit_group_structure(const RingSpec& ring, std::uint64_t cap) {
  const std::uint64_t unit_order = unit_count(ring);
  check_cap("unit_group_structure", unit_order, cap);

  // Cyclic pieces of each (Z/p^e)* embedded in coordinate i.
  struct Piece {
    std::uint64_t order;
    Element generator;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < ring.rank(); ++i) {
    const std::uint64_t n = ring.modulus(i);
    const auto factors = factorize(n);
    auto embed = [&](std::uint64_t pe, std::uint64_t g) {
      std::vector<Congruence> sys;
      for (auto [q, f] : factors) {
        const std::uint64_t qf = ipow(q, f);
        sys.push_back({qf, qf == pe ? g : 1});
      }
      Element e = identity(ring);
      e.residues[i] = crt_solve(sys);
      return e;
    };
    for (auto [p, e] : factors) {
      const std::uint64_t pe = ipow(p, e);
      if (p == 2) {
        if (e == 2) pieces.push_back({2, embed(pe, 3)});
        if (e >= 3) {
          pieces.push_back({2, embed(pe, pe - 1)});
          pieces.push_back({pe / 4, embed(pe, 5)});
        }
      } else {
        pieces.push_back({pe / p * (p - 1), embed(pe, primitive_root(p, e))});
      }
    }
  }

  auto power = [&](const Element& g, std::uint64_t k) {
    Element out = identity(ring);
    for (std::size_t i = 0; i < ring.rank(); ++i) out.residues[i] = powmod(g.residues[i], k, ring.modulus(i));
    return out;
  };

  // Primary components, grouped by prime, largest first.
  std::map<std::uint64_t, std::vector<Piece>> primary;
  for (const auto& piece : pieces)
    for (auto [p, f] : factorize(piece.order)) {
      const std::uint64_t pf = ipow(p, f);
      primary[p].push_back({pf, power(piece.generator, piece.order / pf)});
    }
  std::size_t k = 0;
  for (auto& [p, list] : primary) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Piece& a, const Piece& b) { return a.order > b.order; });
    k = std::max(k, list.size());
  }

  UnitGroupStructure out;
  out.group.factors.assign(k, 1);
  out.generators.assign(k, identity(ring));
  for (const auto& [p, list] : primary)
    for (std::size_t j = 0; j < list.size(); ++j) {
      const std::size_t slot = k - 1 - j;
      out.group.factors[slot] *= list[j].order;
      out.generators[slot] = mul(ring, out.generators[slot], list[j].generator);
    }

  // Self-check: each generator has exact order d_j and the induced map is a
  // bijection onto the enumerated units.
  for (std::size_t j = 0; j < k; ++j) {
    const auto& g = out.generators[j];
    const auto d = out.group.factors[j];
    if (!is_unit(ring, g) || power(g, d) != identity(ring))
      throw std::logic_error("unit_group_structure: generator order check failed");
  }
  if (out.group.order() != unit_order)
    throw std::logic_error("unit_group_structure: factor product differs from |U|");
  std::vector<std::uint64_t> image;
  image.reserve(unit_order);
  std::function<void(std::size_t, const Element&)> walk = [&](std::size_t j, const Element& acc) {
    if (j == k) {
      if (!is_unit(ring, acc)) throw std::logic_error("unit_group_structure: image is not a unit");
      image.push_back(element_index(ring, acc));
      return;
    }
    Element cur = acc;
    for (std::uint64_t e = 0; e < out.group.factors[j]; ++e) {
      walk(j + 1, cur);
      cur = mul(ring, cur, out.generators[j]);
    }
  };
  walk(0, identity(ring));
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end())
    throw std::logic_error("unit_group_structure: generator map is not injective");
  if (image.size() != unit_order) throw std::logic_error("unit_group_structure: map is not surjective");
  return out;
}

RingInvariants ring_invariants(const RingSpec& ring) {
  RingInvariants inv;
  for (auto n : ring.moduli()) {
    const unsigned v = pot(2, n);
    if (v == 1) ++inv.p2;
    if (v >= 1) ++inv.delta;
    if (v >= 1 && v <= 3) ++inv.conj_bound;
  }
  return inv;
}

}  // namespace davenport
