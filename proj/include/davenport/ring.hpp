#pragma once

// Arithmetic of R = Z_{n_1} + ... + Z_{n_r}, its multiplicative semigroup S_R
// and unit group U(S_R), plus the number theory the rest of the library uses.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace davenport {

using Residue = std::uint64_t;
using ElementIndex = std::uint32_t;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

class RingSpec {
public:
  explicit RingSpec(std::vector<std::uint64_t> moduli);

  std::size_t rank() const noexcept { return moduli_.size(); }
  std::uint64_t modulus(std::size_t i) const { return moduli_.at(i); }
  std::span<const std::uint64_t> moduli() const noexcept { return moduli_; }

  /// |S_R| = prod n_i, saturated at UINT64_MAX.
  std::uint64_t order() const noexcept { return order_; }

  /// Same ring with the moduli sorted ascending (D is permutation-invariant).
  RingSpec canonical() const;

  std::string to_string() const;  // "2,8"

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t order_ = 1;
};

/// A member of S_R. Residue i lives in [0, n_i - 1]; ordering is lexicographic
/// on residues, which coincides with the mixed-radix index order.
struct Element {
  std::vector<Residue> residues;

  auto operator<=>(const Element&) const = default;
};

Element make_element(const RingSpec& ring, std::vector<std::int64_t> values);
Element identity(const RingSpec& ring);
Element zero(const RingSpec& ring);
void check_element(const RingSpec& ring, const Element& a);

/// Mixed-radix position of `a`, first coordinate most significant.
std::uint64_t element_index(const RingSpec& ring, const Element& a);
Element element_at(const RingSpec& ring, std::uint64_t index);

/// Display form with representatives in [1, n_i] (n_i standing for 0).
std::vector<std::uint64_t> theta_form(const RingSpec& ring, const Element& a);
std::string format_element(const RingSpec& ring, const Element& a);

struct GcdProfile {
  std::vector<std::uint64_t> entries;
  friend bool operator==(const GcdProfile&, const GcdProfile&) = default;
};

struct RingInvariants {
  std::size_t p2 = 0;          // #{i : 2 || n_i}
  std::size_t delta = 0;       // #{i : 2 | n_i}
  std::size_t conj_bound = 0;  // #{i : pot_2(n_i) in [1,3]}
  friend bool operator==(const RingInvariants&, const RingInvariants&) = default;
};

/// Finite abelian group C_{d_1} + ... + C_{d_k}; an empty factor list is the
/// trivial group. Elements are k-tuples under componentwise addition.
struct AbelianGroupSpec {
  std::vector<std::uint64_t> factors;

  std::uint64_t order() const;
  friend bool operator==(const AbelianGroupSpec&, const AbelianGroupSpec&) = default;
};

/// Invariant factors of U(S_R) plus unit generators g_j of order d_j such that
/// (e_1..e_k) -> prod g_j^{e_j} is an isomorphism C_{d_1}+...+C_{d_k} -> U(S_R).
struct UnitGroupStructure {
  AbelianGroupSpec group;
  std::vector<Element> generators;
};

struct Congruence {
  std::uint64_t modulus;
  std::uint64_t residue;
};

// Number theory.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n);
std::uint64_t gcd_with_zero_convention(std::uint64_t residue, std::uint64_t n);
bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t euler_phi(std::uint64_t n);
std::size_t divisor_count(std::uint64_t n);

/// Largest k with p^k | n. Throws InvalidInput unless p is prime and n >= 1.
unsigned pot(std::uint64_t p, std::uint64_t n);

/// Unique x in [0, prod m - 1] with x = r (mod m) for every congruence.
std::uint64_t crt_solve(std::span<const Congruence> system);

/// Invariant-factor form (d_1 | d_2 | ... | d_k, all d_j >= 2) of a direct sum
/// of cyclic groups of the given orders. Orders equal to 1 are dropped.
std::vector<std::uint64_t> invariant_factors(std::span<const std::uint64_t> cyclic_orders);

// Semigroup operations.
Element mul(const RingSpec& ring, const Element& a, const Element& b);
GcdProfile gcd_profile(const RingSpec& ring, const Element& a);
bool is_unit(const RingSpec& ring, const Element& a);
Element inverse(const RingSpec& ring, const Element& unit);

std::vector<Element> all_elements(const RingSpec& ring,
                                  std::uint64_t cap = kDefaultEnumerationCap);
std::vector<Element> units(const RingSpec& ring, std::uint64_t cap = kDefaultEnumerationCap);
std::uint64_t unit_count(const RingSpec& ring);

UnitGroupStructure unit_group_structure(const RingSpec& ring,
                                        std::uint64_t cap = kDefaultEnumerationCap);

RingInvariants ring_invariants(const RingSpec& ring);

}  // namespace davenport
