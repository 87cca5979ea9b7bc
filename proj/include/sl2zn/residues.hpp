#pragma once

// Exact arithmetic in Z/nZ: inverses, factorization, CRT, idempotents and
// the coprime-shift lemma used by the general decomposition.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sl2zn {

using i64 = std::int64_t;

// Moduli are bounded so that products of two residues fit in 64 bits.
inline constexpr i64 kMaxModulus = 1'000'000'000;

// Throws Errc::modulus_out_of_range unless 1 <= n <= kMaxModulus.
void check_modulus(i64 n);

// Canonical representative in [0, n).
constexpr i64 mod_floor(i64 x, i64 n) {
  i64 r = x % n;
  return r < 0 ? r + n : r;
}

// Representative in the balanced range (-n/2, n/2].
constexpr i64 balanced(i64 x, i64 n) {
  i64 r = mod_floor(x, n);
  return 2 * r > n ? r - n : r;
}

i64 mul_mod(i64 a, i64 b, i64 n);
i64 pow_mod(i64 base, i64 exp, i64 n);
i64 ipow(i64 base, int exp);

class Residue {
 public:
  Residue(i64 value, i64 modulus);

  i64 value() const { return value_; }
  i64 modulus() const { return modulus_; }
  bool invertible() const;
  Residue inverse() const;

  Residue operator+(Residue rhs) const;
  Residue operator-(Residue rhs) const;
  Residue operator*(Residue rhs) const;
  Residue operator-() const { return {-value_, modulus_}; }

  friend bool operator==(Residue, Residue) = default;

 private:
  void require_same(Residue rhs) const;

  i64 value_;
  i64 modulus_;
};

// result * x == 1; throws Errc::not_invertible when gcd(x, n) > 1.
Residue mod_inv(Residue x);

struct PrimePower {
  i64 prime;
  int exponent;

  i64 value() const { return ipow(prime, exponent); }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Trial division; primes strictly increasing, empty for n = 1.
std::vector<PrimePower> factorize(i64 n);

bool is_prime(i64 n);
bool is_prime_power(i64 n);

struct Idempotent {
  i64 prime;
  int exponent;
  Residue c;
};

// Orthogonal decomposition 1 = sum of c_p with c_p = 1 mod p^v and
// c_p = 0 modulo every other prime-power factor.
struct IdempotentSystem {
  i64 modulus;
  std::vector<Idempotent> parts;

  const Idempotent& for_prime(i64 p) const;
};

IdempotentSystem idempotents(i64 n);

// Smallest m in [0, n) found by the per-prime CRT rule (M_p = 0 when p does
// not divide d, else 1) such that gcd(d - m c, n) = 1. Throws Errc::no_shift
// when gcd(c, d, n) > 1.
i64 coprime_shift(Residue c, Residue d);

// Pairs are (residue, modulus); moduli must be pairwise coprime.
Residue crt_combine(std::span<const std::pair<i64, i64>> pairs);

// Smallest x in [0, n) with a x = b (mod n), if any.
std::optional<i64> solve_linear(i64 a, i64 b, i64 n);

// Smallest generating set of (Z/nZ)^*: a single primitive root when the
// group is cyclic, otherwise the lexicographically smallest generating pair.
std::vector<i64> unit_group_generators(i64 n);

i64 euler_phi(i64 n);

}  // namespace sl2zn
