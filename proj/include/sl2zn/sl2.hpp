#pragma once

// The matrix group SL2(Z/nZ) and its integer counterpart SL2(Z).

#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sl2zn/bigint.hpp"
#include "sl2zn/residues.hpp"

namespace sl2zn {

// A 2x2 matrix over Z/nZ with determinant 1. Entries are kept canonical in
// [0, n); the determinant is checked on construction.
class SL2Mat {
 public:
  SL2Mat(i64 n, i64 a, i64 b, i64 c, i64 d);

  static SL2Mat identity(i64 n);

  i64 modulus() const { return n_; }
  i64 a() const { return a_; }
  i64 b() const { return b_; }
  i64 c() const { return c_; }
  i64 d() const { return d_; }
  Residue ra() const { return {a_, n_}; }
  Residue rb() const { return {b_, n_}; }
  Residue rc() const { return {c_, n_}; }
  Residue rd() const { return {d_, n_}; }

  SL2Mat operator*(const SL2Mat& rhs) const;
  SL2Mat& operator*=(const SL2Mat& rhs) { return *this = *this * rhs; }
  SL2Mat operator-() const;
  SL2Mat inverse() const;
  SL2Mat pow(i64 e) const;

  friend bool operator==(const SL2Mat&, const SL2Mat&) = default;

  // Row-major "a,b,c,d".
  std::string to_string() const;

 private:
  struct Unchecked {};
  SL2Mat(Unchecked, i64 n, i64 a, i64 b, i64 c, i64 d) : n_(n), a_(a), b_(b), c_(c), d_(d) {}

  i64 n_, a_, b_, c_, d_;
};

// Parses "a,b,c,d" (integers, possibly negative) and reduces modulo n.
SL2Mat parse_matrix(i64 n, std::string_view text);

// Compare in SL2 / {+-1}.
bool equal_up_to_sign(const SL2Mat& x, const SL2Mat& y);

// An integer matrix with determinant exactly 1.
class SL2Int {
 public:
  SL2Int(BigInt a, BigInt b, BigInt c, BigInt d);

  static SL2Int identity() { return {1, 0, 0, 1}; }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  SL2Int operator*(const SL2Int& rhs) const;
  SL2Int operator-() const { return {-a_, -b_, -c_, -d_}; }
  SL2Int inverse() const { return {d_, -b_, -c_, a_}; }

  friend bool operator==(const SL2Int&, const SL2Int&) = default;

  std::string to_string() const;

 private:
  BigInt a_, b_, c_, d_;
};

SL2Int parse_int_matrix(std::string_view text);

SL2Mat gen_s(i64 n);  // (0, -1; 1, 0)
SL2Mat gen_t(i64 n);  // (1, 1; 0, 1)

// sigma_l(A, B; C, D) = (A, B l; C l^{-1}, D).
SL2Mat sigma(Residue l, const SL2Mat& m);

// Calls f once for every element of SL2(Z/nZ). Rows (c, d) with
// gcd(c, d, n) = 1 are visited in lexicographic order, then the n
// completions of the top row.
template <class F>
void for_each_element(i64 n, F&& f);

std::vector<SL2Mat> enumerate(i64 n);

// Uniformly random element.
SL2Mat random_element(i64 n, std::mt19937_64& rng);

// |SL2(Z/nZ)| = n^3 prod_{p | n} (1 - p^{-2}).
BigInt group_order(i64 n);

// Genus of X(p^v); throws Errc::unsupported for p^v < 3.
BigInt genus_prime_power(i64 p, int v);

// Genus of X(n) for n >= 3 via 1 + mu (n - 6) / (12 n), mu = |SL2(Z/nZ)| / 2.
BigInt genus(i64 n);

struct PrimaryGenerators {
  SL2Mat t;  // T^{c_p}
  SL2Mat s;  // S^2 (S T^{1 - c_p})^3
};

PrimaryGenerators primary_generators(i64 n, i64 p);

// Entrywise reduction to a divisor of the modulus.
SL2Mat reduce_mod(const SL2Mat& m, i64 divisor);
SL2Mat reduce_mod(const SL2Int& m, i64 n);

// Projections onto the prime-power factors (in factorize order) and the
// inverse CRT recombination.
std::vector<SL2Mat> crt_split(const SL2Mat& m);
SL2Mat crt_join(std::span<const SL2Mat> parts);

// ---------------------------------------------------------------------------

namespace detail {
// (a, b) with a d - b c = 1 (mod n) for a primitive row (c, d).
std::pair<i64, i64> complete_row(i64 n, i64 c, i64 d);
}  // namespace detail

template <class F>
void for_each_element(i64 n, F&& f) {
  check_modulus(n);
  for (i64 c = 0; c < n; ++c) {
    for (i64 d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1) continue;
      const auto [a0, b0] = detail::complete_row(n, c, d);
      for (i64 t = 0; t < n; ++t) {
        f(SL2Mat(n, a0 + mul_mod(t, c, n), b0 + mul_mod(t, d, n), c, d));
      }
    }
  }
}

}  // namespace sl2zn
