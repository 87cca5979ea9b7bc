#pragma once

// Exact arithmetic in cyclotomic fields Q(xi_M), xi_M = exp(2 pi i / M),
// in the power basis 1, xi, ..., xi^{phi(M)-1} modulo the cyclotomic
// polynomial Phi_M.

#include <complex>
#include <string>
#include <vector>

#include "sl2zn/bigint.hpp"
#include "sl2zn/residues.hpp"

namespace sl2zn {

inline constexpr i64 kMaxConductor = 1 << 16;

// Coefficients of Phi_M, constant term first. Cached per M.
const std::vector<i64>& cyclotomic_poly(i64 m);

class Cyclo {
 public:
  // Zero of Q = Q(xi_1).
  Cyclo();
  // The rational q in conductor m.
  Cyclo(i64 m, const Rational& q);
  // Any polynomial in xi_m with rational coefficients (any length).
  static Cyclo from_coeffs(i64 m, const std::vector<Rational>& coeffs);

  i64 conductor() const { return conductor_; }
  std::size_t degree() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  std::vector<Rational> coeffs() const;
  bool is_zero() const;
  bool is_rational() const;

  // The same number in conductor m2; requires conductor() | m2.
  Cyclo lift(i64 m2) const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& rhs);
  Cyclo& operator-=(const Cyclo& rhs);
  Cyclo& operator*=(const Cyclo& rhs);
  Cyclo& operator/=(const Cyclo& rhs);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  friend bool operator==(const Cyclo& a, const Cyclo& b);

  Cyclo scaled(const Rational& q) const;
  Cyclo inverse() const;
  Cyclo pow(i64 e) const;

 private:
  Cyclo(i64 m, std::vector<BigInt> num, BigInt den);
  void normalize();

  i64 conductor_;
  std::vector<BigInt> num_;  // length phi(conductor_)
  BigInt den_;               // > 0, coprime to the content of num_
};

Cyclo root_of_unity(i64 m, i64 k);

// Least j >= 1 with z^j = 1; throws Errc::not_root_of_unity if none up to lcm(2, M).
i64 order_of(const Cyclo& z);

// The automorphism xi_M -> xi_M^L; throws Errc::not_invertible unless gcd(L, M) = 1.
Cyclo galois(i64 l, const Cyclo& z);

// Positive square root of q in conductor m via Gauss sums and sqrt 2 = xi_8 + xi_8^-1.
// Throws Errc::insufficient_conductor when Q(xi_m) does not contain it.
Cyclo sqrt_int(i64 q, i64 m);

std::complex<double> embed_complex(const Cyclo& z);

// "num/den" (or "num") per power-basis coefficient.
std::vector<std::string> to_strings(const Cyclo& z);
Cyclo from_strings(i64 m, const std::vector<std::string>& coeffs);

std::string to_string(const Cyclo& z);

}  // namespace sl2zn
