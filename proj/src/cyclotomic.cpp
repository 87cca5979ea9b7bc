#include "sl2zn/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "sl2zn/errors.hpp"

namespace sl2zn {

namespace {

void check_conductor(i64 m) {
  if (m < 1 || m > kMaxConductor) {
    throw Error(Errc::modulus_out_of_range, "conductor " + std::to_string(m) + " outside [1, " +
                                                std::to_string(kMaxConductor) + "]");
  }
}

std::vector<i64> compute_cyclotomic(i64 m) {
  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<BigInt> p(static_cast<std::size_t>(m) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (i64 d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& q = cyclotomic_poly(d);
    const std::size_t dq = q.size() - 1;
    const std::size_t dp = p.size() - 1;
    std::vector<BigInt> quot(dp - dq + 1, 0);
    for (std::size_t i = dp + 1; i-- > dq;) {
      const BigInt c = p[i];
      quot[i - dq] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = std::move(quot);
  }
  std::vector<i64> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    if (c > std::numeric_limits<i64>::max() || c < std::numeric_limits<i64>::min()) {
      throw Error(Errc::overflow, "cyclotomic coefficient exceeds 64 bits");
    }
    out.push_back(static_cast<i64>(c));
  }
  return out;
}

// Reduces p modulo Phi_m in place and truncates to phi(m) coefficients.
void reduce(std::vector<BigInt>& p, i64 m) {
  const auto& phi_poly = cyclotomic_poly(m);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    const BigInt c = p[i];
    for (std::size_t j = 0; j < deg; ++j) {
      const i64 f = phi_poly[j];
      if (f == 0) continue;
      if (f == 1) {
        p[i - deg + j] -= c;
      } else if (f == -1) {
        p[i - deg + j] += c;
      } else {
        p[i - deg + j] -= c * f;
      }
    }
    p[i] = 0;
  }
  p.resize(deg, 0);
}

i64 lcm64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

std::string rational_string(const Rational& q) {
  const BigInt& den = boost::multiprecision::denominator(q);
  std::string s = boost::multiprecision::numerator(q).str();
  if (den != 1) s += "/" + den.str();
  return s;
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw Error(Errc::parse_error, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad rational '" + text + "'");
  }
}

}  // namespace

const std::vector<i64>& cyclotomic_poly(i64 m) {
  check_conductor(m);
  static std::mutex mutex;
  static std::map<i64, std::vector<i64>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // Computed outside the lock: the recursion needs the cache for divisors.
  auto poly = compute_cyclotomic(m);
  std::lock_guard lock(mutex);
  return cache.try_emplace(m, std::move(poly)).first->second;
}

Cyclo::Cyclo() : conductor_(1), num_(1, 0), den_(1) {}

Cyclo::Cyclo(i64 m, const Rational& q)
    : conductor_(m), num_(static_cast<std::size_t>(euler_phi((check_conductor(m), m))), 0), den_(1) {
  num_[0] = boost::multiprecision::numerator(q);
  den_ = boost::multiprecision::denominator(q);
}

Cyclo::Cyclo(i64 m, std::vector<BigInt> num, BigInt den)
    : conductor_(m), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Cyclo Cyclo::from_coeffs(i64 m, const std::vector<Rational>& coeffs) {
  check_conductor(m);
  BigInt den = 1;
  for (const auto& q : coeffs) {
    const BigInt& d = boost::multiprecision::denominator(q);
    den = den / boost::multiprecision::gcd(den, d) * d;
  }
  std::vector<BigInt> p;
  p.reserve(coeffs.size());
  for (const auto& q : coeffs) {
    p.push_back(boost::multiprecision::numerator(q) * (den / boost::multiprecision::denominator(q)));
  }
  reduce(p, m);
  return Cyclo(m, std::move(p), std::move(den));
}

void Cyclo::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  BigInt g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) g = boost::multiprecision::gcd(g, c);
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) c /= g;
  }
}

Rational Cyclo::coeff(std::size_t i) const { return Rational(num_.at(i), den_); }

std::vector<Rational> Cyclo::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (const auto& c : num_) out.emplace_back(c, den_);
  return out;
}

bool Cyclo::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const BigInt& c) { return c == 0; });
}

bool Cyclo::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const BigInt& c) { return c == 0; });
}

Cyclo Cyclo::lift(i64 m2) const {
  check_conductor(m2);
  if (m2 % conductor_ != 0) {
    throw Error(Errc::conductor_mismatch,
                "cannot lift conductor " + std::to_string(conductor_) + " to " + std::to_string(m2));
  }
  if (m2 == conductor_) return *this;
  const auto step = static_cast<std::size_t>(m2 / conductor_);
  std::vector<BigInt> p((num_.size() - 1) * step + 1, 0);
  for (std::size_t j = 0; j < num_.size(); ++j) p[j * step] = num_[j];
  reduce(p, m2);
  return Cyclo(m2, std::move(p), den_);
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& rhs) {
  if (rhs.conductor_ != conductor_) {
    const i64 m = lcm64(conductor_, rhs.conductor_);
    *this = lift(m);
    return *this += rhs.lift(m);
  }
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * rhs.den_ + rhs.num_[i] * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& rhs) { return *this += -rhs; }

Cyclo& Cyclo::operator*=(const Cyclo& rhs) {
  if (rhs.conductor_ != conductor_) {
    const i64 m = lcm64(conductor_, rhs.conductor_);
    *this = lift(m);
    return *this *= rhs.lift(m);
  }
  const std::size_t n = num_.size();
  std::vector<BigInt> p(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (rhs.num_[j] != 0) p[i + j] += num_[i] * rhs.num_[j];
    }
  }
  reduce(p, conductor_);
  num_ = std::move(p);
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Cyclo& Cyclo::operator/=(const Cyclo& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.conductor_ != b.conductor_) {
    const i64 m = lcm64(a.conductor_, b.conductor_);
    return a.lift(m) == b.lift(m);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

Cyclo Cyclo::scaled(const Rational& q) const {
  Cyclo r = *this;
  for (auto& c : r.num_) c *= boost::multiprecision::numerator(q);
  r.den_ *= boost::multiprecision::denominator(q);
  r.normalize();
  return r;
}

// z^-1 = (product of the other conjugates) / norm(z); the norm is rational.
Cyclo Cyclo::inverse() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  if (is_rational()) return Cyclo(conductor_, 1 / coeff(0));
  Cyclo rest(conductor_, 1);
  for (i64 l = 2; l < conductor_; ++l) {
    if (std::gcd(l, conductor_) == 1) rest *= galois(l, *this);
  }
  const Cyclo norm = rest * *this;
  return rest.scaled(1 / norm.coeff(0));
}

Cyclo Cyclo::pow(i64 e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo result(conductor_, 1);
  Cyclo base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Cyclo root_of_unity(i64 m, i64 k) {
  check_conductor(m);
  std::vector<Rational> p(static_cast<std::size_t>(mod_floor(k, m)) + 1, 0);
  p.back() = 1;
  return Cyclo::from_coeffs(m, p);
}

i64 order_of(const Cyclo& z) {
  const Cyclo one(z.conductor(), 1);
  const i64 limit = lcm64(2, z.conductor());
  Cyclo w = z;
  for (i64 j = 1; j <= limit; ++j) {
    if (w == one) return j;
    w *= z;
  }
  throw Error(Errc::not_root_of_unity, to_string(z) + " is not a root of unity");
}

Cyclo galois(i64 l, const Cyclo& z) {
  const i64 m = z.conductor();
  const i64 lm = mod_floor(l, m);
  if (std::gcd(lm, m) != 1) {
    throw Error(Errc::not_invertible, std::to_string(l) + " is not a unit mod " + std::to_string(m));
  }
  std::vector<Rational> p(static_cast<std::size_t>(m), 0);
  for (std::size_t j = 0; j < z.degree(); ++j) {
    p[static_cast<std::size_t>(mul_mod(static_cast<i64>(j), lm, m))] += z.coeff(j);
  }
  return Cyclo::from_coeffs(m, p);
}

Cyclo sqrt_int(i64 q, i64 m) {
  check_conductor(m);
  if (q < 1) throw Error(Errc::unsupported, "sqrt_int needs a positive integer");
  // q = s^2 * 2^e * odd, with odd squarefree.
  i64 square = 1;
  i64 free = 1;
  for (const auto& pp : factorize(q)) {
    square *= ipow(pp.prime, pp.exponent / 2);
    if (pp.exponent % 2 == 1) free *= pp.prime;
  }
  const bool two = free % 2 == 0;
  const i64 odd = two ? free / 2 : free;
  auto need = [&](i64 d) {
    if (m % d != 0) {
      throw Error(Errc::insufficient_conductor, "sqrt(" + std::to_string(q) + ") needs xi_" +
                                                    std::to_string(d) + " in conductor " + std::to_string(m));
    }
  };
  Cyclo r(m, Rational(square));
  if (two) {
    need(8);
    r *= root_of_unity(m, m / 8) + root_of_unity(m, -m / 8);
  }
  if (odd > 1) {
    need(odd);
    Cyclo gauss(m, 0);
    for (i64 j = 0; j < odd; ++j) gauss += root_of_unity(m, (m / odd) * mul_mod(j, j, odd));
    if (odd % 4 == 3) {
      need(4);
      gauss *= root_of_unity(m, -m / 4);
    }
    r *= gauss;
  }
  if (embed_complex(r).real() < 0) r = -r;
  return r;
}

std::complex<double> embed_complex(const Cyclo& z) {
  std::complex<double> acc = 0;
  const double step = 2 * std::numbers::pi / static_cast<double>(z.conductor());
  for (std::size_t j = 0; j < z.degree(); ++j) {
    const Rational c = z.coeff(j);
    if (c == 0) continue;
    acc += c.convert_to<double>() * std::polar(1.0, step * static_cast<double>(j));
  }
  return acc;
}

std::vector<std::string> to_strings(const Cyclo& z) {
  std::vector<std::string> out;
  for (const auto& c : z.coeffs()) out.push_back(rational_string(c));
  return out;
}

Cyclo from_strings(i64 m, const std::vector<std::string>& coeffs) {
  check_conductor(m);
  const auto phi = static_cast<std::size_t>(euler_phi(m));
  if (coeffs.size() != phi) {
    throw Error(Errc::parse_error, "conductor " + std::to_string(m) + " needs " + std::to_string(phi) +
                                       " coefficients, got " + std::to_string(coeffs.size()));
  }
  std::vector<Rational> p;
  p.reserve(coeffs.size());
  for (const auto& s : coeffs) p.push_back(parse_rational(s));
  return Cyclo::from_coeffs(m, p);
}

std::string to_string(const Cyclo& z) {
  std::string out;
  for (std::size_t j = 0; j < z.degree(); ++j) {
    const Rational c = z.coeff(j);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    out += rational_string(c);
    if (j > 0) out += "*z^" + std::to_string(j);
  }
  if (out.empty()) out = "0";
  return out + " (M=" + std::to_string(z.conductor()) + ")";
}

}  // namespace sl2zn
