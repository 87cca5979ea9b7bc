#include "sl2zn/residues.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sl2zn/errors.hpp"

namespace sl2zn {

void check_modulus(i64 n) {
  if (n < 1 || n > kMaxModulus) {
    throw Error(Errc::modulus_out_of_range, "modulus " + std::to_string(n) + " outside [1, 1e9]");
  }
}

i64 mul_mod(i64 a, i64 b, i64 n) {
  return static_cast<i64>((static_cast<__int128>(mod_floor(a, n)) * mod_floor(b, n)) % n);
}

i64 pow_mod(i64 base, i64 exp, i64 n) {
  i64 result = 1 % n;
  base = mod_floor(base, n);
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Residue::Residue(i64 value, i64 modulus) : modulus_(modulus) {
  check_modulus(modulus);
  value_ = mod_floor(value, modulus);
}

void Residue::require_same(Residue rhs) const {
  if (modulus_ != rhs.modulus_) {
    throw Error(Errc::modulus_mismatch,
                std::to_string(modulus_) + " vs " + std::to_string(rhs.modulus_));
  }
}

bool Residue::invertible() const { return std::gcd(value_, modulus_) == 1; }

Residue Residue::inverse() const { return mod_inv(*this); }

Residue Residue::operator+(Residue rhs) const {
  require_same(rhs);
  return {value_ + rhs.value_, modulus_};
}

Residue Residue::operator-(Residue rhs) const {
  require_same(rhs);
  return {value_ - rhs.value_, modulus_};
}

Residue Residue::operator*(Residue rhs) const {
  require_same(rhs);
  return {mul_mod(value_, rhs.value_, modulus_), modulus_};
}

Residue mod_inv(Residue x) {
  const i64 n = x.modulus();
  // extended Euclid on (x, n)
  i64 r0 = n, r1 = x.value();
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 != 1) {
    throw Error(Errc::not_invertible,
                std::to_string(x.value()) + " mod " + std::to_string(n));
  }
  return {t0, n};
}

std::vector<PrimePower> factorize(i64 n) {
  check_modulus(n);
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

bool is_prime_power(i64 n) { return n >= 2 && factorize(n).size() == 1; }

const Idempotent& IdempotentSystem::for_prime(i64 p) const {
  for (const auto& part : parts) {
    if (part.prime == p) return part;
  }
  throw Error(Errc::not_a_factor, std::to_string(p) + " does not divide " + std::to_string(modulus));
}

IdempotentSystem idempotents(i64 n) {
  IdempotentSystem sys{n, {}};
  const auto factors = factorize(n);
  for (const auto& f : factors) {
    std::vector<std::pair<i64, i64>> pairs;
    pairs.reserve(factors.size());
    for (const auto& g : factors) {
      pairs.emplace_back(g.prime == f.prime ? 1 : 0, g.value());
    }
    sys.parts.push_back({f.prime, f.exponent, crt_combine(pairs)});
  }
  return sys;
}

i64 coprime_shift(Residue c, Residue d) {
  if (c.modulus() != d.modulus()) {
    throw Error(Errc::modulus_mismatch, "coprime_shift");
  }
  const i64 n = c.modulus();
  if (std::gcd(std::gcd(c.value(), d.value()), n) != 1) {
    throw Error(Errc::no_shift, "gcd(c, d, n) > 1");
  }
  auto works = [&](i64 m) { return std::gcd(mod_floor(d.value() - mul_mod(m, c.value(), n), n), n) == 1; };

  std::vector<std::pair<i64, i64>> pairs;
  for (const auto& f : factorize(n)) {
    pairs.emplace_back(d.value() % f.prime == 0 ? 1 : 0, f.value());
  }
  const i64 m = crt_combine(pairs).value();
  if (works(m)) return m;
  // Unreachable for rows of SL2 matrices; kept as a deterministic fallback.
  for (i64 k = 0; k < n; ++k) {
    if (works(k)) return k;
  }
  throw Error(Errc::no_shift, "no shift found");
}

Residue crt_combine(std::span<const std::pair<i64, i64>> pairs) {
  i64 value = 0;
  i64 modulus = 1;
  for (const auto& [r, m] : pairs) {
    check_modulus(m);
    if (std::gcd(modulus, m) != 1) {
      throw Error(Errc::not_coprime, std::to_string(modulus) + " and " + std::to_string(m));
    }
    const i64 combined = modulus * m;
    check_modulus(combined);
    // value + modulus * t = r (mod m)
    const i64 inv = mod_inv(Residue(modulus, m)).value();
    const i64 t = mul_mod(mod_floor(r - value, m), inv, m);
    value = mod_floor(value + mul_mod(modulus, t, combined), combined);
    modulus = combined;
  }
  return {value, modulus};
}

std::optional<i64> solve_linear(i64 a, i64 b, i64 n) {
  a = mod_floor(a, n);
  b = mod_floor(b, n);
  const i64 g = std::gcd(a, n);
  if (b % g != 0) return std::nullopt;
  const i64 n2 = n / g;
  if (n2 == 1) return 0;
  const i64 x = mul_mod(b / g, mod_inv(Residue(a / g, n2)).value(), n2);
  return x;  // smallest solution; the others differ by multiples of n2
}

i64 euler_phi(i64 n) {
  i64 phi = n;
  for (const auto& f : factorize(n)) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

namespace {

// Size of the subgroup of (Z/nZ)^* generated by gens.
i64 generated_size(const std::vector<i64>& gens, i64 n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<i64> frontier{1 % n};
  seen[static_cast<std::size_t>(1 % n)] = 1;
  i64 count = 1;
  while (!frontier.empty()) {
    const i64 x = frontier.back();
    frontier.pop_back();
    for (i64 g : gens) {
      const i64 y = mul_mod(x, g, n);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++count;
        frontier.push_back(y);
      }
    }
  }
  return count;
}

}  // namespace

std::vector<i64> unit_group_generators(i64 n) {
  check_modulus(n);
  if (n <= 2) return {1 % n};
  const i64 phi = euler_phi(n);
  std::vector<i64> units;
  for (i64 x = 2; x < n; ++x) {
    if (std::gcd(x, n) == 1) units.push_back(x);
  }
  const auto phi_factors = factorize(phi);
  auto is_primitive = [&](i64 g) {
    return std::all_of(phi_factors.begin(), phi_factors.end(),
                       [&](const PrimePower& q) { return pow_mod(g, phi / q.prime, n) != 1; });
  };
  for (i64 g : units) {
    if (is_primitive(g)) return {g};
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      if (generated_size({units[i], units[j]}, n) == phi) return {units[i], units[j]};
    }
  }
  // Groups needing three or more generators: greedy closure.
  std::vector<i64> gens;
  i64 size = 1;
  for (i64 g : units) {
    auto trial = gens;
    trial.push_back(g);
    const i64 s = generated_size(trial, n);
    if (s > size) {
      gens = std::move(trial);
      size = s;
    }
    if (size == phi) break;
  }
  return gens;
}

}  // namespace sl2zn
