#include "sl2zn/sl2.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "sl2zn/errors.hpp"

namespace sl2zn {

namespace {

void require_same_modulus(const SL2Mat& x, const SL2Mat& y) {
  if (x.modulus() != y.modulus()) {
    throw Error(Errc::modulus_mismatch,
                std::to_string(x.modulus()) + " vs " + std::to_string(y.modulus()));
  }
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  for (auto& p : parts) {
    while (!p.empty() && p.front() == ' ') p.remove_prefix(1);
    while (!p.empty() && p.back() == ' ') p.remove_suffix(1);
  }
  return parts;
}

}  // namespace

SL2Mat::SL2Mat(i64 n, i64 a, i64 b, i64 c, i64 d) : n_(n) {
  check_modulus(n);
  a_ = mod_floor(a, n);
  b_ = mod_floor(b, n);
  c_ = mod_floor(c, n);
  d_ = mod_floor(d, n);
  if (mod_floor(mul_mod(a_, d_, n) - mul_mod(b_, c_, n), n) != 1 % n) {
    throw Error(Errc::not_in_group, "determinant of " + to_string() + " is not 1 mod " + std::to_string(n));
  }
}

SL2Mat SL2Mat::identity(i64 n) { return {n, 1, 0, 0, 1}; }

SL2Mat SL2Mat::operator*(const SL2Mat& y) const {
  require_same_modulus(*this, y);
  const i64 n = n_;
  auto dot = [n](i64 p, i64 q, i64 r, i64 s) { return mod_floor(mul_mod(p, q, n) + mul_mod(r, s, n), n); };
  return {Unchecked{}, n, dot(a_, y.a_, b_, y.c_), dot(a_, y.b_, b_, y.d_), dot(c_, y.a_, d_, y.c_),
          dot(c_, y.b_, d_, y.d_)};
}

SL2Mat SL2Mat::operator-() const {
  return {Unchecked{}, n_, mod_floor(-a_, n_), mod_floor(-b_, n_), mod_floor(-c_, n_), mod_floor(-d_, n_)};
}

SL2Mat SL2Mat::inverse() const {
  return {Unchecked{}, n_, d_, mod_floor(-b_, n_), mod_floor(-c_, n_), a_};
}

SL2Mat SL2Mat::pow(i64 e) const {
  SL2Mat base = e < 0 ? inverse() : *this;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  SL2Mat result = identity(n_);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::string SL2Mat::to_string() const {
  std::ostringstream os;
  os << a_ << ',' << b_ << ',' << c_ << ',' << d_;
  return os.str();
}

SL2Mat parse_matrix(i64 n, std::string_view text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw Error(Errc::parse_error, "expected a,b,c,d: '" + std::string(text) + "'");
  i64 v[4];
  for (int i = 0; i < 4; ++i) {
    const auto p = parts[static_cast<std::size_t>(i)];
    const auto* first = p.data();
    if (!p.empty() && p.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, p.data() + p.size(), v[i]);
    if (ec != std::errc() || ptr != p.data() + p.size() || p.empty()) {
      throw Error(Errc::parse_error, "bad matrix entry '" + std::string(p) + "'");
    }
  }
  // reduce first so that large entries do not overflow the determinant
  return {n, mod_floor(v[0], n), mod_floor(v[1], n), mod_floor(v[2], n), mod_floor(v[3], n)};
}

bool equal_up_to_sign(const SL2Mat& x, const SL2Mat& y) { return x == y || x == -y; }

SL2Int::SL2Int(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1) {
    throw Error(Errc::not_in_group, "determinant of " + to_string() + " is not 1");
  }
}

SL2Int SL2Int::operator*(const SL2Int& y) const {
  return {a_ * y.a_ + b_ * y.c_, a_ * y.b_ + b_ * y.d_, c_ * y.a_ + d_ * y.c_, c_ * y.b_ + d_ * y.d_};
}

std::string SL2Int::to_string() const {
  return a_.str() + ',' + b_.str() + ',' + c_.str() + ',' + d_.str();
}

SL2Int parse_int_matrix(std::string_view text) {
  const auto parts = split_commas(text);
  if (parts.size() != 4) throw Error(Errc::parse_error, "expected a,b,c,d: '" + std::string(text) + "'");
  BigInt v[4];
  for (int i = 0; i < 4; ++i) {
    std::string p(parts[static_cast<std::size_t>(i)]);
    if (!p.empty() && p.front() == '+') p.erase(0, 1);
    const bool ok = !p.empty() && p.find_first_not_of("-0123456789") == std::string::npos &&
                    p.find('-', 1) == std::string::npos && p != "-";
    if (!ok) throw Error(Errc::parse_error, "bad matrix entry '" + p + "'");
    v[i] = BigInt(p);
  }
  return {v[0], v[1], v[2], v[3]};
}

SL2Mat gen_s(i64 n) { return {n, 0, -1, 1, 0}; }
SL2Mat gen_t(i64 n) { return {n, 1, 1, 0, 1}; }

SL2Mat sigma(Residue l, const SL2Mat& m) {
  const i64 n = m.modulus();
  if (l.modulus() != n) throw Error(Errc::modulus_mismatch, "sigma");
  const i64 inv = mod_inv(l).value();
  return {n, m.a(), mul_mod(m.b(), l.value(), n), mul_mod(m.c(), inv, n), m.d()};
}

namespace detail {

std::pair<i64, i64> complete_row(i64 n, i64 c, i64 d) {
  // d' = d - m c is a unit; then (1/d', m/d') completes the row.
  const i64 m = coprime_shift(Residue(c, n), Residue(d, n));
  const i64 dinv = mod_inv(Residue(d - mul_mod(m, c, n), n)).value();
  return {dinv, mul_mod(m, dinv, n)};
}

}  // namespace detail

std::vector<SL2Mat> enumerate(i64 n) {
  std::vector<SL2Mat> out;
  for_each_element(n, [&](const SL2Mat& m) { out.push_back(m); });
  return out;
}

SL2Mat random_element(i64 n, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> dist(0, n - 1);
  while (true) {
    const i64 c = dist(rng), d = dist(rng);
    if (std::gcd(std::gcd(c, d), n) != 1) continue;
    const auto [a0, b0] = detail::complete_row(n, c, d);
    const i64 t = dist(rng);
    return {n, a0 + mul_mod(t, c, n), b0 + mul_mod(t, d, n), c, d};
  }
}

BigInt group_order(i64 n) {
  BigInt order = 1;
  for (const auto& f : factorize(n)) {
    const BigInt p = f.prime;
    order *= boost::multiprecision::pow(p, static_cast<unsigned>(3 * f.exponent - 2)) * (p * p - 1);
  }
  return order;
}

BigInt genus_prime_power(i64 p, int v) {
  if (v < 1 || !is_prime(p)) throw Error(Errc::unsupported, "not a prime power");
  const BigInt bp = p;
  const BigInt q = boost::multiprecision::pow(bp, static_cast<unsigned>(v));
  if (q < 3) throw Error(Errc::unsupported, "genus formula needs p^v >= 3");
  using boost::multiprecision::pow;
  const auto uv = static_cast<unsigned>(v);
  const BigInt num = pow(bp, 3 * uv) - pow(bp, 3 * uv - 2) - 6 * pow(bp, 2 * uv) + 6 * pow(bp, 2 * uv - 2);
  if (num % 24 != 0) throw Error(Errc::unsupported, "genus formula is not integral");
  return 1 + num / 24;
}

BigInt genus(i64 n) {
  if (n < 3) throw Error(Errc::unsupported, "genus needs n >= 3");
  const BigInt num = group_order(n) * (n - 6);
  const BigInt den = BigInt(24) * n;
  if (num % den != 0) throw Error(Errc::unsupported, "genus formula is not integral");
  return 1 + num / den;
}

PrimaryGenerators primary_generators(i64 n, i64 p) {
  if (p < 2 || n % p != 0) {
    throw Error(Errc::not_a_factor, std::to_string(p) + " does not divide " + std::to_string(n));
  }
  const i64 cp = idempotents(n).for_prime(p).c.value();
  const SL2Mat s = gen_s(n);
  const SL2Mat t_p = gen_t(n).pow(cp);
  const SL2Mat s_p = s.pow(2) * (s * gen_t(n).pow(1 - cp)).pow(3);
  return {t_p, s_p};
}

SL2Mat reduce_mod(const SL2Mat& m, i64 divisor) {
  check_modulus(divisor);
  if (m.modulus() % divisor != 0) {
    throw Error(Errc::not_a_divisor,
                std::to_string(divisor) + " does not divide " + std::to_string(m.modulus()));
  }
  return {divisor, m.a(), m.b(), m.c(), m.d()};
}

SL2Mat reduce_mod(const SL2Int& m, i64 n) {
  check_modulus(n);
  auto r = [n](const BigInt& x) {
    BigInt y = x % n;
    if (y < 0) y += n;
    return y.convert_to<i64>();
  };
  return {n, r(m.a()), r(m.b()), r(m.c()), r(m.d())};
}

std::vector<SL2Mat> crt_split(const SL2Mat& m) {
  std::vector<SL2Mat> parts;
  for (const auto& f : factorize(m.modulus())) parts.push_back(reduce_mod(m, f.value()));
  return parts;
}

SL2Mat crt_join(std::span<const SL2Mat> parts) {
  auto entry = [&](auto getter) {
    std::vector<std::pair<i64, i64>> pairs;
    for (const auto& p : parts) pairs.emplace_back(getter(p), p.modulus());
    return crt_combine(pairs);
  };
  const Residue a = entry([](const SL2Mat& x) { return x.a(); });
  const Residue b = entry([](const SL2Mat& x) { return x.b(); });
  const Residue c = entry([](const SL2Mat& x) { return x.c(); });
  const Residue d = entry([](const SL2Mat& x) { return x.d(); });
  return {a.modulus(), a.value(), b.value(), c.value(), d.value()};
}

}  // namespace sl2zn
