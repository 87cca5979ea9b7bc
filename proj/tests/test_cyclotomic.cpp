#include <set>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "sl2zn/cyclotomic.hpp"
#include "sl2zn/errors.hpp"

using namespace sl2zn;

namespace {

Cyclo random_elt(std::mt19937_64& rng, i64 m) {
  const auto phi = static_cast<std::size_t>(euler_phi(m));
  std::vector<Rational> c;
  for (std::size_t i = 0; i < phi; ++i) {
    const auto num = static_cast<long long>(rng() % 11) - 5;
    const auto den = static_cast<long long>(rng() % 4) + 1;
    c.emplace_back(num, den);
  }
  return Cyclo::from_coeffs(m, c);
}

Cyclo random_nonzero(std::mt19937_64& rng, i64 m) {
  for (;;) {
    Cyclo z = random_elt(rng, m);
    if (!z.is_zero()) return z;
  }
}

std::complex<double> zeta(i64 m, i64 k) {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
}

bool close(std::complex<double> a, std::complex<double> b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_poly(12) == std::vector<i64>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_poly(7) == std::vector<i64>(7, 1));
  // Oracle: Phi_M vanishes at every primitive M-th root and nowhere else among M-th roots.
  for (i64 m = 1; m <= 120; ++m) {
    const auto& p = cyclotomic_poly(m);
    REQUIRE(static_cast<i64>(p.size()) - 1 == euler_phi(m));
    CHECK(p.back() == 1);
    for (i64 k = 0; k < m; ++k) {
      std::complex<double> v = 0;
      for (std::size_t j = p.size(); j-- > 0;) v = v * zeta(m, k) + static_cast<double>(p[j]);
      CHECK((std::abs(v) < 1e-6) == (std::gcd(k, m) == 1));
    }
  }
  CHECK_THROWS_AS(cyclotomic_poly(0), Error);
}

TEST_CASE("roots of unity") {
  for (i64 m : {1, 2, 3, 8, 24, 40}) {
    CHECK(root_of_unity(m, 1) * root_of_unity(m, m - 1) == Cyclo(m, 1));
    CHECK(root_of_unity(m, m) == Cyclo(m, 1));
    for (i64 k = 0; k < m; ++k) CHECK(close(embed_complex(root_of_unity(m, k)), zeta(m, k), 1e-12));
  }
  CHECK(order_of(root_of_unity(8, 1)) == 8);
  CHECK(order_of(Cyclo(8, -1)) == 2);
  CHECK(order_of(Cyclo(1, -1)) == 2);
  CHECK(order_of(root_of_unity(24, 10)) == 12);
  CHECK(order_of(-root_of_unity(5, 1)) == 10);
  CHECK_THROWS_AS(order_of(Cyclo(8, 2)), Error);
  CHECK_THROWS_AS(order_of(Cyclo(8, 0)), Error);
  CHECK(close(embed_complex(root_of_unity(4, 1)), {0, 1}, 1e-12));
  CHECK(embed_complex(Cyclo(5, 1)) == std::complex<double>(1, 0));
}

TEST_CASE("lifting scales indices") {
  for (i64 n : {3, 4, 5, 8, 12}) {
    for (i64 k = 1; k <= 4; ++k) {
      for (i64 e = 0; e < n; ++e) CHECK(root_of_unity(n, e).lift(k * n) == root_of_unity(k * n, k * e));
    }
  }
  CHECK_THROWS_AS(root_of_unity(8, 1).lift(12), Error);
  // Mixed conductors auto-lift to the lcm.
  const Cyclo sum = root_of_unity(3, 1) + root_of_unity(4, 1);
  CHECK(sum.conductor() == 12);
  CHECK(close(embed_complex(sum), zeta(3, 1) + zeta(4, 1), 1e-12));
  CHECK(root_of_unity(3, 1) == root_of_unity(6, 2));
}

TEST_CASE("field axioms") {
  std::mt19937_64 rng(7);
  for (i64 m : {8, 24, 40, 56}) {
    const Cyclo zero(m, 0);
    const Cyclo one(m, 1);
    for (int t = 0; t < 100; ++t) {
      const Cyclo a = random_elt(rng, m);
      const Cyclo b = random_elt(rng, m);
      const Cyclo c = random_elt(rng, m);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a - a == zero);
      CHECK(close(embed_complex(a * b), embed_complex(a) * embed_complex(b), 1e-9));
      CHECK(close(embed_complex(a + b), embed_complex(a) + embed_complex(b), 1e-9));
    }
  }
}

TEST_CASE("inverses") {
  std::mt19937_64 rng(11);
  for (i64 m : {8, 24, 40}) {
    for (int t = 0; t < 200; ++t) {
      const Cyclo z = random_nonzero(rng, m);
      CHECK(z.inverse() * z == Cyclo(m, 1));
    }
  }
  CHECK_THROWS_AS(Cyclo(8, 0).inverse(), Error);
  try {
    (void)(Cyclo(8, 1) / Cyclo(8, 0));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::division_by_zero);
  }
  CHECK(root_of_unity(12, 5).pow(-1) == root_of_unity(12, 7));
  CHECK(root_of_unity(12, 5).pow(12) == Cyclo(12, 1));
}

TEST_CASE("galois action") {
  std::mt19937_64 rng(13);
  const i64 m = 40;
  for (i64 l = 1; l < m; ++l) {
    if (std::gcd(l, m) != 1) {
      CHECK_THROWS_AS(galois(l, root_of_unity(m, 1)), Error);
      continue;
    }
    CHECK(galois(l, root_of_unity(m, 1)) == root_of_unity(m, l));
    CHECK(galois(l, Cyclo(m, Rational(3, 7))) == Cyclo(m, Rational(3, 7)));
    for (int t = 0; t < 10; ++t) {
      const Cyclo z = random_elt(rng, m);
      const Cyclo w = random_elt(rng, m);
      CHECK(galois(l, z * w) == galois(l, z) * galois(l, w));
      CHECK(galois(l, z + w) == galois(l, z) + galois(l, w));
      for (i64 l2 : {3, 7, 11}) CHECK(galois(l2, galois(l, z)) == galois(l * l2, z));
      // Oracle: the embedding of sigma_L(z) is the polynomial evaluated at zeta^L.
      std::complex<double> direct = 0;
      for (std::size_t j = 0; j < z.degree(); ++j) {
        direct += z.coeff(j).convert_to<double>() * zeta(m, l * static_cast<i64>(j));
      }
      CHECK(close(embed_complex(galois(l, z)), direct, 1e-9));
    }
  }
  CHECK(galois(-1, root_of_unity(m, 1)) == root_of_unity(m, m - 1));
  // Primitive roots are permuted.
  for (i64 l : {3, 7, 9}) {
    std::set<std::vector<std::string>> images;
    for (i64 k = 1; k < m; ++k) {
      if (std::gcd(k, m) == 1) images.insert(to_strings(galois(l, root_of_unity(m, k))));
    }
    CHECK(static_cast<i64>(images.size()) == euler_phi(m));
  }
}

TEST_CASE("galois action is compatible with lifting") {
  std::mt19937_64 rng(17);
  for (auto [n, m] : std::vector<std::pair<i64, i64>>{{8, 24}, {12, 48}, {5, 40}, {6, 42}}) {
    for (i64 l = 1; l < n; ++l) {
      if (std::gcd(l, n) != 1) continue;
      i64 l2 = l;
      while (std::gcd(l2, m) != 1) l2 += n;
      for (int t = 0; t < 5; ++t) {
        const Cyclo z = random_elt(rng, n);
        CHECK(galois(l2, z.lift(m)) == galois(l, z).lift(m));
      }
    }
  }
}

TEST_CASE("integer square roots") {
  CHECK(sqrt_int(1, 5) == Cyclo(5, 1));
  CHECK(sqrt_int(9, 1) == Cyclo(1, 3));
  const Cyclo r2 = sqrt_int(2, 8);
  CHECK(r2 * r2 == Cyclo(8, 2));
  CHECK(std::abs(embed_complex(r2) - std::sqrt(2.0)) < 1e-9);
  for (i64 q : {3, 5, 6, 7, 10, 11, 12, 15, 18, 30, 40}) {
    const Cyclo r = sqrt_int(q, 8 * q);
    CHECK(r * r == Cyclo(8 * q, q));
    CHECK(std::abs(embed_complex(r) - std::sqrt(static_cast<double>(q))) < 1e-9);
  }
  CHECK(sqrt_int(5, 5) * sqrt_int(5, 5) == Cyclo(5, 5));
  CHECK_THROWS_AS(sqrt_int(2, 4), Error);
  CHECK_THROWS_AS(sqrt_int(3, 3), Error);
  CHECK_THROWS_AS(sqrt_int(7, 8), Error);
  try {
    sqrt_int(2, 12);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::insufficient_conductor);
  }
}

TEST_CASE("string serialization") {
  std::mt19937_64 rng(19);
  for (i64 m : {1, 8, 24}) {
    for (int t = 0; t < 20; ++t) {
      const Cyclo z = random_elt(rng, m);
      CHECK(from_strings(m, to_strings(z)) == z);
    }
  }
  CHECK(to_strings(Cyclo(4, Rational(-3, 6))) == std::vector<std::string>{"-1/2", "0"});
  CHECK_THROWS_AS(from_strings(4, {"1"}), Error);
  CHECK_THROWS_AS(from_strings(4, {"1/0", "2"}), Error);
  CHECK_THROWS_AS(from_strings(4, {"x", "2"}), Error);
}
