#include <set>

#include "doctest.h"
#include "sl2zn/errors.hpp"
#include "sl2zn/presentations.hpp"

using namespace sl2zn;

namespace {

// Oracle: plain 2x2 integer products reduced mod n, letter by letter.
std::array<i64, 4> oracle_eval(const Relator& r, i64 n) {
  std::array<i64, 4> m{1, 0, 0, 1};
  for (Gen g : r) {
    std::array<i64, 4> x{};
    switch (g) {
      case Gen::s: x = {0, -1, 1, 0}; break;
      case Gen::s_inv: x = {0, 1, -1, 0}; break;
      case Gen::t: x = {1, 1, 0, 1}; break;
      case Gen::t_inv: x = {1, -1, 0, 1}; break;
    }
    m = {((m[0] * x[0] + m[1] * x[2]) % n + n) % n, ((m[0] * x[1] + m[1] * x[3]) % n + n) % n,
         ((m[2] * x[0] + m[3] * x[2]) % n + n) % n, ((m[2] * x[1] + m[3] * x[3]) % n + n) % n};
  }
  return m;
}

std::size_t order_of(std::string_view text) { return todd_coxeter(parse_presentation(text, "t")); }

}  // namespace

TEST_CASE("relators are freely reduced and print in the word grammar") {
  const Relator r = to_relator(parse_word("S T T^-1 S^-1 T^3"));
  CHECK(to_string(r) == "T^3");
  CHECK(to_string(to_relator(parse_word("S S T^-2 S^-1"))) == "S^2 T^-2 S^-1");
  CHECK(to_relator(parse_word("S^4")).size() == 4);
  CHECK(to_relator(parse_word("S^2 S^-2")).empty());
}

TEST_CASE("relations_rn") {
  const auto r5 = relations_rn(5);
  CHECK(r5.label == "R_5");
  CHECK(r5.relators.size() == 3);
  CHECK(to_string(r5.relators[0]) == "S^4");
  CHECK(to_string(r5.relators[1]) == "T^5");
  for (i64 n = 1; n <= 100; ++n) {
    const auto pr = relations_rn(n);
    REQUIRE(pr.relators.size() == 3);
    for (const auto& r : pr.relators) {
      const auto m = oracle_eval(r, n);
      CHECK(m == std::array<i64, 4>{1 % n, 0, 0, 1 % n});
    }
    CHECK(verify_in_matrix_group(pr, n).all_identity());
  }
  CHECK(todd_coxeter(relations_rn(1)) == 1);
}

TEST_CASE("matrix check reports I, -I and failures with witnesses") {
  const auto pr = parse_presentation("T^8\nS^2\n", "bad");
  const auto rep = verify_in_matrix_group(pr, 7);
  REQUIRE(rep.relators.size() == 2);
  CHECK(rep.relators[0].value == RelatorValue::other);
  CHECK(rep.relators[0].matrix == "1,1,0,1");
  CHECK(rep.relators[1].value == RelatorValue::minus_identity);
  CHECK_FALSE(rep.passed());
  CHECK(rep.count(RelatorValue::minus_identity) == 1);
}

TEST_CASE("presentation files") {
  const auto pr = parse_presentation("# comment\n\nS^4\nT^6 = 1\nS T^2 S T^-2 = T^2 S T^-2 S\n", "f");
  CHECK(pr.relators.size() == 3);
  CHECK_THROWS_AS(parse_presentation("# only\n", "e"), Error);
  CHECK_THROWS_AS(parse_presentation("S Q\n", "e"), Error);
  CHECK_THROWS_AS(parse_presentation("S = T = S\n", "e"), Error);
  CHECK_THROWS_AS(load_presentation("/nonexistent/file.txt"), Error);
}

TEST_CASE("builtin presentations") {
  CHECK_THROWS_AS(builtin_presentation("N7"), Error);
  const auto n5 = builtin_presentation("N5");
  CHECK(n5.relators == relations_rn(5).relators);
  const auto n6a = builtin_presentation("N6a");
  REQUIRE(n6a.relators.size() == 4);
  CHECK(n6a.relators[3] == to_relator(parse_word("S T^2 S T^-2") * parse_word("T^2 S T^-2 S").inverse()));
  CHECK(builtin_presentation("N9").relators.size() == 8);
  CHECK(builtin_presentation("N10").relators.size() == 7);
  for (const auto& key : builtin_keys()) {
    const auto pr = builtin_presentation(key);
    CHECK(pr.modulus > 0);
    const auto rep = verify_in_matrix_group(pr, pr.modulus);
    for (std::size_t i = 0; i < pr.relators.size(); ++i) {
      const auto m = oracle_eval(pr.relators[i], pr.modulus);
      const bool plus = m == std::array<i64, 4>{1, 0, 0, 1};
      const bool minus = m == std::array<i64, 4>{pr.modulus - 1, 0, 0, pr.modulus - 1};
      CHECK(rep.relators[i].value ==
            (plus ? RelatorValue::identity : minus ? RelatorValue::minus_identity : RelatorValue::other));
    }
  }
}

TEST_CASE("H-relator presentations") {
  CHECK_THROWS_AS(relations_prime_power(2, 1), Error);
  CHECK_THROWS_AS(relations_prime_power(6, 1), Error);
  CHECK(relations_prime_power(5, 1).relators.size() == 6);
  CHECK_THROWS_AS(relations_prime_power(9, 1), Error);
  CHECK(relations_prime_power(3, 2).relators.size() == 6);
  CHECK(relations_prime_power(2, 3).relators.size() == 3 + 3 + 2 + 2);
  for (auto [p, v] : std::vector<std::pair<i64, int>>{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}}) {
    const auto pr = relations_prime_power(p, v);
    CHECK(verify_in_matrix_group(pr, ipow(p, v)).all_identity());
    CHECK(pr.notes.size() == 3);
  }
}

TEST_CASE("todd_coxeter on small known groups") {
  CHECK(order_of("S\nT\n") == 1);
  CHECK(order_of("S\nT^7\n") == 7);
  CHECK(order_of("S^2\nT^3\nS T S T\n") == 6);
  CHECK(order_of("S^2\nT^2\nS T S T S T S T\n") == 8);
  CHECK(order_of("S^4\nT^4\nS T S^-1 T^-1\n") == 16);
  CHECK(order_of("S^2\nT^3\nS T S T S T S T S T\n") == 60);
  CHECK_THROWS_AS(todd_coxeter(parse_presentation("S^2\nT^3\n", "inf"), 2000), Error);
  try {
    todd_coxeter(parse_presentation("S^2\nT^3\n", "inf"), 2000);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cap_exceeded);
  }
}

TEST_CASE("R_n orders for small n and strategy agreement") {
  CHECK(todd_coxeter(relations_rn(2)) % 6 == 0);
  CHECK(todd_coxeter(relations_rn(3)) == 24);
  CHECK(todd_coxeter(relations_rn(4)) % 48 == 0);
  CHECK(todd_coxeter(relations_rn(5)) == 120);
  for (i64 n = 2; n <= 5; ++n) {
    const auto pr = relations_rn(n);
    const auto h = enumerate_cosets(pr, kDefaultCosetCap, Strategy::hlt);
    const auto f = enumerate_cosets(pr, kDefaultCosetCap, Strategy::felsch);
    CHECK(h.order == f.order);
    CHECK(is_permutation_representation(pr, h.table));
    CHECK(is_permutation_representation(pr, f.table));
  }
}

TEST_CASE("small cap forces lookahead without changing the answer") {
  const auto pr = relations_rn(5);
  CHECK(todd_coxeter(pr, 400, Strategy::hlt) == 120);
  CHECK(todd_coxeter(pr, 400, Strategy::felsch) == 120);
}

TEST_CASE("permutation representation check rejects broken tables") {
  const auto pr = relations_rn(3);
  auto res = enumerate_cosets(pr);
  REQUIRE(is_permutation_representation(pr, res.table));
  std::swap(res.table[0][2], res.table[1][2]);
  CHECK_FALSE(is_permutation_representation(pr, res.table));
}

TEST_CASE("builtin presentation orders") {
  for (const auto& key : builtin_keys()) {
    const auto pr = builtin_presentation(key);
    const auto h = enumerate_cosets(pr, kDefaultCosetCap, Strategy::hlt);
    const auto f = enumerate_cosets(pr, kDefaultCosetCap, Strategy::felsch);
    CHECK(h.order == f.order);
    CHECK(is_permutation_representation(pr, h.table));
    CHECK(is_permutation_representation(pr, f.table));
    const auto expected = static_cast<std::size_t>(group_order(pr.modulus));
    if (verify_in_matrix_group(pr, pr.modulus).all_identity()) {
      CHECK(h.order % expected == 0);
      CHECK(h.order == expected);
    } else {
      // Relators that are only -I present a quotient of the matrix group.
      CHECK(expected % h.order == 0);
    }
  }
}

TEST_CASE("N6a extra relator is -I and presents the quotient by +-1") {
  const auto pr = builtin_presentation("N6a");
  const auto rep = verify_in_matrix_group(pr, 6);
  CHECK(rep.count(RelatorValue::minus_identity) == 1);
  CHECK(todd_coxeter(pr) * 2 == static_cast<std::size_t>(group_order(6)));
}
