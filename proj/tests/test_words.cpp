#include <random>
#include <set>

#include "doctest.h"
#include "sl2zn/errors.hpp"
#include "sl2zn/words.hpp"

using namespace sl2zn;

namespace {

// Oracle evaluation: multiply generator matrices letter by letter.
SL2Mat oracle_eval(const Word& w, i64 n) {
  SL2Mat m = SL2Mat::identity(n);
  if (w.sign()) m = gen_s(n).pow(2);
  for (const auto& l : w.letters()) m *= l.is_s() ? gen_s(n).pow(l.exponent) : gen_t(n).pow(l.exponent);
  return m;
}

Word random_word(std::mt19937_64& rng, int max_len, i64 max_exp) {
  std::vector<Letter> letters;
  const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
  for (int i = 0; i < len; ++i) {
    if (rng() % 2 == 0) {
      const i64 e = static_cast<i64>(rng() % 7) - 3;
      letters.push_back(Letter::s(e));
    } else {
      const i64 e = static_cast<i64>(rng() % static_cast<std::uint64_t>(2 * max_exp + 1)) - max_exp;
      letters.push_back(Letter::t(e));
    }
  }
  return Word(std::move(letters));
}

bool is_normalized(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].is_s() && ls[i].exponent != 1 && ls[i].exponent != -1) return false;
    if (!ls[i].is_s() && ls[i].exponent == 0) return false;
    if (i > 0 && ls[i].kind == ls[i - 1].kind) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("evaluation of the integer examples") {
  CHECK(eval_int(parse_word("T^2 S T^2 S T^2")) == SL2Int(3, 4, 2, 3));
  CHECK(eval_int(parse_word("T^2 S T^-2 S^-1 T^-2")) == SL2Int(5, -8, 2, -3));
  CHECK(eval_int(Word{}) == SL2Int::identity());
  CHECK(eval_mod(Word{}, 9) == SL2Mat::identity(9));
  CHECK(eval_mod(parse_word("S S"), 7) == -SL2Mat::identity(7));
}

TEST_CASE("normalize") {
  CHECK(to_string(normalize(parse_word("T^1 T^2"))) == "T^3");
  CHECK(normalize(parse_word("S S^-1")).empty());
  CHECK(to_string(normalize(parse_word("T^2 S S T^-2"))) == "S S");
  CHECK(to_string(normalize(Word{Letter::s(), Letter::s(), Letter::s()})) == "S^-1");
  // a leading "S S" pair is read as the sign flag
  CHECK(to_string(normalize(parse_word("S S S"))) == "S S S");
  CHECK(eval_mod(parse_word("S S S"), 7) == gen_s(7).inverse());
  CHECK(to_string(normalize(parse_word("T^0 S T^0"))) == "S");
  CHECK(to_string(normalize(parse_word("T^1 S^2 T^2 S"))) == "S S T^3 S");

  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Word w = random_word(rng, 12, 15);
    const Word nw = normalize(w);
    REQUIRE(is_normalized(nw));
    REQUIRE(eval_mod(w, 12) == eval_mod(nw, 12));
    REQUIRE(eval_mod(w, 12) == oracle_eval(w, 12));
    REQUIRE(normalize(nw) == nw);
    REQUIRE(eval_int(w) == eval_int(nw));
  }
}

TEST_CASE("word text round trip") {
  CHECK(to_string(Word{}) == "1");
  CHECK(parse_word("1").empty());
  CHECK(to_string(parse_word("T^2 S T^-2 S^-1 T^-2")) == "T^2 S T^-2 S^-1 T^-2");
  CHECK_THROWS_AS(parse_word("Q^2"), Error);
  CHECK_THROWS_AS(parse_word("T^x"), Error);
  CHECK_THROWS_AS(parse_word("T^"), Error);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Word w = normalize(random_word(rng, 10, 9));
    REQUIRE(normalize(parse_word(to_string(w))) == w);
    REQUIRE(parse_word(to_string(w)) == w);
  }
}

TEST_CASE("inverse words") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Word w = random_word(rng, 10, 9);
    REQUIRE(eval_mod(w * w.inverse(), 11) == SL2Mat::identity(11));
  }
}

TEST_CASE("decompose_int") {
  CHECK(to_string(decompose_int(SL2Int(3, 4, 2, 3))) == "T^2 S T^2 S T^2");
  CHECK(to_string(decompose_int(SL2Int(5, -8, 2, -3))) == "T^2 S T^-2 S^-1 T^-2");
  CHECK(decompose_int(SL2Int::identity()).empty());
  CHECK(eval_int(decompose_int(-SL2Int::identity())) == -SL2Int::identity());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const SL2Int m = eval_int(random_word(rng, 12, 9));
    REQUIRE(eval_int(decompose_int(m)) == m);
  }
  // Large entries stay exact.
  SL2Int big = SL2Int::identity();
  for (int i = 0; i < 40; ++i) big = big * SL2Int(2, 1, 1, 1);
  CHECK(eval_int(decompose_int(big)) == big);
}

TEST_CASE("prop_decompose examples") {
  const SL2Mat m(7, 3, 4, 2, 3);
  CHECK(prop_parameter(m, PropVariant::uc_plus) == 2);
  CHECK(to_string(prop_decompose(m, PropVariant::uc_plus)) == "T^2 S T^2 S T^2");
  CHECK_THROWS_AS(prop_decompose(gen_s(7), PropVariant::xd_minus), Error);
  const Word ws = prop_decompose(gen_s(7), PropVariant::uc_plus);
  CHECK(eval_mod(ws, 7) == gen_s(7));
  CHECK_THROWS_AS(prop_decompose(SL2Mat::identity(7), PropVariant::uc_plus), Error);
  try {
    prop_decompose(SL2Mat::identity(7), PropVariant::uc_plus);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_solution);
  }
  CHECK(parse_variant("uc_plus") == PropVariant::uc_plus);
  CHECK(parse_variant("XA_POS") == PropVariant::xa_pos);
  CHECK(parse_variant("nope") == std::nullopt);
}

TEST_CASE("prop_decompose round trip and solvability criterion, n <= 20") {
  for (i64 n = 1; n <= 20; ++n) {
    for_each_element(n, [&](const SL2Mat& m) {
      for (auto v : kAllPropVariants) {
        const auto [coeff, rhs] = prop_congruence(m, v);
        const bool solvable = rhs % std::gcd(coeff, n) == 0;
        if (!solvable) {
          REQUIRE_THROWS_AS(prop_decompose(m, v), Error);
          continue;
        }
        const Word w = prop_decompose(m, v);
        REQUIRE(eval_mod(w, n) == m);
      }
    });
  }
}

TEST_CASE("prop words keep the displayed shapes") {
  // A generic element where no exponent collapses.
  const SL2Mat m(11, 3, 4, 2, 3);
  for (auto v : kAllPropVariants) {
    if (!prop_parameter(m, v)) continue;
    const Word w = prop_decompose(m, v);
    CHECK(w.s_weight() == (v == PropVariant::uc_plus || v == PropVariant::uc_minus ? 2u : 3u));
  }
  CHECK(prop_decompose(m, PropVariant::xd_minus).letters().back().is_s());
  CHECK(prop_decompose(m, PropVariant::xa_pos).letters().front().is_s());
}

TEST_CASE("S_C words") {
  CHECK(eval_mod(s_c_word(Residue(1, 5)), 5) == gen_s(5));
  CHECK(eval_mod(s_c_word(Residue(2, 5)), 5) == SL2Mat(5, 0, 2, 2, 0));
  CHECK_THROWS_AS(s_c_word(Residue(2, 6)), Error);
  for (i64 n = 2; n <= 100; ++n) {
    for (i64 c = 1; c < n; ++c) {
      if (std::gcd(c, n) != 1) continue;
      const Residue cr(c, n);
      const Residue ci = mod_inv(cr);
      const SL2Mat target(n, 0, -ci.value(), c, 0);
      REQUIRE(eval_mod(s_c_word(cr), n) == target);
      REQUIRE(eval_mod(s_c_word_alt(cr), n) == target);
      REQUIRE(sigma(ci, gen_s(n)) == target);
    }
  }
}

TEST_CASE("decompose_invertible_c") {
  CHECK(decompose_invertible_c(gen_s(7)) == s_c_word(Residue(1, 7)));
  const SL2Mat m(5, 3, 4, 2, 3);
  CHECK(eval_mod(decompose_invertible_c(m), 5) == m);
  CHECK_THROWS_AS(decompose_invertible_c(gen_t(6)), Error);
  for (i64 n = 2; n <= 20; ++n) {
    for_each_element(n, [&](const SL2Mat& x) {
      if (!x.rc().invertible()) return;
      REQUIRE(eval_mod(decompose_invertible_c(x), n) == x);
    });
  }
}

TEST_CASE("decompose_general") {
  CHECK(to_string(decompose_general(SL2Mat::identity(7))) == "T^-1 S T^-1 S T^-1 S");
  const Word wt = decompose_general(gen_t(9));
  CHECK(eval_mod(wt, 9) == gen_t(9));
  CHECK(wt.t_blocks() <= 4);
  for (i64 n = 1; n <= 24; ++n) {
    for_each_element(n, [&](const SL2Mat& x) {
      const Word w = decompose_general(x);
      REQUIRE(eval_mod(w, n) == x);
      REQUIRE(w.t_blocks() <= 4);
      if (n >= 2) REQUIRE(w.s_weight() == 3);
    });
  }
}

TEST_CASE("canonical words") {
  CHECK(canonical_word(Residue(0, 7), Residue(1, 7)).empty());
  CHECK(to_string(canonical_word(Residue(1, 7), Residue(3, 7))) == "S T^3");
  // non-invertible c with d = 1
  const Word w = canonical_word(Residue(3, 9), Residue(1, 9));
  CHECK(to_string(w) == "S T^-3 S^-1");
  CHECK(eval_mod(w, 9) == SL2Mat(9, 1, 0, 3, 1));
  CHECK_THROWS_AS(canonical_word(Residue(3, 9), Residue(3, 9)), Error);
  CHECK_THROWS_AS(canonical_word(Residue(1, 6), Residue(1, 6)), Error);
  for (i64 n : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    for (i64 c = 0; c < n; ++c) {
      for (i64 d = 0; d < n; ++d) {
        if (std::gcd(std::gcd(c, d), n) != 1) continue;
        const SL2Mat e = eval_mod(canonical_word(Residue(c, n), Residue(d, n)), n);
        const bool same = e.c() == c && e.d() == d;
        const bool negated = e.c() == mod_floor(-c, n) && e.d() == mod_floor(-d, n);
        REQUIRE((same || negated));
      }
    }
  }
}

TEST_CASE("enumerate_words covers each sign class once") {
  CHECK(enumerate_words(3).size() == 12);
  CHECK(enumerate_words(5).size() == 60);
  CHECK(enumerate_words(4).size() == 24);
  CHECK(enumerate_words(2).size() == 6);
  CHECK_THROWS_AS(enumerate_words(6), Error);
  for (i64 n : {3, 4, 5, 7, 8, 9}) {
    const auto words = enumerate_words(n);
    std::set<std::string> classes;
    for (const auto& [w, m] : words) {
      REQUIRE(eval_mod(w, n) == m);
      const SL2Mat neg = -m;
      classes.insert(std::min(m.to_string(), neg.to_string()));
    }
    REQUIRE(classes.size() == words.size());
    std::set<std::string> all;
    for_each_element(n, [&](const SL2Mat& m) { all.insert(std::min(m.to_string(), (-m).to_string())); });
    REQUIRE(all == classes);
  }
}

TEST_CASE("H words") {
  CHECK(eval_mod(h_word(Residue(1, 7)), 7) == SL2Mat::identity(7));
  CHECK(eval_mod(h_word(Residue(2, 5)), 5) == SL2Mat(5, 2, 0, 0, 3));
  CHECK_THROWS_AS(h_word(Residue(2, 4)), Error);
  for (i64 n = 2; n <= 50; ++n) {
    for (i64 a = 1; a < n; ++a) {
      if (std::gcd(a, n) != 1) continue;
      const Residue ar(a, n);
      const SL2Mat ha = eval_mod(h_word(ar), n);
      REQUIRE(ha == SL2Mat(n, a, 0, 0, mod_inv(ar).value()));
      for (i64 b = 1; b < n; ++b) {
        if (std::gcd(b, n) != 1) continue;
        REQUIRE(ha * eval_mod(h_word(Residue(b, n)), n) == eval_mod(h_word(ar * Residue(b, n)), n));
      }
    }
  }
}

TEST_CASE("identity suite") {
  const auto five = check_identity_suite(5);
  CHECK(five.passed());
  REQUIRE(five.checks.size() == 4);
  for (const auto& c : five.checks) CHECK(c.cases > 0);
  CHECK(check_equivalence(5, 0).cases == 15625);
  const auto sampled = check_equivalence(7, 10000, 9);
  CHECK(sampled.passed());
  CHECK(sampled.cases == 10000);
  CHECK(sampled.positives > 0);
  CHECK(sampled.positives < sampled.cases);
  CHECK_THROWS_AS(check_identity_suite(1), Error);
}
