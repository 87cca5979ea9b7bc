#pragma once

// Finite presentations on {S, T}, matrix-side verification of relators, and
// Todd-Coxeter enumeration of the cosets of the trivial subgroup.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sl2zn/words.hpp"

namespace sl2zn {

// Free-group letters. Inverse pairs differ in the lowest bit.
enum class Gen : std::uint8_t { s = 0, s_inv = 1, t = 2, t_inv = 3 };

// A freely reduced word in the free group on S and T, asserted to be 1.
// S exponents are not reduced modulo 4 here: S^4 is itself a relator.
using Relator = std::vector<Gen>;

Relator to_relator(const Word& w);
std::string to_string(const Relator& r);
SL2Mat eval_relator(const Relator& r, i64 n);

struct Presentation {
  std::string label;
  std::vector<Relator> relators;
  i64 modulus = 0;                 // intended level N, 0 when unknown
  std::vector<std::string> notes;  // provenance of derived relators
};

// Builds a presentation from words; each equation lhs = rhs should be
// passed as lhs * rhs^-1. Throws Errc::parse_error if no relator survives.
Presentation make_presentation(std::string label, const std::vector<Word>& relators, i64 modulus = 0);

// R_N: S^4, T^N, (S T)^3 S^-2.
Presentation relations_rn(i64 n);

// R_N plus H-relators for a generating set of (Z/p^v)^*:
//   H_A H_B H_{AB}^-1 (A <= B in the set), H_A T H_A^-1 T^{-A^2},
//   and the H_A / S exchange relation in the variant that holds as matrices.
Presentation relations_prime_power(i64 p, int v);

// Keys N5, N6a, N6b, N8, N9, N10.
Presentation builtin_presentation(std::string_view key);
std::vector<std::string> builtin_keys();

// One relator per line in the word grammar; '#' starts a comment line.
// A line "lhs = rhs" is accepted as the relator lhs rhs^-1.
Presentation parse_presentation(std::string_view text, std::string label);
Presentation load_presentation(const std::filesystem::path& path);

enum class RelatorValue { identity, minus_identity, other };

struct RelatorCheck {
  std::string relator;
  RelatorValue value;
  std::string matrix;  // the evaluation, as "a,b,c,d"
};

struct MatrixCheckReport {
  i64 modulus = 0;
  std::vector<RelatorCheck> relators;

  std::size_t count(RelatorValue v) const;
  bool passed() const { return count(RelatorValue::other) == 0; }
  bool all_identity() const { return count(RelatorValue::identity) == relators.size(); }
};

MatrixCheckReport verify_in_matrix_group(const Presentation& pr, i64 n);

enum class Strategy { hlt, felsch };

inline constexpr std::size_t kDefaultCosetCap = 1'000'000;

// Completed coset table: rows indexed by coset, columns by Gen.
using CosetTable = std::vector<std::array<std::int32_t, 4>>;

struct EnumerationResult {
  std::size_t order = 0;
  CosetTable table;
  std::size_t max_cosets = 0;  // peak number of allocated cosets
  std::size_t defined = 0;     // total coset definitions
};

// Throws Errc::cap_exceeded when the table cannot close within cap cosets.
EnumerationResult enumerate_cosets(const Presentation& pr, std::size_t cap = kDefaultCosetCap,
                                   Strategy strategy = Strategy::hlt);

std::size_t todd_coxeter(const Presentation& pr, std::size_t cap = kDefaultCosetCap,
                         Strategy strategy = Strategy::hlt);

// Every generator acts as a bijection and every relator fixes every coset.
bool is_permutation_representation(const Presentation& pr, const CosetTable& table);

}  // namespace sl2zn
