#pragma once

// Words in the generators S and T: evaluation, normalization, parsing and the
// decomposition algorithms for SL2(Z) and SL2(Z/nZ).

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sl2zn/sl2.hpp"

namespace sl2zn {

struct Letter {
  enum class Kind : std::uint8_t { S, T };

  Kind kind;
  i64 exponent;

  static Letter s(i64 e = 1) { return {Kind::S, e}; }
  static Letter t(i64 e) { return {Kind::T, e}; }
  bool is_s() const { return kind == Kind::S; }

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A product of letters, optionally preceded by the central element S^2
// (the "sign" flag; S^2 = -I in SL2). Words built by hand or by the parser
// may be raw; normalize() brings them to the canonical form in which
//   * T exponents are nonzero and S exponents are +1 or -1,
//   * no two adjacent letters have the same kind,
//   * every S^2 collapse is recorded in the sign flag.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters, bool sign = false)
      : letters_(std::move(letters)), sign_(sign) {}

  const std::vector<Letter>& letters() const { return letters_; }
  bool sign() const { return sign_; }
  bool empty() const { return letters_.empty() && !sign_; }

  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  Word inverse() const;

  // Number of S tokens when printed: S^{+-1} letters plus two for the sign.
  std::size_t s_weight() const;
  std::size_t t_blocks() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
  bool sign_ = false;
};

Word normalize(const Word& w);

// Reduces T exponents into (-n/2, n/2] and normalizes.
Word reduce_exponents(const Word& w, i64 n);

// Text form: tokens "S", "S^-1", "T^k" separated by single spaces; the sign
// flag prints as a leading "S S"; the empty word prints as "1".
std::string to_string(const Word& w);

// Accepts the printed form (a leading "S S" pair becomes the sign flag) plus
// "S^k" and bare "T". The result is not normalized.
Word parse_word(std::string_view text);

SL2Mat eval_mod(const Word& w, i64 n);
SL2Int eval_int(const Word& w);

// Nearest-integer continued fraction on the first column:
//   T^{x_k} S ... S T^{x_0}, exact over Z.
Word decompose_int(const SL2Int& m);

enum class PropVariant { uc_plus, uc_minus, xd_minus, xd_plus, xa_neg, xa_pos };

inline constexpr PropVariant kAllPropVariants[] = {PropVariant::uc_plus, PropVariant::uc_minus,
                                                   PropVariant::xd_minus, PropVariant::xd_plus,
                                                   PropVariant::xa_neg, PropVariant::xa_pos};

std::string_view variant_name(PropVariant v);
std::optional<PropVariant> parse_variant(std::string_view name);

// The congruence coefficient * x = rhs (mod n) attached to each variant.
std::pair<i64, i64> prop_congruence(const SL2Mat& m, PropVariant v);

// Smallest solution of the variant's congruence, if solvable.
std::optional<i64> prop_parameter(const SL2Mat& m, PropVariant v);

// Three-S words from the six closed-form congruence variants. Throws
// Errc::no_solution when the variant's congruence has no root.
Word prop_decompose(const SL2Mat& m, PropVariant v);

// S_C = T^{C^-1} S T^C S T^{C^-1} = (0, -C^-1; C, 0).
Word s_c_word(Residue c);
// The second spelling T^{-C^-1} S T^{-C} S^-1 T^{-C^-1}.
Word s_c_word_alt(Residue c);

// T^{A C^-1} S_C T^{D C^-1}; throws Errc::c_not_invertible.
Word decompose_invertible_c(const SL2Mat& m);

// Any element as T^x S T^y S T^z S T^m (three S, at most four T blocks).
Word decompose_general(const SL2Mat& m);

// Representative word X_(c,d) whose evaluation has bottom row +-(c, d).
// The modulus must be a prime power; throws Errc::bad_row for imprimitive rows.
Word canonical_word(Residue c, Residue d);

// Representative of {(c, d), (-c, -d)} used by the enumeration.
std::pair<i64, i64> canonical_row(i64 n, i64 c, i64 d);

// All words T^x X_(c,d): one per element of SL2(Z/nZ) / {+-1}.
std::vector<std::pair<Word, SL2Mat>> enumerate_words(i64 n);

// H_A = T^A S T^{1/A} S T^A S^-1 = diag(A, A^-1).
Word h_word(Residue a);

struct IdentityCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t positives = 0;  // cases where the asserted equality held (equivalence check)
  std::vector<std::string> counterexamples;  // first few only

  bool passed() const { return failures == 0; }
  void fail(std::string witness);
};

struct IdentityReport {
  i64 modulus = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const;
};

// Exhaustive matrix verification of the standalone identities at modulus n:
// the BC = -2 and BC = 0 lemmas, the S_C relation, and the two-sided
// equivalence for S T^U S T^-A S T^V = T^X S T^-D S T^Y S.
IdentityReport check_identity_suite(i64 n);

// The equivalence alone. samples == 0 means exhaustive over all six
// parameters; otherwise random tuples with A matched to the right-hand side.
IdentityCheck check_equivalence(i64 n, std::size_t samples, std::uint64_t seed = 1);

}  // namespace sl2zn
