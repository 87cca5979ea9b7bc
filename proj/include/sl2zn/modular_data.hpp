#pragma once

// Exact modular data (S, T) over a cyclotomic field, the representation rho
// of SL2(Z/NZ) they define, and the Galois and field-membership checks.

#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "sl2zn/cyclotomic.hpp"
#include "sl2zn/words.hpp"

namespace sl2zn {

using CycloMatrix = std::vector<std::vector<Cyclo>>;

CycloMatrix identity_matrix(std::size_t rank, i64 m);
CycloMatrix mat_mul(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix diag(const std::vector<Cyclo>& d);

struct ModularDatum {
  std::size_t rank = 0;
  i64 ambient = 1;     // M: every entry lives in Q(xi_M)
  i64 conductor = 0;   // N: order of T; 0 if some T entry is not a root of unity
  CycloMatrix s;
  std::vector<Cyclo> t;  // diagonal of T
};

// Lifts every entry to the ambient conductor and computes N from T.
// Throws Errc::parse_error on shape errors.
ModularDatum make_datum(CycloMatrix s, std::vector<Cyclo> t, i64 ambient);

// SU(2) level k: S_ab = sqrt(2/h) sin(pi (a+1)(b+1)/h), T_aa = exp(2 pi i ((a+1)^2/(4h) - 1/8)),
// h = k + 2, in Q(xi_{8h}). The relations are verified before returning.
ModularDatum su2_wzw(int k);

struct RelationCheck {
  std::string name;
  bool passed;
};

struct RelationsReport {
  std::vector<RelationCheck> checks;
  std::string s2_kind;  // "identity", "permutation" or "other"

  bool passed() const;
};

// S symmetric, S^4 = 1, (S T)^3 = S^2, T^N = 1.
RelationsReport check_modular_relations(const ModularDatum& d);

// Evaluates words in S and T on a datum. S^-1 is S^3 and the sign flag S^2.
class Rho {
 public:
  explicit Rho(const ModularDatum& d);

  // Uses decompose_general; throws Errc::modulus_mismatch unless m is mod N.
  CycloMatrix operator()(const SL2Mat& m) const;
  // Uses a different word for the same element (invertible-C, a solvable
  // closed-form variant, or general(m T) T^-1).
  CycloMatrix alternative(const SL2Mat& m) const;
  CycloMatrix eval(const Word& w) const;

  const ModularDatum& datum() const { return d_; }

 private:
  void check(const SL2Mat& m) const;

  ModularDatum d_;
  CycloMatrix s_inv_;
  CycloMatrix s2_;
  std::vector<std::vector<Cyclo>> t_pow_;  // t_pow_[e][i] = t_i^e, 0 <= e < N
};

CycloMatrix rho(const ModularDatum& d, const SL2Mat& m);

// {S, T, S T} followed by `randoms` uniformly random elements of SL2(Z/nZ).
std::vector<SL2Mat> default_sample(i64 n, std::size_t randoms, std::uint64_t seed = 1);

// Smallest L' = L (mod N) with gcd(L', M) = 1.
i64 galois_lift(i64 l, i64 n, i64 m);

struct GaloisCase {
  i64 l = 0;
  i64 lift = 0;
  std::size_t matrices = 0;
  bool passed = true;
  std::string counterexample;  // "M=a,b,c,d entry (p,q)"
};

struct GaloisReport {
  std::vector<GaloisCase> cases;

  bool passed() const;
};

// sigma_{L'}(rho(M)_{pq}) = rho(sigma_L(M))_{pq} for every L coprime to N.
GaloisReport check_galois(const ModularDatum& d, const std::vector<SL2Mat>& sample);

struct FieldReport {
  std::size_t automorphisms = 0;  // L' = 1 (mod N) used
  std::size_t entries = 0;
  bool passed = true;
  std::string counterexample;
};

// Every entry of rho(M) is fixed by all L' = 1 (mod N), i.e. lies in Q(xi_N).
FieldReport check_field(const ModularDatum& d, const std::vector<SL2Mat>& sample);

// Well-definedness: the general and the alternative word agree.
struct WellDefinedReport {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string counterexample;

  bool passed() const { return failures == 0; }
};

WellDefinedReport check_well_defined(const ModularDatum& d, std::size_t samples, std::uint64_t seed = 1);

nlohmann::json datum_to_json(const ModularDatum& d);
// Throws Errc::parse_error on any malformed field.
ModularDatum datum_from_json(const nlohmann::json& j);

std::string to_string(const CycloMatrix& m);

}  // namespace sl2zn
