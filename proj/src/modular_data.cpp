#include "sl2zn/modular_data.hpp"

#include <numeric>

#include "sl2zn/errors.hpp"

namespace sl2zn {

namespace {

i64 lcm64(i64 a, i64 b) { return a / std::gcd(a, b) * b; }

bool mat_equal(const CycloMatrix& a, const CycloMatrix& b) { return a == b; }

// a * diag(t): scales column j by t[j].
CycloMatrix scale_columns(CycloMatrix a, const std::vector<Cyclo>& t) {
  for (auto& row : a) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] *= t[j];
  }
  return a;
}

std::string classify_s2(const CycloMatrix& s2, i64 m) {
  const Cyclo zero(m, 0);
  const Cyclo one(m, 1);
  const std::size_t r = s2.size();
  bool identity = true;
  bool permutation = true;
  std::vector<bool> used(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < r; ++j) {
      if (s2[i][j] == one) {
        ++ones;
        if (used[j]) permutation = false;
        used[j] = true;
        if (i != j) identity = false;
      } else if (!(s2[i][j] == zero)) {
        permutation = false;
        identity = false;
      }
    }
    if (ones != 1) permutation = identity = false;
  }
  if (identity) return "identity";
  return permutation ? "permutation" : "other";
}

std::string entry_witness(const SL2Mat& m, std::size_t p, std::size_t q) {
  return "M=" + m.to_string() + " entry (" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

CycloMatrix identity_matrix(std::size_t rank, i64 m) {
  CycloMatrix out(rank, std::vector<Cyclo>(rank, Cyclo(m, 0)));
  for (std::size_t i = 0; i < rank; ++i) out[i][i] = Cyclo(m, 1);
  return out;
}

CycloMatrix mat_mul(const CycloMatrix& a, const CycloMatrix& b) {
  const std::size_t r = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  const i64 m = r == 0 || inner == 0 ? 1 : a[0][0].conductor();
  CycloMatrix out(r, std::vector<Cyclo>(cols, Cyclo(m, 0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return out;
}

CycloMatrix diag(const std::vector<Cyclo>& d) {
  const i64 m = d.empty() ? 1 : d[0].conductor();
  CycloMatrix out = identity_matrix(d.size(), m);
  for (std::size_t i = 0; i < d.size(); ++i) out[i][i] = d[i];
  return out;
}

ModularDatum make_datum(CycloMatrix s, std::vector<Cyclo> t, i64 ambient) {
  const std::size_t r = t.size();
  if (r == 0) throw Error(Errc::parse_error, "datum of rank 0");
  if (s.size() != r) throw Error(Errc::parse_error, "S and T have different ranks");
  ModularDatum d;
  d.rank = r;
  d.ambient = ambient;
  for (auto& row : s) {
    if (row.size() != r) throw Error(Errc::parse_error, "S is not square");
    for (auto& e : row) e = e.lift(ambient);
  }
  for (auto& e : t) e = e.lift(ambient);
  d.s = std::move(s);
  d.t = std::move(t);
  i64 n = 1;
  for (const auto& e : d.t) {
    try {
      n = lcm64(n, order_of(e));
    } catch (const Error& err) {
      if (err.code() != Errc::not_root_of_unity) throw;
      n = 0;
      break;
    }
  }
  d.conductor = n;
  return d;
}

ModularDatum su2_wzw(int k) {
  if (k < 0) throw Error(Errc::unsupported, "level must be non-negative");
  const i64 h = k + 2;
  const i64 m = 8 * h;
  const auto r = static_cast<std::size_t>(k + 1);
  // sqrt(2/h) = sqrt(2h) / h.
  const Cyclo norm = sqrt_int(2 * h, m).scaled(Rational(1, h));
  // sin(pi j / h) = (xi_{2h}^j - xi_{2h}^-j) / (2i), xi_{2h} = xi_M^4, i = xi_M^{2h}.
  const Cyclo half_over_i = root_of_unity(m, -2 * h).scaled(Rational(1, 2));
  CycloMatrix s(r, std::vector<Cyclo>(r));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      const i64 j = static_cast<i64>((a + 1) * (b + 1));
      const Cyclo sine = (root_of_unity(m, 4 * j) - root_of_unity(m, -4 * j)) * half_over_i;
      s[a][b] = s[b][a] = norm * sine;
    }
  }
  std::vector<Cyclo> t;
  for (std::size_t a = 0; a < r; ++a) {
    const auto p = static_cast<i64>(a + 1);
    t.push_back(root_of_unity(m, 2 * p * p - h));
  }
  ModularDatum d = make_datum(std::move(s), std::move(t), m);
  if (!check_modular_relations(d).passed()) {
    throw Error(Errc::unsupported, "SU(2) level " + std::to_string(k) + " data failed the modular relations");
  }
  return d;
}

bool RelationsReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

RelationsReport check_modular_relations(const ModularDatum& d) {
  RelationsReport rep;
  const CycloMatrix id = identity_matrix(d.rank, d.ambient);
  bool symmetric = true;
  for (std::size_t i = 0; i < d.rank; ++i) {
    for (std::size_t j = i + 1; j < d.rank; ++j) symmetric = symmetric && d.s[i][j] == d.s[j][i];
  }
  rep.checks.push_back({"S symmetric", symmetric});
  const CycloMatrix s2 = mat_mul(d.s, d.s);
  rep.checks.push_back({"S^4 = 1", mat_equal(mat_mul(s2, s2), id)});
  const CycloMatrix st = scale_columns(d.s, d.t);
  rep.checks.push_back({"(ST)^3 = S^2", mat_equal(mat_mul(mat_mul(st, st), st), s2)});
  bool t_finite = d.conductor > 0;
  if (t_finite) {
    for (const auto& e : d.t) t_finite = t_finite && e.pow(d.conductor) == Cyclo(d.ambient, 1);
  }
  rep.checks.push_back({"T^N = 1", t_finite});
  rep.s2_kind = classify_s2(s2, d.ambient);
  return rep;
}

Rho::Rho(const ModularDatum& d) : d_(d) {
  if (d.conductor <= 0) throw Error(Errc::not_root_of_unity, "T has no finite order");
  s2_ = mat_mul(d_.s, d_.s);
  s_inv_ = mat_mul(s2_, d_.s);
  t_pow_.assign(static_cast<std::size_t>(d_.conductor), std::vector<Cyclo>(d_.rank, Cyclo(d_.ambient, 1)));
  for (std::size_t e = 1; e < t_pow_.size(); ++e) {
    for (std::size_t i = 0; i < d_.rank; ++i) t_pow_[e][i] = t_pow_[e - 1][i] * d_.t[i];
  }
}

void Rho::check(const SL2Mat& m) const {
  if (m.modulus() != d_.conductor) {
    throw Error(Errc::modulus_mismatch, "element is mod " + std::to_string(m.modulus()) +
                                            ", representation has level " + std::to_string(d_.conductor));
  }
}

CycloMatrix Rho::eval(const Word& w) const {
  std::optional<CycloMatrix> acc;
  auto times = [&](const CycloMatrix& x) { acc = acc ? mat_mul(*acc, x) : x; };
  if (w.sign()) times(s2_);
  for (const auto& l : w.letters()) {
    if (l.is_s()) {
      switch (mod_floor(l.exponent, 4)) {
        case 1: times(d_.s); break;
        case 2: times(s2_); break;
        case 3: times(s_inv_); break;
        default: break;
      }
    } else {
      const auto& t = t_pow_[static_cast<std::size_t>(mod_floor(l.exponent, d_.conductor))];
      acc = acc ? scale_columns(std::move(*acc), t) : diag(t);
    }
  }
  return acc ? *acc : identity_matrix(d_.rank, d_.ambient);
}

CycloMatrix Rho::operator()(const SL2Mat& m) const {
  check(m);
  return eval(decompose_general(m));
}

CycloMatrix Rho::alternative(const SL2Mat& m) const {
  check(m);
  if (m.rc().invertible()) return eval(decompose_invertible_c(m));
  for (PropVariant v : kAllPropVariants) {
    if (prop_parameter(m, v)) return eval(prop_decompose(m, v));
  }
  const i64 n = m.modulus();
  return eval(decompose_general(m * gen_t(n)) * Word{Letter::t(-1)});
}

CycloMatrix rho(const ModularDatum& d, const SL2Mat& m) { return Rho(d)(m); }

std::vector<SL2Mat> default_sample(i64 n, std::size_t randoms, std::uint64_t seed) {
  std::vector<SL2Mat> out{gen_s(n), gen_t(n), gen_s(n) * gen_t(n)};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < randoms; ++i) out.push_back(random_element(n, rng));
  return out;
}

i64 galois_lift(i64 l, i64 n, i64 m) {
  i64 lift = mod_floor(l, n);
  if (lift == 0) lift = n;
  for (i64 tries = 0; tries <= m; ++tries, lift += n) {
    if (std::gcd(lift, m) == 1) return lift;
  }
  throw Error(Errc::not_invertible, std::to_string(l) + " has no unit lift mod " + std::to_string(m));
}

bool GaloisReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.passed; });
}

GaloisReport check_galois(const ModularDatum& d, const std::vector<SL2Mat>& sample) {
  const Rho r(d);
  const i64 n = d.conductor;
  std::vector<CycloMatrix> images;
  images.reserve(sample.size());
  for (const auto& m : sample) images.push_back(r(m));
  GaloisReport rep;
  for (i64 l = 1; l <= std::max<i64>(n - 1, 1); ++l) {
    if (std::gcd(l, n) != 1) continue;
    GaloisCase gc;
    gc.l = l;
    gc.lift = galois_lift(l, n, d.ambient);
    for (std::size_t idx = 0; idx < sample.size() && gc.passed; ++idx) {
      const CycloMatrix rhs = r(sigma(Residue(l, n), sample[idx]));
      ++gc.matrices;
      for (std::size_t p = 0; p < d.rank && gc.passed; ++p) {
        for (std::size_t q = 0; q < d.rank; ++q) {
          if (!(galois(gc.lift, images[idx][p][q]) == rhs[p][q])) {
            gc.passed = false;
            gc.counterexample = entry_witness(sample[idx], p, q);
            break;
          }
        }
      }
    }
    rep.cases.push_back(std::move(gc));
  }
  return rep;
}

FieldReport check_field(const ModularDatum& d, const std::vector<SL2Mat>& sample) {
  const Rho r(d);
  const i64 n = d.conductor;
  const i64 m = d.ambient;
  FieldReport rep;
  if (m % n != 0) {
    rep.passed = false;
    rep.counterexample = "N=" + std::to_string(n) + " does not divide M=" + std::to_string(m);
    return rep;
  }
  std::vector<i64> autos;
  for (i64 l = 1; l < m; l += n) {
    if (std::gcd(l, m) == 1) autos.push_back(l);
  }
  rep.automorphisms = autos.size();
  for (const auto& g : sample) {
    const CycloMatrix img = r(g);
    for (std::size_t p = 0; p < d.rank; ++p) {
      for (std::size_t q = 0; q < d.rank; ++q) {
        ++rep.entries;
        for (i64 l : autos) {
          if (!(galois(l, img[p][q]) == img[p][q])) {
            rep.passed = false;
            rep.counterexample = entry_witness(g, p, q) + " moved by L'=" + std::to_string(l);
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

WellDefinedReport check_well_defined(const ModularDatum& d, std::size_t samples, std::uint64_t seed) {
  const Rho r(d);
  WellDefinedReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const SL2Mat m = random_element(d.conductor, rng);
    ++rep.cases;
    if (!(r(m) == r.alternative(m))) {
      if (rep.failures++ == 0) rep.counterexample = "M=" + m.to_string();
    }
  }
  return rep;
}

nlohmann::json datum_to_json(const ModularDatum& d) {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& row : d.s) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& e : row) jr.push_back(to_strings(e));
    s.push_back(jr);
  }
  nlohmann::json t = nlohmann::json::array();
  for (const auto& e : d.t) t.push_back(to_strings(e));
  return {{"format", "sl2zn-modular-datum"},
          {"rank", d.rank},
          {"ambient_conductor", d.ambient},
          {"conductor", d.conductor},
          {"S", s},
          {"T", t}};
}

ModularDatum datum_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(Errc::parse_error, "datum must be a JSON object");
    const i64 m = j.at("ambient_conductor").get<i64>();
    const auto rank = j.at("rank").get<std::size_t>();
    auto entry = [m](const nlohmann::json& e) { return from_strings(m, e.get<std::vector<std::string>>()); };
    const auto& js = j.at("S");
    const auto& jt = j.at("T");
    if (!js.is_array() || !jt.is_array() || js.size() != rank || jt.size() != rank) {
      throw Error(Errc::parse_error, "S and T must have 'rank' rows");
    }
    CycloMatrix s;
    for (const auto& row : js) {
      if (!row.is_array() || row.size() != rank) throw Error(Errc::parse_error, "S row has wrong length");
      std::vector<Cyclo> r;
      for (const auto& e : row) r.push_back(entry(e));
      s.push_back(std::move(r));
    }
    std::vector<Cyclo> t;
    for (const auto& e : jt) t.push_back(entry(e));
    ModularDatum d = make_datum(std::move(s), std::move(t), m);
    if (j.contains("conductor") && j.at("conductor").get<i64>() != d.conductor) {
      throw Error(Errc::parse_error, "stored conductor " + j.at("conductor").dump() +
                                         " disagrees with the order of T (" + std::to_string(d.conductor) + ")");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    throw Error(Errc::parse_error, e.what());
  }
}

std::string to_string(const CycloMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    out += "[";
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ", ";
      out += to_string(row[j]);
    }
    out += "]\n";
  }
  return out;
}

}  // namespace sl2zn
