#include "sl2zn/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sl2zn/errors.hpp"
#include "sl2zn/modular_data.hpp"
#include "sl2zn/presentations.hpp"

namespace sl2zn {

namespace {

using json = nlohmann::json;

struct Result {
  ExitCode code = ExitCode::ok;
  json payload = json::object();
  std::string text;
};

std::string_view status_name(ExitCode c) {
  switch (c) {
    case ExitCode::ok: return "ok";
    case ExitCode::verification_failed: return "verification-failed";
    case ExitCode::bad_input: return "bad-input";
  }
  return "bad-input";
}

ExitCode classify(Errc e) {
  switch (e) {
    case Errc::no_solution:
    case Errc::c_not_invertible:
    case Errc::cap_exceeded:
      return ExitCode::verification_failed;
    default:
      return ExitCode::bad_input;
  }
}

json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

Result finish(Result r, bool verified) {
  r.payload["verified"] = verified;
  if (!verified && r.code == ExitCode::ok) r.code = ExitCode::verification_failed;
  return r;
}

// Counts cases of one property and keeps the first witness.
struct Tally {
  explicit Tally(std::string n) : name(std::move(n)) {}
  Tally(std::string n, std::size_t c, std::size_t f, std::string w)
      : name(std::move(n)), cases(c), failures(f), witness(std::move(w)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string witness;

  template <class W>
  void check(bool ok, W&& describe) {
    ++cases;
    if (!ok && failures++ == 0) witness = describe();
  }
  bool passed() const { return failures == 0; }
  json to_json() const {
    json j{{"name", name}, {"cases", cases}, {"failures", failures}, {"passed", passed()}};
    if (!witness.empty()) j["witness"] = witness;
    return j;
  }
};

std::vector<i64> units(i64 n) {
  std::vector<i64> out;
  for (i64 a = 1; a < n; ++a) {
    if (std::gcd(a, n) == 1) out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// decompose

Result cmd_decompose(i64 n, const std::string& text, std::string method) {
  Result r;
  if (n == 0) {
    if (method != "auto" && method != "int") {
      throw Error(Errc::unsupported, "integer mode supports only --method auto|int");
    }
    const SL2Int m = parse_int_matrix(text);
    const Word w = decompose_int(m);
    const bool ok = eval_int(w) == m;
    r.payload = {{"modulus", 0}, {"matrix", m.to_string()}, {"method", "int"}, {"word", to_string(w)}};
    r.text = to_string(w) + "\n";
    return finish(std::move(r), ok);
  }
  if (method == "int") throw Error(Errc::unsupported, "--method int needs N = 0");
  const SL2Mat m = parse_matrix(n, text);
  if (method == "auto") method = m.rc().invertible() ? "invc" : "general";
  Word w;
  bool exact = true;
  if (method == "invc") {
    w = decompose_invertible_c(m);
  } else if (method == "general") {
    w = decompose_general(m);
  } else if (method.rfind("prop:", 0) == 0) {
    std::string name = method.substr(5);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    const auto v = parse_variant(name);
    if (!v) throw Error(Errc::parse_error, "unknown variant '" + method.substr(5) + "'");
    w = prop_decompose(m, *v);
  } else if (method == "canonical") {
    const Word x = canonical_word(m.rc(), m.rd());
    const SL2Mat xm = eval_mod(x, n);
    for (i64 k = 0; k < n; ++k) {
      if (equal_up_to_sign(gen_t(n).pow(k) * xm, m)) {
        w = reduce_exponents(Word{Letter::t(k)} * x, n);
        break;
      }
    }
    exact = false;
  } else {
    throw Error(Errc::parse_error, "unknown method '" + method + "'");
  }
  const SL2Mat value = eval_mod(w, n);
  const bool ok = exact ? value == m : equal_up_to_sign(value, m);
  r.payload = {{"modulus", n},       {"matrix", m.to_string()}, {"method", method},
               {"word", to_string(w)}, {"s_count", w.s_weight()}, {"t_blocks", w.t_blocks()},
               {"up_to_sign", !exact}, {"evaluates_to", value.to_string()}};
  r.text = to_string(w) + "\n";
  return finish(std::move(r), ok);
}

// ---------------------------------------------------------------------------
// verify

std::vector<Tally> verify_identities(i64 n) {
  std::vector<Tally> out;
  for (const auto& c : check_identity_suite(n).checks) {
    out.emplace_back(c.name, c.cases, c.failures, c.counterexamples.empty() ? "" : c.counterexamples.front());
  }
  return out;
}

std::vector<Tally> verify_sigma(i64 n) {
  const auto us = units(n);
  const SL2Mat s = gen_s(n);
  const SL2Mat t = gen_t(n);
  Tally hom{"sigma_L is a homomorphism"};
  Tally comp{"sigma_K sigma_L = sigma_KL"};
  for_each_element(n, [&](const SL2Mat& x) {
    for (i64 l : us) {
      const Residue lr(l, n);
      const SL2Mat sx = sigma(lr, x);
      for (const SL2Mat& g : {s, t}) {
        hom.check(sigma(lr, x * g) == sx * sigma(lr, g), [&] { return "L=" + std::to_string(l) + " x=" + x.to_string(); });
      }
    }
    for (i64 k : unit_group_generators(n)) {
      comp.check(sigma(Residue(k, n), sigma(Residue(us.back(), n), x)) == sigma(Residue(mul_mod(k, us.back(), n), n), x),
                 [&] { return "K=" + std::to_string(k) + " x=" + x.to_string(); });
    }
  });
  Tally sc{"S_C = (0,-1/C;C,0) = sigma(1/C, S)"};
  Tally prod{"sigma_K(S) sigma_L(S) = (-K/L,0;0,-L/K)"};
  Tally swap{"T^{2/C} S T^C S = S T^-C S^-1 T^{-2/C}"};
  for (i64 c : us) {
    const Residue cr(c, n);
    const i64 ci = cr.inverse().value();
    const SL2Mat expect(n, 0, -ci, c, 0);
    sc.check(eval_mod(s_c_word(cr), n) == expect && eval_mod(s_c_word_alt(cr), n) == expect &&
                 sigma(cr.inverse(), s) == expect,
             [&] { return "C=" + std::to_string(c); });
    const Word lhs{Letter::t(2 * ci), Letter::s(), Letter::t(c), Letter::s()};
    const Word rhs{Letter::s(), Letter::t(-c), Letter::s(-1), Letter::t(-2 * ci)};
    swap.check(eval_mod(lhs, n) == eval_mod(rhs, n), [&] { return "C=" + std::to_string(c); });
    for (i64 l : us) {
      const Residue lr(l, n);
      const SL2Mat want(n, (-(cr * lr.inverse())).value(), 0, 0, (-(lr * cr.inverse())).value());
      prod.check(sigma(cr, s) * sigma(lr, s) == want, [&] { return "K=" + std::to_string(c) + " L=" + std::to_string(l); });
    }
  }
  return {hom, comp, sc, prod, swap};
}

std::vector<Tally> verify_hwords(i64 n, json& notes) {
  const auto us = units(n);
  Tally diag_t{"H_A = diag(A, 1/A)"};
  Tally mult{"H_A H_B = H_AB"};
  Tally conj{"H_A T = T^{A^2} H_A"};
  Tally printed{"H_A S = S^-1 H_{1/A}"};
  Tally alt{"H_A S = S H_{1/A}"};
  const SL2Mat s = gen_s(n);
  const SL2Mat t = gen_t(n);
  for (i64 a : us) {
    const Residue ar(a, n);
    const SL2Mat ha = eval_mod(h_word(ar), n);
    diag_t.check(ha == SL2Mat(n, a, 0, 0, ar.inverse().value()), [&] { return "A=" + std::to_string(a); });
    conj.check(ha * t == t.pow(mul_mod(a, a, n)) * ha, [&] { return "A=" + std::to_string(a); });
    const SL2Mat hinv = eval_mod(h_word(ar.inverse()), n);
    printed.check(ha * s == s.inverse() * hinv, [&] { return "A=" + std::to_string(a); });
    alt.check(ha * s == s * hinv, [&] { return "A=" + std::to_string(a); });
    for (i64 b : us) {
      const Residue br(b, n);
      mult.check(ha * eval_mod(h_word(br), n) == eval_mod(h_word(ar * br), n),
                 [&] { return "A=" + std::to_string(a) + " B=" + std::to_string(b); });
    }
  }
  notes["exchange_printed_holds"] = printed.passed();
  notes["exchange_alternative_holds"] = alt.passed();
  notes["exchange_variant"] = printed.passed() ? "H_A S = S^-1 H_{1/A}" : alt.passed() ? "H_A S = S H_{1/A}" : "none";
  Tally exchange{"H_A / S exchange (some variant holds)"};
  exchange.check(printed.passed() || alt.passed(), [] { return std::string("neither variant holds"); });
  return {diag_t, mult, conj, exchange};
}

std::vector<Tally> verify_idempotents(i64 n) {
  Tally proj{"T_p, S_p project to (T, I, ...), (S, I, ...)"};
  const auto factors = factorize(n);
  const auto t_parts = crt_split(gen_t(n));
  const auto s_parts = crt_split(gen_s(n));
  for (const auto& f : factors) {
    const auto pg = primary_generators(n, f.prime);
    const auto tp = crt_split(pg.t);
    const auto sp = crt_split(pg.s);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const i64 q = factors[i].value();
      const bool own = factors[i].prime == f.prime;
      proj.check(tp[i] == (own ? t_parts[i] : SL2Mat::identity(q)) && sp[i] == (own ? s_parts[i] : SL2Mat::identity(q)),
                 [&] { return "p=" + std::to_string(f.prime) + " factor " + std::to_string(q); });
    }
  }
  return {proj};
}

Result cmd_verify(i64 n, const std::string& what) {
  if (n < 2) throw Error(Errc::unsupported, "verify needs N >= 2");
  check_modulus(n);
  static const std::set<std::string> kinds{"identities", "sigma", "hwords", "idempotents", "all"};
  if (!kinds.contains(what)) throw Error(Errc::parse_error, "unknown --what '" + what + "'");
  Result r;
  r.payload = {{"modulus", n}, {"what", what}};
  std::vector<Tally> all;
  auto add = [&](std::vector<Tally> v) { all.insert(all.end(), v.begin(), v.end()); };
  if (what == "identities" || what == "all") add(verify_identities(n));
  if (what == "sigma" || what == "all") add(verify_sigma(n));
  if (what == "hwords" || what == "all") {
    json notes;
    add(verify_hwords(n, notes));
    r.payload["hwords"] = notes;
  }
  if (what == "idempotents" || what == "all") add(verify_idempotents(n));
  bool ok = true;
  json checks = json::array();
  std::ostringstream text;
  for (const auto& t : all) {
    ok = ok && t.passed();
    checks.push_back(t.to_json());
    text << (t.passed() ? "pass " : "FAIL ") << t.name << " (" << t.cases << " cases";
    if (!t.passed()) text << ", " << t.failures << " failures, e.g. " << t.witness;
    text << ")\n";
  }
  r.payload["checks"] = checks;
  r.text = text.str();
  return finish(std::move(r), ok);
}

// ---------------------------------------------------------------------------
// present

std::optional<i64> key_number(const std::string& key, char prefix) {
  if (key.size() < 2 || key[0] != prefix) return std::nullopt;
  std::string digits = key.substr(key[1] == '_' ? 2 : 1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    return std::nullopt;
  }
  return std::stoll(digits);
}

Presentation load_any(const std::string& key) {
  const auto keys = builtin_keys();
  if (std::find(keys.begin(), keys.end(), key) != keys.end()) return builtin_presentation(key);
  if (!std::filesystem::exists(key)) {
    if (auto n = key_number(key, 'R')) return relations_rn(*n);
    if (auto q = key_number(key, 'H')) {
      if (!is_prime_power(*q)) throw Error(Errc::not_prime_power, key + ": not a prime power");
      const auto f = factorize(*q).front();
      return relations_prime_power(f.prime, f.exponent);
    }
    throw Error(Errc::parse_error, "'" + key + "' is neither a builtin key nor a readable file");
  }
  return load_presentation(key);
}

Result cmd_present(const std::string& key, bool enumerate, std::size_t cap, i64 check_n, const std::string& strategy) {
  if (strategy != "hlt" && strategy != "felsch") throw Error(Errc::parse_error, "unknown strategy '" + strategy + "'");
  if (cap == 0) throw Error(Errc::parse_error, "--cap must be positive");
  const Presentation pr = load_any(key);
  const i64 n = check_n > 0 ? check_n : pr.modulus;
  Result r;
  std::ostringstream text;
  json rels = json::array();
  text << pr.label << ": " << pr.relators.size() << " relators\n";
  for (const auto& rel : pr.relators) {
    rels.push_back(to_string(rel));
    text << "  " << to_string(rel) << "\n";
  }
  for (const auto& note : pr.notes) text << "  note: " << note << "\n";
  r.payload = {{"label", pr.label}, {"relators", rels}, {"notes", pr.notes}};
  bool ok = true;
  if (n > 0) {
    check_modulus(n);
    const auto rep = verify_in_matrix_group(pr, n);
    json rows = json::array();
    for (const auto& c : rep.relators) {
      const char* v = c.value == RelatorValue::identity ? "I" : c.value == RelatorValue::minus_identity ? "-I" : "fail";
      rows.push_back({{"relator", c.relator}, {"value", v}, {"matrix", c.matrix}});
    }
    r.payload["matrix_check"] = {{"modulus", n},
                                 {"identity", rep.count(RelatorValue::identity)},
                                 {"minus_identity", rep.count(RelatorValue::minus_identity)},
                                 {"failed", rep.count(RelatorValue::other)},
                                 {"passed", rep.passed()},
                                 {"relators", rows}};
    text << "matrix check mod " << n << ": " << rep.count(RelatorValue::identity) << " = I, "
         << rep.count(RelatorValue::minus_identity) << " = -I, " << rep.count(RelatorValue::other) << " fail\n";
    for (const auto& c : rep.relators) {
      if (c.value == RelatorValue::other) text << "  fails: " << c.relator << " -> " << c.matrix << "\n";
    }
    ok = rep.passed();
  }
  if (enumerate) {
    json e{{"strategy", strategy}, {"cap", cap}};
    try {
      const auto res = enumerate_cosets(pr, cap, strategy == "hlt" ? Strategy::hlt : Strategy::felsch);
      e["order"] = res.order;
      e["max_cosets"] = res.max_cosets;
      e["permutation_representation"] = is_permutation_representation(pr, res.table);
      text << "order " << res.order;
      if (n > 0) {
        const BigInt g = group_order(n);
        const bool match = BigInt(res.order) == g;
        e["group_order"] = big_json(g);
        e["match"] = match;
        text << " (|SL2(Z/" << n << ")| = " << g << ", " << (match ? "match" : "MISMATCH") << ")";
        ok = ok && match;
      }
      text << "\n";
    } catch (const Error& err) {
      if (err.code() != Errc::cap_exceeded) throw;
      e["note"] = err.what();
      text << err.what() << "\n";
      ok = false;
    }
    r.payload["enumeration"] = e;
  }
  r.text = text.str();
  return finish(std::move(r), ok);
}

// ---------------------------------------------------------------------------
// genus, order, enumerate

Result cmd_genus(i64 n) {
  check_modulus(n);
  Result r;
  const BigInt g = genus(n);
  r.payload = {{"modulus", n}, {"genus", big_json(g)}};
  bool ok = true;
  if (is_prime_power(n)) {
    const auto f = factorize(n).front();
    const BigInt gp = genus_prime_power(f.prime, f.exponent);
    r.payload["genus_prime_power"] = big_json(gp);
    ok = gp == g;
  }
  r.text = g.str() + "\n";
  return finish(std::move(r), ok);
}

Result cmd_order(i64 n) {
  check_modulus(n);
  Result r;
  const BigInt g = group_order(n);
  r.payload = {{"modulus", n}, {"order", big_json(g)}};
  bool ok = true;
  if (n <= 24) {
    std::size_t count = 0;
    for_each_element(n, [&](const SL2Mat&) { ++count; });
    r.payload["enumerated"] = count;
    ok = BigInt(count) == g;
  }
  r.text = g.str() + "\n";
  return finish(std::move(r), ok);
}

Result cmd_enumerate(i64 n, bool words) {
  check_modulus(n);
  Result r;
  std::ostringstream text;
  json items = json::array();
  bool ok = true;
  std::size_t count = 0;
  if (words) {
    if (!is_prime_power(n)) throw Error(Errc::not_prime_power, std::to_string(n) + " is not a prime power");
    std::set<std::string> classes;
    for (const auto& [w, m] : enumerate_words(n)) {
      ++count;
      ok = ok && equal_up_to_sign(eval_mod(w, n), m);
      const SL2Mat neg = -m;
      classes.insert(std::min(m.to_string(), neg.to_string()));
      text << to_string(w) << '\t' << m.to_string() << '\n';
      items.push_back({{"word", to_string(w)}, {"matrix", m.to_string()}});
    }
    const BigInt expected = n > 2 ? group_order(n) / 2 : group_order(n);
    ok = ok && classes.size() == count && BigInt(count) == expected;
  } else {
    for_each_element(n, [&](const SL2Mat& m) {
      ++count;
      text << m.to_string() << '\n';
      items.push_back(m.to_string());
    });
    ok = BigInt(count) == group_order(n);
  }
  r.payload = {{"modulus", n}, {"count", count}, {words ? "words" : "elements", items}};
  r.text = text.str();
  return finish(std::move(r), ok);
}

// ---------------------------------------------------------------------------
// modular data

struct DatumFlags {
  bool galois = false;
  bool field = false;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  std::size_t well_defined = 0;
};

Result datum_report(const ModularDatum& d, const DatumFlags& f) {
  Result r;
  std::ostringstream text;
  const auto rel = check_modular_relations(d);
  json rels = json::array();
  text << "rank " << d.rank << ", ambient conductor M = " << d.ambient << ", N = " << d.conductor << "\n";
  for (const auto& c : rel.checks) {
    rels.push_back({{"name", c.name}, {"passed", c.passed}});
    text << (c.passed ? "pass " : "FAIL ") << c.name << "\n";
  }
  text << "S^2 is " << rel.s2_kind << "\n";
  r.payload = {{"rank", d.rank}, {"ambient_conductor", d.ambient}, {"conductor", d.conductor},
               {"relations", rels}, {"s2", rel.s2_kind}};
  bool ok = rel.passed();
  const bool usable = d.conductor > 0;
  if ((f.galois || f.field || f.well_defined > 0) && !usable) {
    r.payload["note"] = "T has no finite order; representation checks skipped";
    text << "T has no finite order; representation checks skipped\n";
  }
  if (usable && (f.galois || f.field)) {
    const auto sample = default_sample(d.conductor, f.samples, f.seed);
    r.payload["sample_size"] = sample.size();
    if (f.galois) {
      const auto g = check_galois(d, sample);
      json cases = json::array();
      for (const auto& c : g.cases) {
        json jc{{"L", c.l}, {"lift", c.lift}, {"matrices", c.matrices}, {"passed", c.passed}};
        if (!c.passed) jc["counterexample"] = c.counterexample;
        cases.push_back(jc);
      }
      r.payload["galois"] = {{"passed", g.passed()}, {"cases", cases}};
      text << (g.passed() ? "pass " : "FAIL ") << "Galois symmetry for " << g.cases.size() << " values of L on "
           << sample.size() << " matrices\n";
      for (const auto& c : g.cases) {
        if (!c.passed) text << "  L=" << c.l << ": " << c.counterexample << "\n";
      }
      ok = ok && g.passed();
    }
    if (f.field) {
      const auto fr = check_field(d, sample);
      r.payload["field"] = {{"passed", fr.passed}, {"automorphisms", fr.automorphisms}, {"entries", fr.entries}};
      if (!fr.passed) r.payload["field"]["counterexample"] = fr.counterexample;
      text << (fr.passed ? "pass " : "FAIL ") << "entries in Q(xi_" << d.conductor << ")";
      if (!fr.passed) text << ": " << fr.counterexample;
      text << "\n";
      ok = ok && fr.passed;
    }
  }
  if (usable && f.well_defined > 0) {
    const auto w = check_well_defined(d, f.well_defined, f.seed);
    r.payload["well_defined"] = {{"passed", w.passed()}, {"cases", w.cases}, {"failures", w.failures}};
    text << (w.passed() ? "pass " : "FAIL ") << "rho well defined on " << w.cases << " elements\n";
    ok = ok && w.passed();
  }
  r.text = text.str();
  return finish(std::move(r), ok);
}

Result cmd_wzw(int k, const DatumFlags& f, const std::string& export_path) {
  const ModularDatum d = su2_wzw(k);
  if (!export_path.empty()) {
    std::ofstream out(export_path);
    if (!out) throw Error(Errc::parse_error, "cannot write '" + export_path + "'");
    out << datum_to_json(d).dump(2) << '\n';
  }
  Result r = datum_report(d, f);
  r.payload["source"] = "su2 level " + std::to_string(k);
  r.text = "SU(2) level " + std::to_string(k) + ": " + r.text;
  return r;
}

Result cmd_check_datum(const std::string& path, const DatumFlags& f) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
  Result r = datum_report(datum_from_json(j), f);
  r.payload["source"] = path;
  return r;
}

void add_datum_flags(CLI::App* cmd, DatumFlags& f) {
  cmd->add_flag("--check-galois", f.galois, "Check sigma_L(rho(M)) = rho(sigma_L(M)) for all L");
  cmd->add_flag("--check-field", f.field, "Check that rho(M) has entries in Q(xi_N)");
  cmd->add_option("--samples", f.samples, "Random elements added to {S, T, ST}")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--well-defined", f.well_defined, "Compare two decompositions on this many random elements");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in SL2(Z/NZ): word decompositions, presentations, modular data"};
  app.name("sl2zn");
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print a JSON report");

  i64 dec_n = 0;
  std::string dec_matrix;
  std::string dec_method = "auto";
  auto* dec = app.add_subcommand("decompose", "Write a matrix as a word in S and T (N = 0: over Z)");
  dec->add_option("N", dec_n, "Modulus, or 0 for SL2(Z)")->required();
  dec->add_option("MATRIX", dec_matrix, "a,b,c,d")->required();
  dec->add_option("--method", dec_method, "auto|prop:<variant>|invc|general|canonical|int")->capture_default_str();

  i64 ver_n = 0;
  std::string ver_what = "all";
  auto* ver = app.add_subcommand("verify", "Exhaustive identity checks at modulus N");
  ver->add_option("N", ver_n)->required();
  ver->add_option("--what", ver_what, "identities|sigma|hwords|idempotents|all")->capture_default_str();

  std::string pre_key;
  bool pre_enum = false;
  std::size_t pre_cap = kDefaultCosetCap;
  i64 pre_check = 0;
  std::string pre_strategy = "hlt";
  auto* pre = app.add_subcommand("present", "Inspect a presentation: builtin key (N5..N10, R<n>, H<q>) or file");
  pre->add_option("KEY", pre_key)->required();
  pre->add_flag("--enumerate", pre_enum, "Run Todd-Coxeter and compare with |SL2(Z/NZ)|");
  pre->add_option("--cap", pre_cap, "Maximum number of cosets")->capture_default_str();
  pre->add_option("--matrix-check", pre_check, "Evaluate relators mod N (default: the presentation's level)");
  pre->add_option("--strategy", pre_strategy, "hlt|felsch")->capture_default_str();

  i64 gen_n = 0;
  auto* gen = app.add_subcommand("genus", "Genus of X(N)");
  gen->add_option("N", gen_n)->required();

  i64 ord_n = 0;
  auto* ord = app.add_subcommand("order", "Order of SL2(Z/NZ)");
  ord->add_option("N", ord_n)->required();

  i64 enu_n = 0;
  bool enu_words = false;
  auto* enu = app.add_subcommand("enumerate", "List SL2(Z/NZ), or one word per element up to sign");
  enu->add_option("N", enu_n)->required();
  enu->add_flag("--words", enu_words, "Print 'word<TAB>matrix' (prime powers only)");

  int wzw_k = 0;
  std::string wzw_export;
  DatumFlags wzw_flags;
  auto* wzw = app.add_subcommand("wzw", "SU(2) level-k modular data");
  wzw->add_option("K", wzw_k)->required();
  wzw->add_option("--export", wzw_export, "Write the datum as JSON");
  add_datum_flags(wzw, wzw_flags);

  std::string chk_path;
  DatumFlags chk_flags;
  auto* chk = app.add_subcommand("check-datum", "Check a modular datum stored as JSON");
  chk->add_option("FILE", chk_path)->required();
  add_datum_flags(chk, chk_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::bad_input);
  }

  Result r;
  try {
    if (*dec) r = cmd_decompose(dec_n, dec_matrix, dec_method);
    if (*ver) r = cmd_verify(ver_n, ver_what);
    if (*pre) r = cmd_present(pre_key, pre_enum, pre_cap, pre_check, pre_strategy);
    if (*gen) r = cmd_genus(gen_n);
    if (*ord) r = cmd_order(ord_n);
    if (*enu) r = cmd_enumerate(enu_n, enu_words);
    if (*wzw) r = cmd_wzw(wzw_k, wzw_flags, wzw_export);
    if (*chk) r = cmd_check_datum(chk_path, chk_flags);
  } catch (const Error& e) {
    r.code = classify(e.code());
    r.payload = {{"error", std::string(errc_name(e.code()))}, {"message", e.what()}, {"verified", false}};
    r.text.clear();
    err << e.what() << '\n';
  }
  r.payload["status"] = status_name(r.code);
  if (as_json) {
    out << r.payload.dump(2) << '\n';
  } else {
    out << r.text;
  }
  return static_cast<int>(r.code);
}

}  // namespace sl2zn
