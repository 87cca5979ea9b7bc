#include "sl2zn/presentations.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sl2zn/errors.hpp"

namespace sl2zn {

namespace {

constexpr int inv(int g) { return g ^ 1; }

void push_reduced(Relator& r, Gen g) {
  if (!r.empty() && static_cast<int>(r.back()) == inv(static_cast<int>(g))) {
    r.pop_back();
  } else {
    r.push_back(g);
  }
}

Word equation(std::string_view lhs, std::string_view rhs) {
  return parse_word(lhs) * parse_word(rhs).inverse();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Relator to_relator(const Word& w) {
  Relator r;
  if (w.sign()) {
    push_reduced(r, Gen::s);
    push_reduced(r, Gen::s);
  }
  for (const auto& l : w.letters()) {
    const bool neg = l.exponent < 0;
    const Gen g = l.is_s() ? (neg ? Gen::s_inv : Gen::s) : (neg ? Gen::t_inv : Gen::t);
    const i64 count = neg ? -l.exponent : l.exponent;
    for (i64 i = 0; i < count; ++i) push_reduced(r, g);
  }
  return r;
}

std::string to_string(const Relator& r) {
  if (r.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < r.size()) {
    const int g = static_cast<int>(r[i]);
    std::size_t j = i;
    while (j < r.size() && r[j] == r[i]) ++j;
    const auto len = static_cast<long long>(j - i);
    const bool is_s = g < 2;
    const long long e = (g & 1) ? -len : len;
    if (!out.empty()) out += ' ';
    if (is_s && e == 1) {
      out += "S";
    } else {
      out += is_s ? "S^" : "T^";
      out += std::to_string(e);
    }
    i = j;
  }
  return out;
}

SL2Mat eval_relator(const Relator& r, i64 n) {
  const SL2Mat gens[4] = {gen_s(n), gen_s(n).inverse(), gen_t(n), gen_t(n).inverse()};
  SL2Mat m = SL2Mat::identity(n);
  for (Gen g : r) m = m * gens[static_cast<int>(g)];
  return m;
}

Presentation make_presentation(std::string label, const std::vector<Word>& relators, i64 modulus) {
  Presentation pr;
  pr.label = std::move(label);
  pr.modulus = modulus;
  for (const auto& w : relators) {
    Relator r = to_relator(w);
    if (!r.empty()) pr.relators.push_back(std::move(r));
  }
  if (pr.relators.empty()) throw Error(Errc::parse_error, "presentation has no nontrivial relator");
  return pr;
}

Presentation relations_rn(i64 n) {
  check_modulus(n);
  const Word st{Letter::s(), Letter::t(1)};
  return make_presentation("R_" + std::to_string(n),
                           {Word{Letter::s(4)}, Word{Letter::t(n)}, st * st * st * Word{Letter::s(-2)}},
                           n);
}

Presentation relations_prime_power(i64 p, int v) {
  if (!is_prime(p) || v < 1) throw Error(Errc::not_prime_power, "expected a prime and a positive exponent");
  const i64 n = ipow(p, v);
  if (n <= 2) throw Error(Errc::unsupported, "H-relators need p^v > 2");

  Presentation pr = relations_rn(n);
  pr.label = "H_" + std::to_string(n);
  const auto gens = unit_group_generators(n);
  auto h = [n](i64 a) { return h_word(Residue(a, n)); };
  auto inv_mod = [n](i64 a) { return mod_inv(Residue(a, n)).value(); };

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) {
      const i64 ab = mul_mod(gens[i], gens[j], n);
      pr.relators.push_back(to_relator(h(gens[i]) * h(gens[j]) * h(ab).inverse()));
    }
  }
  for (i64 a : gens) {
    const Word t{Letter::t(1)};
    const Word t_back{Letter::t(-mul_mod(a, a, n))};
    pr.relators.push_back(to_relator(h(a) * t * h(a).inverse() * t_back));
  }

  // Exchange relation: printed form H_A S = S^-1 H_{1/A}; the alternative
  // H_A S = S H_{1/A}. Keep whichever evaluates to I for every generator.
  const Word s{Letter::s()};
  const Word s_inv{Letter::s(-1)};
  auto exchange = [&](i64 a, bool printed) {
    return h(a) * s * ((printed ? s_inv : s) * h(inv_mod(a))).inverse();
  };
  bool printed_ok = true;
  bool alt_ok = true;
  for (i64 a : gens) {
    printed_ok = printed_ok && eval_mod(exchange(a, true), n) == SL2Mat::identity(n);
    alt_ok = alt_ok && eval_mod(exchange(a, false), n) == SL2Mat::identity(n);
  }
  const bool use_printed = printed_ok || !alt_ok;
  for (i64 a : gens) pr.relators.push_back(to_relator(exchange(a, use_printed)));
  pr.notes.push_back(std::string("exchange H_A S = S^-1 H_{1/A}: ") +
                     (printed_ok ? "holds" : "holds only up to -I"));
  pr.notes.push_back(std::string("exchange H_A S = S H_{1/A}: ") + (alt_ok ? "holds" : "fails"));
  pr.notes.push_back(std::string("stored variant: ") + (use_printed ? "H_A S = S^-1 H_{1/A}" : "H_A S = S H_{1/A}"));
  return pr;
}

std::vector<std::string> builtin_keys() { return {"N5", "N6a", "N6b", "N8", "N9", "N10"}; }

Presentation builtin_presentation(std::string_view key) {
  using Eq = std::pair<std::string_view, std::string_view>;
  i64 n = 0;
  std::vector<Eq> eqs;
  if (key == "N5") {
    n = 5;
  } else if (key == "N6a") {
    n = 6;
    eqs = {{"S T^2 S T^-2", "T^2 S T^-2 S"}};
  } else if (key == "N6b") {
    n = 6;
    eqs = {{"S T^3 S T^2", "T^2 S T^3 S"}};
  } else if (key == "N8") {
    n = 8;
    eqs = {{"S T^2 S T^4", "T^4 S T^2 S"}};
  } else if (key == "N9") {
    n = 9;
    eqs = {{"S T^3 S T^-2 S^-1", "T^-4 S T^-2 S T^-2"},
           {"S T^3 S T^3", "T^3 S T^3 S"},
           {"S T^4 S T^-4", "T^4 S T^-4 S^-1"},
           {"S T^-2 S T^4 S T^-2", "T^-4 S T^2 S T^-4 S^-1"},
           {"S T^2 S T^-2 S T^4", "T^2 S T^-4 S T^3 S^-1"}};
  } else if (key == "N10") {
    n = 10;
    eqs = {{"S T^2 S T^5", "T^5 S T^2 S"},
           {"S T^3 S T^4", "T^-4 S^-1 T^-3 S"},
           {"S T^3 S T^-3 S T", "T^-1 S T^3 S T^-3 S"},
           {"S T^4 S T^5", "T^5 S T^4 S"}};
  } else {
    throw Error(Errc::unknown_key, "unknown presentation '" + std::string(key) + "'");
  }
  Presentation pr = relations_rn(n);
  pr.label = std::string(key);
  for (const auto& [lhs, rhs] : eqs) pr.relators.push_back(to_relator(equation(lhs, rhs)));
  return pr;
}

Presentation parse_presentation(std::string_view text, std::string label) {
  std::vector<Word> words;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        words.push_back(parse_word(line));
      } else {
        const auto rhs = line.substr(eq + 1);
        if (rhs.find('=') != std::string_view::npos) throw Error(Errc::parse_error, "more than one '='");
        words.push_back(equation(trim(line.substr(0, eq)), trim(rhs)));
      }
    } catch (const Error& e) {
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return make_presentation(std::move(label), words);
}

Presentation load_presentation(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str(), path.filename().string());
}

std::size_t MatrixCheckReport::count(RelatorValue v) const {
  return static_cast<std::size_t>(
      std::count_if(relators.begin(), relators.end(), [v](const auto& r) { return r.value == v; }));
}

MatrixCheckReport verify_in_matrix_group(const Presentation& pr, i64 n) {
  MatrixCheckReport rep;
  rep.modulus = n;
  const SL2Mat id = SL2Mat::identity(n);
  for (const auto& r : pr.relators) {
    const SL2Mat m = eval_relator(r, n);
    RelatorValue v = RelatorValue::other;
    if (m == id) {
      v = RelatorValue::identity;
    } else if (m == -id) {
      v = RelatorValue::minus_identity;
    }
    rep.relators.push_back({to_string(r), v, m.to_string()});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Coset enumeration over the trivial subgroup.

namespace {

class Enumerator {
 public:
  using Coset = std::int32_t;
  static constexpr Coset kNone = -1;

  Enumerator(const Presentation& pr, std::size_t cap) : cap_(cap) {
    if (cap == 0) throw Error(Errc::cap_exceeded, "cap must be positive");
    for (const auto& r : pr.relators) {
      std::vector<int> rel;
      for (Gen g : r) rel.push_back(static_cast<int>(g));
      if (!rel.empty()) rels_.push_back(std::move(rel));
    }
  }

  EnumerationResult run(Strategy strategy) {
    new_coset();
    if (strategy == Strategy::hlt) {
      run_hlt();
    } else {
      run_felsch();
    }
    compact();
    EnumerationResult res;
    res.order = table_.size();
    res.table = std::move(table_);
    res.max_cosets = max_cosets_;
    res.defined = defined_;
    return res;
  }

 private:
  std::size_t cap_;
  std::vector<std::vector<int>> rels_;
  std::vector<std::vector<std::vector<int>>> conjugates_;  // by first letter
  CosetTable table_;
  std::vector<Coset> parent_;
  std::vector<Coset> queue_;
  std::vector<std::pair<Coset, int>> deductions_;
  bool record_ = false;
  std::size_t max_cosets_ = 0;
  std::size_t defined_ = 0;

  bool live(Coset c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  auto& row(Coset c) { return table_[static_cast<std::size_t>(c)]; }

  Coset new_coset() {
    if (table_.size() >= cap_) return kNone;
    const auto c = static_cast<Coset>(table_.size());
    table_.push_back({kNone, kNone, kNone, kNone});
    parent_.push_back(c);
    max_cosets_ = std::max(max_cosets_, table_.size());
    ++defined_;
    return c;
  }

  void set_entry(Coset c, int g, Coset d) {
    row(c)[g] = d;
    row(d)[inv(g)] = c;
    if (record_) deductions_.emplace_back(c, g);
  }

  Coset rep(Coset c) {
    Coset r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const Coset next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(Coset k, Coset l) {
    const Coset a = rep(k);
    const Coset b = rep(l);
    if (a == b) return;
    const Coset lo = std::min(a, b);
    const Coset hi = std::max(a, b);
    parent_[hi] = lo;
    queue_.push_back(hi);
  }

  void coincidence(Coset a, Coset b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      const Coset g = queue_[i];
      for (int x = 0; x < 4; ++x) {
        const Coset d = row(g)[x];
        if (d == kNone) continue;
        row(d)[inv(x)] = kNone;
        const Coset mu = rep(g);
        const Coset nu = rep(d);
        if (row(mu)[x] != kNone) {
          merge(nu, row(mu)[x]);
        } else if (row(nu)[inv(x)] != kNone) {
          merge(mu, row(nu)[inv(x)]);
        } else {
          set_entry(mu, x, nu);
        }
      }
    }
  }

  // Scans rel from c without defining cosets; records deductions and
  // processes coincidences.
  void scan(Coset c, const std::vector<int>& rel) {
    Coset f = c;
    Coset b = c;
    std::ptrdiff_t i = 0;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(rel.size()) - 1;
    while (i <= j && row(f)[rel[i]] != kNone) f = row(f)[rel[i++]];
    if (i > j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j >= i && row(b)[inv(rel[j])] != kNone) b = row(b)[inv(rel[j--])];
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      set_entry(f, rel[i], b);
    }
  }

  // Scans rel from c, defining cosets as needed. Returns false when out of space.
  bool scan_and_fill(Coset c, const std::vector<int>& rel) {
    Coset f = c;
    Coset b = c;
    std::ptrdiff_t i = 0;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(rel.size()) - 1;
    for (;;) {
      while (i <= j && row(f)[rel[i]] != kNone) f = row(f)[rel[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && row(b)[inv(rel[j])] != kNone) b = row(b)[inv(rel[j--])];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        set_entry(f, rel[i], b);
        return true;
      }
      const Coset d = new_coset();
      if (d == kNone) return false;
      set_entry(f, rel[i], d);
    }
  }

  // Removes dead cosets and renumbers; returns old -> new (kNone if dead).
  std::vector<Coset> compact() {
    std::vector<Coset> map(table_.size(), kNone);
    Coset next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (live(static_cast<Coset>(c))) map[c] = next++;
    }
    CosetTable out;
    out.reserve(static_cast<std::size_t>(next));
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (map[c] == kNone) continue;
      auto r = table_[c];
      for (auto& e : r) {
        if (e != kNone) e = map[static_cast<std::size_t>(rep(e))];
      }
      out.push_back(r);
    }
    table_ = std::move(out);
    parent_.resize(table_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    return map;
  }

  // Scans every relator from every live coset, then compacts. Returns the
  // position of the first live coset at or after `from`, renumbered, or
  // kNone when nothing was freed.
  Coset lookahead(Coset from) {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      for (const auto& rel : rels_) {
        if (!live(static_cast<Coset>(c))) break;
        scan(static_cast<Coset>(c), rel);
      }
    }
    const std::size_t before = table_.size();
    const auto map = compact();
    if (table_.size() == before) return kNone;
    for (std::size_t c = static_cast<std::size_t>(from); c < map.size(); ++c) {
      if (map[c] != kNone) return map[c];
    }
    return static_cast<Coset>(table_.size());
  }

  [[noreturn]] void overflow() const {
    throw Error(Errc::cap_exceeded, "coset table did not close within " + std::to_string(cap_) + " cosets");
  }

  void run_hlt() {
    Coset c = 0;
    while (static_cast<std::size_t>(c) < table_.size()) {
      bool restart = false;
      if (live(c)) {
        for (const auto& rel : rels_) {
          if (!scan_and_fill(c, rel)) {
            c = lookahead(c);
            if (c == kNone) overflow();
            restart = true;
            break;
          }
          if (!live(c)) break;
        }
        if (!restart && live(c)) {
          for (int g = 0; g < 4; ++g) {
            if (row(c)[g] != kNone) continue;
            const Coset d = new_coset();
            if (d == kNone) {
              c = lookahead(c);
              if (c == kNone) overflow();
              restart = true;
              break;
            }
            set_entry(c, g, d);
          }
        }
      }
      if (!restart) ++c;
    }
  }

  void build_conjugates() {
    conjugates_.assign(4, {});
    for (const auto& rel : rels_) {
      for (std::size_t k = 0; k < rel.size(); ++k) {
        std::vector<int> conj(rel.begin() + static_cast<std::ptrdiff_t>(k), rel.end());
        conj.insert(conj.end(), rel.begin(), rel.begin() + static_cast<std::ptrdiff_t>(k));
        auto& bucket = conjugates_[static_cast<std::size_t>(conj.front())];
        if (std::find(bucket.begin(), bucket.end(), conj) == bucket.end()) bucket.push_back(std::move(conj));
      }
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      const auto [a, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(a)) continue;
      for (const auto& r : conjugates_[static_cast<std::size_t>(x)]) {
        if (!live(a)) break;
        scan(a, r);
      }
      if (!live(a)) continue;
      const Coset b = row(a)[x];
      if (b == kNone) continue;
      for (const auto& r : conjugates_[static_cast<std::size_t>(inv(x))]) {
        if (!live(b)) break;
        scan(b, r);
      }
    }
  }

  void run_felsch() {
    record_ = true;
    build_conjugates();
    // Relators through the base coset are not triggered by any definition
    // until an edge leaves it, so scan them once up front.
    for (const auto& rel : rels_) scan(0, rel);
    process_deductions();
    std::size_t c = 0;
    while (true) {
      while (c < table_.size() && (!live(static_cast<Coset>(c)) ||
                                   std::none_of(table_[c].begin(), table_[c].end(),
                                                [](Coset e) { return e == kNone; }))) {
        ++c;
      }
      if (c >= table_.size()) break;
      const auto cc = static_cast<Coset>(c);
      const int g = static_cast<int>(std::find(row(cc).begin(), row(cc).end(), kNone) - row(cc).begin());
      Coset d = new_coset();
      if (d == kNone) {
        const std::size_t before = table_.size();
        compact();
        if (table_.size() == before) overflow();
        c = 0;
        continue;
      }
      set_entry(cc, g, d);
      process_deductions();
    }
  }
};

}  // namespace

EnumerationResult enumerate_cosets(const Presentation& pr, std::size_t cap, Strategy strategy) {
  return Enumerator(pr, cap).run(strategy);
}

std::size_t todd_coxeter(const Presentation& pr, std::size_t cap, Strategy strategy) {
  return enumerate_cosets(pr, cap, strategy).order;
}

bool is_permutation_representation(const Presentation& pr, const CosetTable& table) {
  const auto size = static_cast<std::int32_t>(table.size());
  for (std::int32_t c = 0; c < size; ++c) {
    for (int g = 0; g < 4; ++g) {
      const auto d = table[static_cast<std::size_t>(c)][g];
      if (d < 0 || d >= size) return false;
      if (table[static_cast<std::size_t>(d)][inv(g)] != c) return false;
    }
  }
  for (const auto& r : pr.relators) {
    for (std::int32_t c = 0; c < size; ++c) {
      std::int32_t e = c;
      for (Gen g : r) e = table[static_cast<std::size_t>(e)][static_cast<int>(g)];
      if (e != c) return false;
    }
  }
  return true;
}

}  // namespace sl2zn
