#include "rsq/ncalg.hpp"

#include <algorithm>
#include <functional>

#include "rsq/linalg.hpp"

namespace rsq::nc {

// ---------------------------------------------------------------- signature

QuiverSig::QuiverSig(int m_, bool localized_) : m(m_), localized(localized_) {
  if (m < 1 || m > 63) throw Error(ErrorCode::InvalidArgument, "quiver size m must be in [1, 63]");
}

Gen QuiverSig::x(int i) const { return static_cast<Gen>(4 * (((i % m) + m) % m)); }
Gen QuiverSig::y(int i) const { return static_cast<Gen>(x(i) + 1); }
Gen QuiverSig::xinv(int i) const { return static_cast<Gen>(x(i) + 2); }

Kind QuiverSig::kind(Gen g) const {
  if (g == kGenV) return Kind::V;
  if (g == kGenW) return Kind::W;
  return static_cast<Kind>(g & 3);
}

int QuiverSig::index(Gen g) const { return (g == kGenV || g == kGenW) ? 0 : g >> 2; }

int QuiverSig::tail(Gen g) const {
  switch (kind(g)) {
    case Kind::X: return index(g);
    case Kind::Y:
    case Kind::XInv: return (index(g) + 1) % m;
    case Kind::V: return 0;
    case Kind::W: return kInfinity;
  }
  return 0;
}

int QuiverSig::head(Gen g) const {
  switch (kind(g)) {
    case Kind::X: return (index(g) + 1) % m;
    case Kind::Y:
    case Kind::XInv: return index(g);
    case Kind::V: return kInfinity;
    case Kind::W: return 0;
  }
  return 0;
}

int QuiverSig::epsilon(Gen g) const { return (kind(g) == Kind::Y || kind(g) == Kind::W) ? -1 : 1; }

std::string QuiverSig::name(Gen g) const {
  const std::string idx = m == 1 ? "" : std::to_string(index(g));
  switch (kind(g)) {
    case Kind::X: return "x" + idx;
    case Kind::Y: return "y" + idx;
    case Kind::XInv: return "x" + idx + "^-1";
    case Kind::V: return "v";
    case Kind::W: return "w";
  }
  return "?";
}

int QuiverSig::rank_at(Gen g, int vertex) const {
  std::vector<Gen> order;
  if (vertex == kInfinity) {
    order = {kGenV, kGenW};
  } else if (m == 1) {
    order = {x(0), y(0), kGenV, kGenW};
  } else {
    order = {x(vertex - 1), y(vertex - 1), x(vertex), y(vertex)};
    if (vertex == 0) {
      order.push_back(kGenV);
      order.push_back(kGenW);
    }
  }
  const auto it = std::find(order.begin(), order.end(), g);
  if (it == order.end()) throw Error(ErrorCode::InvalidArgument, name(g) + " is not ordered at this vertex");
  return static_cast<int>(it - order.begin());
}

std::vector<Gen> QuiverSig::generators() const {
  std::vector<Gen> out;
  for (int i = 0; i < m; ++i) {
    out.push_back(x(i));
    out.push_back(y(i));
    if (localized) out.push_back(xinv(i));
  }
  out.push_back(kGenV);
  out.push_back(kGenW);
  return out;
}

// ---------------------------------------------------------------- words

namespace {

bool is_x_or_inverse(Gen g) { return g != kGenV && g != kGenW && ((g & 3) == 0 || (g & 3) == 2); }
bool cancels(Gen a, Gen b) { return is_x_or_inverse(a) && b == static_cast<Gen>(a ^ 2); }

}  // namespace

PathWord idempotent_word(int vertex) { return {vertex, vertex, {}}; }

PathWord generator_word(const QuiverSig& sig, Gen g) {
  return {sig.tail(g), sig.head(g), std::string(1, static_cast<char>(g))};
}

bool concat(const PathWord& a, const PathWord& b, PathWord& out) {
  if (a.tgt != b.src) return false;
  std::size_t ka = a.gens.size(), kb = 0;
  while (ka > 0 && kb < b.gens.size() &&
         cancels(static_cast<Gen>(a.gens[ka - 1]), static_cast<Gen>(b.gens[kb]))) {
    --ka;
    ++kb;
  }
  out.src = a.src;
  out.tgt = b.tgt;
  out.gens.assign(a.gens, 0, ka);
  out.gens.append(b.gens, kb, std::string::npos);
  return true;
}

std::string to_string(const QuiverSig& sig, const PathWord& w) {
  if (w.empty()) return w.src == kInfinity ? "einf" : "e" + std::to_string(w.src);
  std::string out;
  for (char c : w.gens) {
    if (!out.empty()) out += ' ';
    out += sig.name(static_cast<Gen>(c));
  }
  return out;
}

// ---------------------------------------------------------------- elements

NCElement NCElement::word(const PathWord& w, Rational c) {
  NCElement e;
  e.add(w, c);
  return e;
}

void NCElement::add(const PathWord& w, Rational c) {
  if (c.numerator() == 0) return;
  auto [it, inserted] = terms.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0) terms.erase(it);
  }
}

NCElement& NCElement::operator+=(const NCElement& o) {
  for (const auto& [w, c] : o.terms) add(w, c);
  return *this;
}

NCElement& NCElement::operator-=(const NCElement& o) {
  for (const auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

NCElement NCElement::operator+(const NCElement& o) const {
  NCElement r = *this;
  return r += o;
}

NCElement NCElement::operator-(const NCElement& o) const {
  NCElement r = *this;
  return r -= o;
}

NCElement NCElement::operator*(Rational c) const {
  NCElement r;
  if (c.numerator() == 0) return r;
  r.terms = terms;
  for (auto& [w, v] : r.terms) v *= c;
  return r;
}

NCElement NCElement::operator*(const NCElement& o) const { return word_mul(*this, o); }

void TensorElement::add(const PathWord& u, const PathWord& v, Rational c) {
  if (c.numerator() == 0) return;
  auto [it, inserted] = terms.try_emplace({u, v}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0) terms.erase(it);
  }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [uv, c] : o.terms) add(uv.first, uv.second, c);
  return *this;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  TensorElement r = *this;
  return r += o;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  TensorElement r = *this;
  for (const auto& [uv, c] : o.terms) r.add(uv.first, uv.second, -c);
  return r;
}

TensorElement TensorElement::operator*(Rational c) const {
  TensorElement r;
  if (c.numerator() == 0) return r;
  r.terms = terms;
  for (auto& [uv, v] : r.terms) v *= c;
  return r;
}

NCElement word_mul(const NCElement& a, const NCElement& b) {
  NCElement out;
  PathWord w;
  for (const auto& [u, cu] : a.terms)
    for (const auto& [v, cv] : b.terms)
      if (concat(u, v, w)) out.add(w, cu * cv);
  return out;
}

TensorElement outer(const NCElement& b, const TensorElement& t, const NCElement& c) {
  TensorElement out;
  PathWord left, right;
  for (const auto& [uv, ct] : t.terms)
    for (const auto& [bw, cb] : b.terms) {
      if (!concat(bw, uv.first, left)) continue;
      for (const auto& [cw, cc] : c.terms)
        if (concat(uv.second, cw, right)) out.add(left, right, cb * ct * cc);
    }
  return out;
}

TensorElement flip(const TensorElement& t) {
  TensorElement out;
  for (const auto& [uv, c] : t.terms) out.add(uv.second, uv.first, c);
  return out;
}

NCElement mult(const TensorElement& t) {
  NCElement out;
  PathWord w;
  for (const auto& [uv, c] : t.terms)
    if (concat(uv.first, uv.second, w)) out.add(w, c);
  return out;
}

namespace {

std::string coeff_string(Rational c) {
  std::string s = std::to_string(c.numerator());
  if (c.denominator() != 1) s += "/" + std::to_string(c.denominator());
  return s;
}

template <class Map, class Fmt>
std::string join_terms(const Map& terms, Fmt fmt) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms) {
    if (!out.empty()) out += c.numerator() < 0 ? " - " : " + ";
    else if (c.numerator() < 0) out += "-";
    const Rational a = c.numerator() < 0 ? -c : c;
    if (a != Rational(1)) out += coeff_string(a) + " ";
    out += fmt(key);
  }
  return out;
}

}  // namespace

std::string to_string(const QuiverSig& sig, const NCElement& e) {
  return join_terms(e.terms, [&](const PathWord& w) { return to_string(sig, w); });
}

std::string to_string(const QuiverSig& sig, const TensorElement& t) {
  return join_terms(t.terms, [&](const std::pair<PathWord, PathWord>& uv) {
    return "(" + to_string(sig, uv.first) + " | " + to_string(sig, uv.second) + ")";
  });
}

// ---------------------------------------------------------------- named elements

NCElement gen(const QuiverSig& sig, Gen g) { return NCElement::word(generator_word(sig, g)); }

NCElement elem_e(const QuiverSig& sig) {
  NCElement e;
  for (int i = 0; i < sig.m; ++i) e.add(idempotent_word(i), 1);
  return e;
}

namespace {

NCElement sum_over(const QuiverSig& sig, Gen (QuiverSig::*pick)(int) const) {
  NCElement e;
  for (int i = 0; i < sig.m; ++i) e.add(generator_word(sig, (sig.*pick)(i)), 1);
  return e;
}

}  // namespace

NCElement elem_x(const QuiverSig& sig) { return sum_over(sig, &QuiverSig::x); }
NCElement elem_y(const QuiverSig& sig) { return sum_over(sig, &QuiverSig::y); }

NCElement elem_xinv(const QuiverSig& sig) {
  if (!sig.localized) throw Error(ErrorCode::InvalidArgument, "x^-1 needs the localized algebra");
  return sum_over(sig, &QuiverSig::xinv);
}

NCElement elem_z(const QuiverSig& sig) { return elem_y(sig) + elem_xinv(sig); }
NCElement elem_v(const QuiverSig& sig) { return gen(sig, kGenV); }
NCElement elem_w(const QuiverSig& sig) { return gen(sig, kGenW); }

NCElement power(const NCElement& a, int k, const QuiverSig& sig) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative powers are not supported");
  NCElement out = elem_e(sig);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

TensorElement elem_E(const QuiverSig& sig, int r) {
  TensorElement t;
  for (int i = 0; i < sig.m; ++i) t.add(idempotent_word(((i + r) % sig.m + sig.m) % sig.m), idempotent_word(i), 1);
  return t;
}

// ---------------------------------------------------------------- double brackets

namespace {

const Rational kHalf(1, 2);

PathWord word2(const QuiverSig& sig, Gen a, Gen b) {
  PathWord out;
  concat(generator_word(sig, a), generator_word(sig, b), out);
  return out;
}

bool is_star_of(const QuiverSig& sig, Gen a, Gen b) {
  // b = a* with a in the quiver Q
  if (sig.kind(a) == Kind::X) return b == sig.y(sig.index(a));
  if (sig.kind(a) == Kind::V) return b == kGenW;
  return false;
}

struct VertexTerm {
  int vertex;
  TensorElement term;
};

/// Terms of the mixed formula for a < b, each tagged with its vertex.
std::vector<VertexTerm> mixed_terms(const QuiverSig& sig, Gen a, Gen b) {
  std::vector<VertexTerm> out;
  const PathWord wa = generator_word(sig, a), wb = generator_word(sig, b);
  if (sig.head(a) == sig.tail(b)) {
    TensorElement t;
    t.add(idempotent_word(sig.head(a)), word2(sig, a, b), kHalf);
    out.push_back({sig.head(a), t});
  }
  if (sig.head(b) == sig.tail(a)) {
    TensorElement t;
    t.add(word2(sig, b, a), idempotent_word(sig.tail(a)), kHalf);
    out.push_back({sig.tail(a), t});
  }
  if (sig.head(a) == sig.head(b)) {
    TensorElement t;
    t.add(wb, wa, -kHalf);
    out.push_back({sig.head(a), t});
  }
  if (sig.tail(a) == sig.tail(b)) {
    TensorElement t;
    t.add(wa, wb, -kHalf);
    out.push_back({sig.tail(a), t});
  }
  return out;
}

TensorElement star_bracket(const QuiverSig& sig, Gen a, Gen as) {
  TensorElement t;
  const int h = sig.head(a), tl = sig.tail(a);
  t.add(idempotent_word(h), idempotent_word(tl), 1);
  t.add(word2(sig, as, a), idempotent_word(tl), kHalf);
  t.add(idempotent_word(h), word2(sig, a, as), kHalf);
  if (h == tl) {
    t.add(generator_word(sig, as), generator_word(sig, a), kHalf);
    t.add(generator_word(sig, a), generator_word(sig, as), -kHalf);
  }
  return t;
}

}  // namespace

TensorElement dbl_gen(const QuiverSig& sig, Gen a, Gen b) {
  if (sig.kind(b) == Kind::XInv) {
    const NCElement inv = gen(sig, b);
    return outer(inv, dbl_gen(sig, a, sig.x(sig.index(b))), inv) * Rational(-1);
  }
  if (sig.kind(a) == Kind::XInv) return flip(dbl_gen(sig, b, a)) * Rational(-1);
  if (a == b) {
    TensorElement t;
    if (sig.head(a) != sig.tail(a)) return t;
    const int v = sig.head(a);
    const Rational c = kHalf * Rational(sig.epsilon(a));
    t.add(word2(sig, a, a), idempotent_word(v), c);
    t.add(idempotent_word(v), word2(sig, a, a), -c);
    return t;
  }
  if (is_star_of(sig, a, b)) return star_bracket(sig, a, b);
  if (is_star_of(sig, b, a)) return flip(star_bracket(sig, b, a)) * Rational(-1);
  TensorElement out;
  for (auto& vt : mixed_terms(sig, a, b))
    if (sig.rank_at(a, vt.vertex) < sig.rank_at(b, vt.vertex)) out += vt.term;
  for (auto& vt : mixed_terms(sig, b, a))
    if (sig.rank_at(b, vt.vertex) < sig.rank_at(a, vt.vertex)) out += flip(vt.term) * Rational(-1);
  return out;
}

namespace {

class GenTable {
 public:
  explicit GenTable(const QuiverSig& sig) : sig_(sig) {}
  const TensorElement& get(Gen a, Gen b) {
    auto it = cache_.find({a, b});
    if (it == cache_.end()) it = cache_.emplace(std::make_pair(a, b), dbl_gen(sig_, a, b)).first;
    return it->second;
  }

 private:
  const QuiverSig& sig_;
  std::map<std::pair<Gen, Gen>, TensorElement> cache_;
};

PathWord prefix(const QuiverSig& sig, const PathWord& w, std::size_t i) {
  const int tgt = i == 0 ? w.src : sig.head(static_cast<Gen>(w.gens[i - 1]));
  return {w.src, tgt, w.gens.substr(0, i)};
}

PathWord suffix(const QuiverSig& sig, const PathWord& w, std::size_t i) {
  return {sig.head(static_cast<Gen>(w.gens[i])), w.tgt, w.gens.substr(i + 1)};
}

/// <<u, v>> = sum_{i,j} v_<j p u_>i (x) u_<i r v_>j over p (x) r in <<u_i, v_j>>.
void dbl_words(const QuiverSig& sig, GenTable& table, const PathWord& u, const PathWord& v, Rational c,
               TensorElement& out) {
  PathWord left, left2, right, right2;
  for (std::size_t i = 0; i < u.gens.size(); ++i) {
    const PathWord u_pre = prefix(sig, u, i), u_suf = suffix(sig, u, i);
    for (std::size_t j = 0; j < v.gens.size(); ++j) {
      const auto& t = table.get(static_cast<Gen>(u.gens[i]), static_cast<Gen>(v.gens[j]));
      if (t.zero()) continue;
      const PathWord v_pre = prefix(sig, v, j), v_suf = suffix(sig, v, j);
      for (const auto& [pr, ct] : t.terms) {
        if (!concat(v_pre, pr.first, left) || !concat(left, u_suf, left2)) continue;
        if (!concat(u_pre, pr.second, right) || !concat(right, v_suf, right2)) continue;
        out.add(left2, right2, c * ct);
      }
    }
  }
}

}  // namespace

TensorElement dbl(const QuiverSig& sig, const NCElement& a, const NCElement& b) {
  GenTable table(sig);
  TensorElement out;
  for (const auto& [u, cu] : a.terms)
    for (const auto& [v, cv] : b.terms) dbl_words(sig, table, u, v, cu * cv, out);
  return out;
}

NCElement loday(const QuiverSig& sig, const NCElement& a, const NCElement& b) { return mult(dbl(sig, a, b)); }

NCElement loday_powers(const QuiverSig& sig, const NCElement& P, int a, const NCElement& Q, int b) {
  if (a < 0 || b < 0) throw Error(ErrorCode::InvalidArgument, "powers must be non-negative");
  NCElement out;
  if (a == 0 || b == 0) return out;
  // {P^a, Q} = -a sum q P^{a-1} p over p (x) q in <<Q, P>>
  const TensorElement qp = dbl(sig, Q, P);
  const NCElement Pa1 = power(P, a - 1, sig);
  NCElement first;
  for (const auto& [pq, c] : qp.terms) {
    const NCElement p = NCElement::word(pq.first), q = NCElement::word(pq.second);
    first += (q * Pa1 * p) * (c * Rational(-a));
  }
  // {P^a, Q^b} = sum_{r+s=b-1} Q^r {P^a, Q} Q^s
  std::vector<NCElement> Qpow{elem_e(sig)};
  for (int k = 1; k < b; ++k) Qpow.push_back(Qpow.back() * Q);
  for (int r = 0; r < b; ++r) out += Qpow[r] * first * Qpow[b - 1 - r];
  return out;
}

// ---------------------------------------------------------------- necklaces

NCElement necklace_reduce(const QuiverSig& sig, const NCElement& e) {
  NCElement out;
  for (const auto& [w, c] : e.terms) {
    if (!w.closed()) continue;
    std::string g = w.gens;
    std::size_t lo = 0, hi = g.size();
    while (hi - lo >= 2 && cancels(static_cast<Gen>(g[hi - 1]), static_cast<Gen>(g[lo]))) {
      ++lo;
      --hi;
    }
    g = g.substr(lo, hi - lo);
    if (g.empty()) {
      int vertex = lo == 0 ? w.src : sig.tail(static_cast<Gen>(w.gens[lo - 1]));
      if (sig.localized && vertex != kInfinity) vertex = 0;
      out.add(idempotent_word(vertex), c);
      continue;
    }
    std::string best = g;
    for (std::size_t r = 1; r < g.size(); ++r) {
      std::string rot = g.substr(r) + g.substr(0, r);
      if (rot < best) best = std::move(rot);
    }
    const int vertex = sig.tail(static_cast<Gen>(best[0]));
    out.add(PathWord{vertex, vertex, best}, c);
  }
  return out;
}

IdentityCheck check_identity(const QuiverSig& sig, const NCElement& lhs, const NCElement& rhs, bool mod_comm) {
  NCElement diff = lhs - rhs;
  if (mod_comm) diff = necklace_reduce(sig, diff);
  return {diff.zero(), diff};
}

// ---------------------------------------------------------------- suites

namespace {

std::string truncated(std::string s) {
  if (s.size() > 240) s = s.substr(0, 240) + " ...";
  return s;
}

struct Suite {
  std::vector<CheckResult> checks;

  CheckResult& get(const std::string& name, const std::string& identity) {
    for (auto& c : checks)
      if (c.check == name) return c;
    checks.push_back({name, identity, 0.0, 0.0});
    return checks.back();
  }

  /// Residual: number of terms left in the difference; the detail names the
  /// first instance with the largest difference.
  void fold(const std::string& name, const std::string& identity, const std::string& instance, std::size_t terms,
            const std::function<std::string()>& describe) {
    CheckResult& c = get(name, identity);
    const double r = static_cast<double>(terms);
    if (c.worst_point < 0 || r > c.max_residual) {
      c.max_residual = r;
      c.detail = terms == 0 ? instance : truncated(instance + ": difference " + describe());
    }
    c.worst_point = 0;
    c.pass = c.max_residual <= c.tolerance;
  }

  void expect(const std::string& name, const std::string& identity, const std::string& instance,
              const QuiverSig& sig, const NCElement& lhs, const NCElement& rhs, bool mod_comm) {
    const auto res = check_identity(sig, lhs, rhs, mod_comm);
    fold(name, identity, instance, res.difference.size(), [&] { return to_string(sig, res.difference); });
  }

  void expect_tensor(const std::string& name, const std::string& identity, const std::string& instance,
                     const QuiverSig& sig, const TensorElement& lhs, const TensorElement& rhs) {
    const TensorElement diff = lhs - rhs;
    fold(name, identity, instance, diff.size(), [&] { return to_string(sig, diff); });
  }
};

std::string pair_name(const char* what, int a, int b) {
  return std::string(what) + "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

void involution_suite(Suite& s, int m, int max_deg) {
  const QuiverSig sig(m, true);
  const NCElement x = elem_x(sig), y = elem_y(sig), z = elem_z(sig);
  const NCElement xy = x * y;
  const NCElement zero;
  const struct {
    const char* name;
    const NCElement* gen;
  } families[] = {{"x", &x}, {"y", &y}, {"xy", &xy}, {"z", &z}};
  for (const auto& f : families)
    for (int a = 1; a <= max_deg; ++a)
      for (int b = a; b <= max_deg; ++b) {
        const std::string name = std::string("powers_of_") + f.name + "_commute";
        const std::string identity = std::string("{") + f.name + "^a, " + f.name + "^b} = 0 exactly";
        s.expect(name, identity, pair_name(f.name, a, b), sig, loday_powers(sig, *f.gen, a, *f.gen, b), zero, false);
      }
}

/// x^k for k >= 0, and x^{-1} when k = -1 (localized only).
NCElement xpow(const QuiverSig& sig, int k) { return k >= 0 ? power(elem_x(sig), k, sig) : elem_xinv(sig); }

void mixed_suite(Suite& s, int m, const std::vector<int>& as, const std::vector<int>& bs) {
  const QuiverSig plain(m, false), loc(m, true);
  const NCElement y = elem_y(plain), z = elem_z(loc);
  for (int a : as)
    for (int b : bs) {
      const NCElement lhs = loday(plain, xpow(plain, a), y * xpow(plain, b));
      NCElement rhs;
      if (a > 0) rhs = xpow(plain, a + b - 1) * Rational(a) + y * xpow(plain, a + b) * Rational(a);
      s.expect("x_yx_mod_commutators", "{x^a, y x^b} = a x^{a+b-1} + a y x^{a+b} mod [A,A]", pair_name("a,b", a, b),
               plain, lhs, rhs, true);
      const NCElement lhs_z = loday(loc, xpow(loc, a), z * xpow(loc, b));
      const NCElement rhs_z = z * xpow(loc, a + b) * Rational(a);
      s.expect("x_zx_mod_commutators", "{x^a, z x^b} = a z x^{a+b} mod [A',A']", pair_name("a,b", a, b), loc, lhs_z,
               rhs_z, true);
    }
  for (int b : bs)
    for (int c : bs) {
      const NCElement lhs = loday(plain, y * xpow(plain, b), y * xpow(plain, c));
      NCElement rhs;
      if (b != c) rhs = y * xpow(plain, b + c - 1) * Rational(b - c);
      for (int t = 1; t <= b; ++t) rhs += y * xpow(plain, t) * y * xpow(plain, b + c - t);
      for (int t = 1; t <= c; ++t) rhs -= y * xpow(plain, t) * y * xpow(plain, b + c - t);
      s.expect("yx_yx_mod_commutators",
               "{y x^b, y x^c} = (b-c) y x^{b+c-1} + sum_{t<=b} y x^t y x^{b+c-t} - sum_{t<=c} (same) mod [A,A]",
               pair_name("b,c", b, c), plain, lhs, rhs, true);
      const NCElement lhs_z = loday(loc, z * xpow(loc, b), z * xpow(loc, c));
      NCElement rhs_z;
      for (int t = 1; t <= b; ++t) rhs_z += z * xpow(loc, t) * z * xpow(loc, b + c - t);
      for (int t = 1; t <= c; ++t) rhs_z -= z * xpow(loc, t) * z * xpow(loc, b + c - t);
      s.expect("zx_zx_mod_commutators",
               "{z x^b, z x^c} = sum_{t<=b} z x^t z x^{b+c-t} - sum_{t<=c} (same) mod [A',A']",
               pair_name("b,c", b, c), loc, lhs_z, rhs_z, true);
    }
}

void framing_suite(Suite& s, int m, int max_deg) {
  const QuiverSig sig(m, false);
  const NCElement x = elem_x(sig), y = elem_y(sig), v = elem_v(sig), w = elem_w(sig), zero;
  for (int k = m; k <= std::max(2 * m, max_deg); k += m) {
    const NCElement yk = power(y, k, sig);
    const std::string inst = "k=" + std::to_string(k);
    s.expect("y_power_v", "{y^k, v} = 0 for k a multiple of m", inst, sig, loday(sig, yk, v), zero, false);
    s.expect("y_power_w", "{y^k, w} = 0 for k a multiple of m", inst, sig, loday(sig, yk, w), zero, false);
    const NCElement rhs = power(y, k - 1, sig) * Rational(-k) + yk * x * Rational(-k);
    s.expect("y_power_x", "{y^k, x} = -k y^{k-1} - k y^k x for k a multiple of m", inst, sig, loday(sig, yk, x), rhs,
             false);
  }
}

void tables_suite(Suite& s, int m) {
  const QuiverSig sig(m, false), loc(m, true);
  const NCElement e = elem_e(sig), x = elem_x(sig), y = elem_y(sig), v = elem_v(sig), w = elem_w(sig);
  const NCElement x2 = x * x, y2 = y * y;
  const Rational h(1, 2);
  auto tensor = [](const NCElement& a, const NCElement& b) {
    TensorElement t;
    for (const auto& [u, cu] : a.terms)
      for (const auto& [vv, cv] : b.terms) t.add(u, vv, cu * cv);
    return t;
  };
  const char* table_id = "double bracket table of the generators";
  if (m == 1) {
    const NCElement e0 = e;
    s.expect_tensor("table", table_id, "<<x,x>>", sig, dbl(sig, x, x), (tensor(x2, e0) - tensor(e0, x2)) * h);
    s.expect_tensor("table", table_id, "<<y,y>>", sig, dbl(sig, y, y), (tensor(e0, y2) - tensor(y2, e0)) * h);
    s.expect_tensor("table", table_id, "<<x,y>>", sig, dbl(sig, x, y),
                    tensor(e0, e0) + (tensor(y * x, e0) + tensor(e0, x * y) + tensor(y, x) - tensor(x, y)) * h);
    const NCElement einf = NCElement::word(idempotent_word(kInfinity));
    s.expect_tensor("table", table_id, "<<v,v>>", sig, dbl(sig, v, v), TensorElement{});
    s.expect_tensor("table", table_id, "<<w,w>>", sig, dbl(sig, w, w), TensorElement{});
    s.expect_tensor("table", table_id, "<<v,w>>", sig, dbl(sig, v, w),
                    tensor(einf, e0) + (tensor(einf, v * w) + tensor(w * v, e0)) * h);
    s.expect_tensor("table", table_id, "<<x,v>>", sig, dbl(sig, x, v), (tensor(e0, x * v) - tensor(x, v)) * h);
    s.expect_tensor("table", table_id, "<<x,w>>", sig, dbl(sig, x, w), (tensor(w * x, e0) - tensor(w, x)) * h);
    s.expect_tensor("table", table_id, "<<y,v>>", sig, dbl(sig, y, v), (tensor(e0, y * v) - tensor(y, v)) * h);
    s.expect_tensor("table", table_id, "<<y,w>>", sig, dbl(sig, y, w), (tensor(w * y, e0) - tensor(w, y)) * h);
    const NCElement lx = elem_x(loc), lz = elem_z(loc), le = elem_e(loc), lz2 = lz * lz;
    s.expect_tensor("table_localized", "double brackets of x and z = y + x^-1", "<<z,z>>", loc, dbl(loc, lz, lz),
                    (tensor(le, lz2) - tensor(lz2, le)) * h);
    s.expect_tensor("table_localized", "double brackets of x and z = y + x^-1", "<<x,z>>", loc, dbl(loc, lx, lz),
                    (tensor(lz * lx, le) + tensor(le, lx * lz) + tensor(lz, lx) - tensor(lx, lz)) * h);
  } else {
    auto uEv = [&](const QuiverSig& sg, const NCElement& u, int r, const NCElement& vv) {
      return outer(u, elem_E(sg, r), vv);
    };
    s.expect_tensor("table", table_id, "<<x,x>>", sig, dbl(sig, x, x), (uEv(sig, e, 1, x2) - uEv(sig, x2, 1, e)) * h);
    s.expect_tensor("table", table_id, "<<y,y>>", sig, dbl(sig, y, y), (uEv(sig, y2, -1, e) - uEv(sig, e, -1, y2)) * h);
    s.expect_tensor("table", table_id, "<<x,y>>", sig, dbl(sig, x, y),
                    elem_E(sig, 1) + (uEv(sig, y * x, 1, e) + uEv(sig, e, 1, x * y) - uEv(sig, y, 1, x) +
                                      uEv(sig, x, 1, y)) * h);
    s.expect_tensor("table", table_id, "<<y,x>>", sig, dbl(sig, y, x),
                    elem_E(sig, -1) * Rational(-1) + (uEv(sig, e, -1, y * x) * Rational(-1) -
                                                      uEv(sig, x * y, -1, e) + uEv(sig, x, -1, y) -
                                                      uEv(sig, y, -1, x)) * h);
    const NCElement xy = x * y, xyxy = xy * xy;
    s.expect_tensor("table", table_id, "<<xy,xy>>", sig, dbl(sig, xy, xy),
                    uEv(sig, xy, 0, e) - uEv(sig, e, 0, xy) + (uEv(sig, xyxy, 0, e) - uEv(sig, e, 0, xyxy)) * h);
    const NCElement le = elem_e(loc), lx = elem_x(loc), lz = elem_z(loc), lx2 = lx * lx, lz2 = lz * lz;
    s.expect_tensor("table_localized", "double brackets of x and z = y + x^-1", "<<z,z>>", loc, dbl(loc, lz, lz),
                    (uEv(loc, lz2, -1, le) - uEv(loc, le, -1, lz2)) * h);
    s.expect_tensor("table_localized", "double brackets of x and z = y + x^-1", "<<x,x>>", loc, dbl(loc, lx, lx),
                    (uEv(loc, le, 1, lx2) - uEv(loc, lx2, 1, le)) * h);
    s.expect_tensor("table_localized", "double brackets of x and z = y + x^-1", "<<x,z>>", loc, dbl(loc, lx, lz),
                    (uEv(loc, lz * lx, 1, le) + uEv(loc, le, 1, lx * lz) - uEv(loc, lz, 1, lx) +
                     uEv(loc, lx, 1, lz)) * h);
    const NCElement y0 = gen(sig, sig.y(0)), ym = gen(sig, sig.y(m - 1));
    s.expect_tensor("table", table_id, "<<y_0,v>>", sig, dbl(sig, y0, v), tensor(NCElement::word(idempotent_word(0)), y0 * v) * h);
    s.expect_tensor("table", table_id, "<<y_{m-1},v>>", sig, dbl(sig, ym, v), tensor(ym, v) * (-h));
    s.expect_tensor("table", table_id, "<<y_0,w>>", sig, dbl(sig, y0, w), tensor(w, y0) * (-h));
    s.expect_tensor("table", table_id, "<<y_{m-1},w>>", sig, dbl(sig, ym, w), tensor(w * ym, NCElement::word(idempotent_word(0))) * h);
  }

  // Structural identities over generators and words of length <= 2.
  std::vector<NCElement> words;
  for (Gen g : loc.generators()) words.push_back(gen(loc, g));
  for (Gen a : loc.generators())
    for (Gen b : loc.generators()) {
      const NCElement ab = gen(loc, a) * gen(loc, b);
      if (!ab.zero()) words.push_back(ab);
    }
  const std::size_t ngen = loc.generators().size();
  const NCElement unit = elem_e(loc) + NCElement::word(idempotent_word(kInfinity));
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j) {
      const std::string inst = to_string(loc, words[i]) + " ; " + to_string(loc, words[j]);
      s.expect_tensor("antisymmetry", "<<a,b>> = -<<b,a>>°", inst, loc, dbl(loc, words[i], words[j]),
                      flip(dbl(loc, words[j], words[i])) * Rational(-1));
      const NCElement ab = words[i] * words[j], ba = words[j] * words[i];
      s.expect("commutators_reduce", "necklace(ab - ba) = 0", inst, loc, necklace_reduce(loc, ab - ba), NCElement{},
               false);
    }
  for (std::size_t i = 0; i < ngen; ++i)
    for (std::size_t j = 0; j < ngen; ++j)
      for (std::size_t k = 0; k < ngen; ++k) {
        const NCElement &a = words[i], &b = words[j], &c = words[k];
        const std::string inst = to_string(loc, a) + " ; " + to_string(loc, b) + " ; " + to_string(loc, c);
        s.expect_tensor("derivation", "<<a,bc>> = b<<a,c>> + <<a,b>>c", inst, loc, dbl(loc, a, b * c),
                        outer(b, dbl(loc, a, c), unit) + outer(unit, dbl(loc, a, b), c));
        s.expect("loday_jacobi", "{a,{b,c}} = {{a,b},c} + {b,{a,c}}", inst, loc, loday(loc, a, loday(loc, b, c)),
                 loday(loc, loday(loc, a, b), c) + loday(loc, b, loday(loc, a, c)), false);
      }
  // loday_powers agrees with the direct expansion
  const NCElement lz = elem_z(loc), lx = elem_x(loc);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      const std::string inst = pair_name("a,b", a, b);
      s.expect("power_rule", "{P^a,Q^b} via derivation rules equals direct expansion", inst, loc,
               loday_powers(loc, lz, a, lx, b), loday(loc, power(lz, a, loc), power(lx, b, loc)), false);
    }
}

int default_degree(int m) { return m == 1 ? 6 : 2 * m + 2; }

}  // namespace

std::vector<std::string> suite_names() { return {"tadpole-commuting", "tadpole-mixed", "cyclic-commuting", "cyclic-mixed", "y-powers", "tables"}; }

std::vector<CheckResult> run_suite(const std::string& name, int m, int max_deg) {
  if (max_deg <= 0) max_deg = default_degree(m);
  const bool tadpole_suite = name == "tadpole-commuting" || name == "tadpole-mixed";
  const bool cyclic_suite = name == "cyclic-commuting" || name == "cyclic-mixed";
  if (tadpole_suite && m != 1) throw Error(ErrorCode::InvalidArgument, name + " runs on the tadpole quiver (m = 1)");
  if ((cyclic_suite || name == "y-powers") && m < 2) throw Error(ErrorCode::InvalidArgument, name + " runs on a cyclic quiver (m >= 2)");
  Suite s;
  if (name == "tadpole-commuting" || name == "cyclic-commuting") {
    involution_suite(s, m, max_deg);
  } else if (name == "tadpole-mixed" || name == "cyclic-mixed") {
    std::vector<int> as, bs;
    for (int a = 0; a <= max_deg; a += m) as.push_back(a);
    for (int b = 1 % m; b <= max_deg; b += m) bs.push_back(b);
    mixed_suite(s, m, as, bs);
  } else if (name == "y-powers") {
    framing_suite(s, m, max_deg);
  } else if (name == "tables") {
    tables_suite(s, m);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown symbolic suite '" + name + "'");
  }
  return s.checks;
}

}  // namespace rsq::nc
