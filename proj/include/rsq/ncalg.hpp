/**
 * @file ncalg.hpp
 * @brief Exact path-algebra engine for the doubled framed tadpole (m = 1) and
 *        cyclic (m >= 2) quivers: words, double brackets, the associated
 *        bracket {a,b} = mult(<<a,b>>), and reduction modulo commutators.
 *
 * Paths compose left to right: ab is a followed by b, zero unless
 * head(a) = tail(b). Arrows: x_i : i -> i+1, y_i : i+1 -> i,
 * x_i^{-1} : i+1 -> i (localized algebra only), v : 0 -> inf, w : inf -> 0.
 *
 * Double brackets of generators follow the quasi-Poisson tables with the
 * per-vertex arrow orders
 *   tadpole:  x < y < v < w at 0,  v < w at inf;
 *   cyclic:   x_{i-1} < y_{i-1} < x_i < y_i at i != 0,
 *             x_{m-1} < y_{m-1} < x_0 < y_0 < v < w at 0,  v < w at inf.
 * Brackets with x_i^{-1} come from <<a, x x^{-1}>> = 0.
 */
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rsq/check.hpp"

namespace rsq::nc {

using Rational = boost::rational<long long>;

enum class Kind : std::uint8_t { X = 0, Y = 1, XInv = 2, V = 3, W = 4 };

/// Generator code: 4 i + kind for x_i, y_i, x_i^{-1}; fixed codes for v, w.
using Gen = std::uint8_t;
constexpr Gen kGenV = 253;
constexpr Gen kGenW = 254;
constexpr int kInfinity = -1;  ///< the framing vertex

struct QuiverSig {
  int m = 1;
  bool localized = false;

  QuiverSig() = default;
  QuiverSig(int m, bool localized);

  Gen x(int i) const;
  Gen y(int i) const;
  Gen xinv(int i) const;
  Kind kind(Gen g) const;
  int index(Gen g) const;
  int tail(Gen g) const;
  int head(Gen g) const;
  /// +1 on x, v and x^{-1}; -1 on the opposite arrows y, w.
  int epsilon(Gen g) const;
  std::string name(Gen g) const;
  /// Position of g in the order at vertex `vertex` (g must be incident).
  int rank_at(Gen g, int vertex) const;
  std::vector<Gen> generators() const;
};

struct PathWord {
  int src = 0, tgt = 0;
  std::string gens;  ///< generator codes as bytes

  bool empty() const { return gens.empty(); }
  bool closed() const { return src == tgt; }
  friend bool operator<(const PathWord& a, const PathWord& b) {
    if (a.gens != b.gens) return a.gens < b.gens;
    if (a.src != b.src) return a.src < b.src;
    return a.tgt < b.tgt;
  }
  friend bool operator==(const PathWord& a, const PathWord& b) {
    return a.src == b.src && a.tgt == b.tgt && a.gens == b.gens;
  }
};

PathWord idempotent_word(int vertex);
PathWord generator_word(const QuiverSig& sig, Gen g);
/// Concatenation with cancellation of x_i x_i^{-1} and x_i^{-1} x_i at the
/// junction; false when the endpoints do not match.
bool concat(const PathWord& a, const PathWord& b, PathWord& out);
std::string to_string(const QuiverSig& sig, const PathWord& w);

class NCElement {
 public:
  std::map<PathWord, Rational> terms;

  NCElement() = default;
  static NCElement word(const PathWord& w, Rational c = 1);

  void add(const PathWord& w, Rational c);
  NCElement& operator+=(const NCElement& o);
  NCElement& operator-=(const NCElement& o);
  NCElement operator+(const NCElement& o) const;
  NCElement operator-(const NCElement& o) const;
  NCElement operator*(Rational c) const;
  NCElement operator*(const NCElement& o) const;
  bool zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  bool operator==(const NCElement& o) const { return terms == o.terms; }
};

class TensorElement {
 public:
  std::map<std::pair<PathWord, PathWord>, Rational> terms;

  void add(const PathWord& u, const PathWord& v, Rational c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement operator*(Rational c) const;
  bool zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
  bool operator==(const TensorElement& o) const { return terms == o.terms; }
};

NCElement word_mul(const NCElement& a, const NCElement& b);
/// Outer bimodule action b (u (x) v) c = b u (x) v c.
TensorElement outer(const NCElement& b, const TensorElement& t, const NCElement& c);
/// (u (x) v)° = v (x) u.
TensorElement flip(const TensorElement& t);
/// Multiplication map u (x) v -> u v.
NCElement mult(const TensorElement& t);

std::string to_string(const QuiverSig& sig, const NCElement& e);
std::string to_string(const QuiverSig& sig, const TensorElement& t);

/// Named elements. x, y and x^{-1} sum over the m components; e sums the
/// idempotents of the cyclic vertices.
NCElement gen(const QuiverSig& sig, Gen g);
NCElement elem_e(const QuiverSig& sig);
NCElement elem_x(const QuiverSig& sig);
NCElement elem_y(const QuiverSig& sig);
NCElement elem_xinv(const QuiverSig& sig);
NCElement elem_z(const QuiverSig& sig);  ///< y + x^{-1}; needs localization
NCElement elem_v(const QuiverSig& sig);
NCElement elem_w(const QuiverSig& sig);
NCElement power(const NCElement& a, int k, const QuiverSig& sig);
/// E_r = sum_i e_{i+r} (x) e_i over the cyclic vertices.
TensorElement elem_E(const QuiverSig& sig, int r);

TensorElement dbl_gen(const QuiverSig& sig, Gen a, Gen b);
/// Bilinear extension: derivation in the second argument (outer action),
/// first argument through antisymmetry.
TensorElement dbl(const QuiverSig& sig, const NCElement& a, const NCElement& b);
NCElement loday(const QuiverSig& sig, const NCElement& a, const NCElement& b);
/// {P^a, Q^b} through the derivation rules, without expanding the powers
/// inside the double bracket.
NCElement loday_powers(const QuiverSig& sig, const NCElement& P, int a, const NCElement& Q, int b);

/// Canonical representative modulo [A, A]: open words vanish, closed words
/// are cyclically cancelled and rotated to their minimal rotation. In the
/// localized algebra all cyclic-vertex idempotents are identified with e_0.
NCElement necklace_reduce(const QuiverSig& sig, const NCElement& e);

struct IdentityCheck {
  bool holds = false;
  NCElement difference;
};
IdentityCheck check_identity(const QuiverSig& sig, const NCElement& lhs, const NCElement& rhs, bool mod_comm);

/// Suites: "tadpole-commuting" and "tadpole-mixed" (m = 1), "cyclic-commuting"
/// and "cyclic-mixed" (m >= 2), "y-powers" (brackets of y^k with x, v, w;
/// m >= 2), "tables" (double-bracket tables and structural identities).
/// max_deg <= 0 selects the default (6 tadpole, 2m+2 cyclic).
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name, int m, int max_deg = 0);

}  // namespace rsq::nc
