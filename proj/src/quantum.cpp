#include "rsq/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rsq/hamiltonians.hpp"
#include "rsq/parallel.hpp"
#include "rsq/sampling.hpp"

namespace rsq {

cplx ParamMonomial::eval(cplx q, cplx t) const {
  cplx v = c;
  if (q_pow != 0.0) v *= std::pow(q, q_pow);
  if (t_pow != 0) v *= std::pow(t, t_pow);
  return v;
}

CoeffFactor CoeffFactor::binomial(ParamMonomial c, int i, int j, int exponent) {
  CoeffFactor f;
  f.kind = Kind::Binomial;
  f.c1 = c;
  f.i = i;
  f.j = j;
  f.exponent = exponent;
  return f;
}

CoeffFactor CoeffFactor::param(ParamMonomial c1, ParamMonomial c2, int exponent) {
  CoeffFactor f;
  f.kind = Kind::Param;
  f.c1 = c1;
  f.c2 = c2;
  f.exponent = exponent;
  return f;
}

CoeffFactor CoeffFactor::inv_sum(int i, int j, int exponent) {
  CoeffFactor f;
  f.kind = Kind::InvSum;
  f.i = i;
  f.j = j;
  f.exponent = exponent;
  return f;
}

CoeffFactor CoeffFactor::half_sum(int i, int j, int exponent) {
  CoeffFactor f = inv_sum(i, j, exponent);
  f.kind = Kind::HalfSum;
  return f;
}

CoeffFactor CoeffFactor::power(int i, int exponent) {
  CoeffFactor f;
  f.kind = Kind::Power;
  f.i = i;
  f.exponent = exponent;
  return f;
}

cplx CoeffFactor::base(const Values& x, cplx q, cplx t) const {
  switch (kind) {
    case Kind::Binomial:
      return 1.0 - c1.eval(q, t) * x[i] / x[j];
    case Kind::Param:
      return c1.eval(q, t) - c2.eval(q, t);
    case Kind::InvSum:
      return 1.0 / x[i] + 1.0 / x[j];
    case Kind::HalfSum: {
      const cplx si = std::sqrt(x[i]), sj = std::sqrt(x[j]);
      return si / sj + sj / si;
    }
    case Kind::Power:
      return x[i];
  }
  return 0.0;
}

cplx Coefficient::eval(const Values& x, cplx q, cplx t) const {
  cplx v = prefactor.eval(q, t);
  for (const auto& f : factors) v *= std::pow(f.base(x, q, t), f.exponent);
  return v;
}

double Coefficient::min_denominator(const Values& x, cplx q, cplx t) const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : factors)
    if (f.exponent < 0) m = std::min(m, std::abs(f.base(x, q, t)));
  return m;
}

namespace {

std::string param_string(const ParamMonomial& p) {
  std::ostringstream os;
  bool bare = true;
  if (p.c != 1.0) {
    os << (p.c.imag() == 0.0 ? std::to_string(p.c.real()) : "c");
    bare = false;
  }
  if (p.q_pow != 0.0) {
    os << (bare ? "" : "*") << "q";
    if (p.q_pow != 1.0) os << "^" << p.q_pow;
    bare = false;
  }
  if (p.t_pow != 0) {
    os << (bare ? "" : "*") << "t";
    if (p.t_pow != 1) os << "^" << p.t_pow;
    bare = false;
  }
  return bare ? "1" : os.str();
}

}  // namespace

std::string Coefficient::to_string() const {
  std::ostringstream os;
  os << param_string(prefactor);
  for (const auto& f : factors) {
    os << " * ";
    switch (f.kind) {
      case CoeffFactor::Kind::Binomial:
        os << "(1 - " << param_string(f.c1) << " x" << f.i + 1 << "/x" << f.j + 1 << ")";
        break;
      case CoeffFactor::Kind::Param:
        os << "(" << param_string(f.c1) << " - " << param_string(f.c2) << ")";
        break;
      case CoeffFactor::Kind::InvSum:
        os << "(1/x" << f.i + 1 << " + 1/x" << f.j + 1 << ")";
        break;
      case CoeffFactor::Kind::HalfSum:
        os << "(sqrt(x" << f.i + 1 << "/x" << f.j + 1 << ") + sqrt(x" << f.j + 1 << "/x" << f.i + 1 << "))";
        break;
      case CoeffFactor::Kind::Power:
        os << "x" << f.i + 1;
        break;
    }
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

namespace {

void check_pole(const Coefficient& c, const Values& x, cplx q, cplx t) {
  const double d = c.min_denominator(x, q, t);
  if (d < kPoleThreshold) {
    std::ostringstream os;
    os << "coefficient " << c.to_string() << " has a denominator of size " << d;
    throw Error(ErrorCode::PoleProximity, os.str());
  }
}

ParamMonomial pm(double q_pow, int t_pow, cplx c = 1.0) { return ParamMonomial{c, q_pow, t_pow}; }

void check_params(int n, cplx q, cplx t) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "difference operators need n >= 1");
  if (std::abs(q) < 1e-12 || std::abs(t) < 1e-12) throw Error(ErrorCode::BadParameters, "q and t must be nonzero");
  cplx qk = 1.0;
  for (int k = 1; k <= 24; ++k) {
    qk *= q;
    if (std::abs(qk - 1.0) < 1e-8)
      throw Error(ErrorCode::BadParameters, "q is a root of unity of order " + std::to_string(k));
  }
}

std::vector<int> unit_shift(int n, int i, int amount) {
  std::vector<int> mu(n, 0);
  mu[i] = amount;
  return mu;
}

/// prod_{l != i (, j)} (1 - t x_i/x_l)/(1 - x_i/x_l) factors.
void append_upsilon(std::vector<CoeffFactor>& fs, int n, int i, int skip) {
  for (int l = 0; l < n; ++l) {
    if (l == i || l == skip) continue;
    fs.push_back(CoeffFactor::binomial(pm(0, 1), i, l));
    fs.push_back(CoeffFactor::binomial(pm(0, 0), i, l, -1));
  }
}

/// The T_i^2 and T_i T_j parts shared by D~ and D (only the gauge factors differ).
DiffOperator twisted(const std::string& name, int n, cplx q, cplx t, bool gauged) {
  check_params(n, q, t);
  DiffOperator d{name, n, q, t, {}};
  for (int i = 0; i < n; ++i) {
    Coefficient c;
    if (gauged) {
      c.prefactor = pm(-1, 0);
      c.factors.push_back(CoeffFactor::power(i, -1));
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      c.factors.push_back(CoeffFactor::binomial(pm(0, 1), i, j));
      c.factors.push_back(CoeffFactor::binomial(pm(1, 1), i, j));
      c.factors.push_back(CoeffFactor::binomial(pm(0, 0), i, j, -1));
      c.factors.push_back(CoeffFactor::binomial(pm(1, 0), i, j, -1));
    }
    d.terms.push_back({unit_shift(n, i, 2), c});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Coefficient c;
      c.factors.push_back(CoeffFactor::param(pm(0, 1), pm(0, 0)));
      c.factors.push_back(CoeffFactor::param(pm(0, 1), pm(1, 0)));
      if (gauged) {
        c.factors.push_back(CoeffFactor::inv_sum(i, j));
      } else {
        c.prefactor = pm(0.5, 0);
        c.factors.push_back(CoeffFactor::half_sum(i, j));
      }
      c.factors.push_back(CoeffFactor::binomial(pm(1, 0), i, j, -1));
      c.factors.push_back(CoeffFactor::binomial(pm(1, 0), j, i, -1));
      append_upsilon(c.factors, n, i, j);
      append_upsilon(c.factors, n, j, i);
      std::vector<int> mu(n, 0);
      mu[i] = mu[j] = 1;
      d.terms.push_back({mu, c});
    }
  return d;
}

Values shifted(const Values& x, const std::vector<int>& mu, cplx q) {
  Values y = x;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (mu[i] != 0) y[i] *= std::pow(q, mu[i]);
  return y;
}

}  // namespace

cplx apply(const DiffOperator& d, const TestFunction& f, const Values& x) {
  if (static_cast<int>(x.size()) != d.n) throw Error(ErrorCode::InvalidArgument, "point has the wrong dimension");
  cplx sum = 0.0;
  for (const auto& term : d.terms) {
    check_pole(term.coeff, x, d.q, d.t);
    sum += term.coeff.eval(x, d.q, d.t) * f.eval(shifted(x, term.shift, d.q));
  }
  return sum;
}

DiffOperator op_Dtilde21(int n, cplx q, cplx t) { return twisted("dtilde21", n, q, t, true); }

DiffOperator op_D21(int n, cplx q, cplx t) { return twisted("d21", n, q, t, false); }

DiffOperator op_Htilde21(int n, cplx q, cplx t, cplx alpha, cplx beta) {
  DiffOperator d = op_Dtilde21(n, q, t);
  d.name = "htilde21";
  if (alpha != 0.0)
    for (int i = 0; i < n; ++i) {
      Coefficient c;
      c.prefactor = pm(0, 0, alpha);
      c.factors.push_back(CoeffFactor::power(i, -1));
      append_upsilon(c.factors, n, i, -1);
      d.terms.push_back({unit_shift(n, i, 1), c});
    }
  if (beta != 0.0)
    for (int i = 0; i < n; ++i) {
      Coefficient c;
      c.prefactor = pm(0, 0, beta);
      c.factors.push_back(CoeffFactor::power(i, -1));
      d.terms.push_back({std::vector<int>(n, 0), c});
    }
  return d;
}

DiffOperator op_macdonald(int n, cplx q, cplx t) {
  check_params(n, q, t);
  DiffOperator d{"macdonald", n, q, t, {}};
  for (int i = 0; i < n; ++i) {
    Coefficient c;
    append_upsilon(c.factors, n, i, -1);
    d.terms.push_back({unit_shift(n, i, 1), c});
  }
  return d;
}

cplx classical_symbol(const DiffOperator& d, const DarbouxPoint& pt) {
  if (pt.n != d.n) throw Error(ErrorCode::InvalidArgument, "point has the wrong dimension");
  cplx sum = 0.0;
  for (const auto& term : d.terms) {
    check_pole(term.coeff, pt.x, 1.0, d.t);
    cplx mono = 1.0;
    for (int i = 0; i < d.n; ++i)
      if (term.shift[i] != 0) mono *= std::pow(pt.sigma[i], term.shift[i]);
    sum += term.coeff.eval(pt.x, 1.0, d.t) * mono;
  }
  return sum;
}

bool spot_check_symmetry(const TestFunction& f, int n, std::uint64_t seed) {
  if (n < 2) return true;
  Rng rng(seed, 0x5e11);
  for (int k = 0; k < 3; ++k) {
    Values x(n);
    for (auto& v : x) v = rng.annulus(0.7, 1.4);
    const int a = static_cast<int>(rng.uniform(0, n)) % n;
    const int b = (a + 1 + static_cast<int>(rng.uniform(0, n - 1)) % (n - 1)) % n;
    Values y = x;
    std::swap(y[a], y[b]);
    const cplx fx = f.eval(x), fy = f.eval(y);
    if (std::abs(fx - fy) > 1e-10 * std::max(1.0, std::abs(fx))) return false;
  }
  return true;
}

TestFunction elementary_function(int n, int k) {
  if (k < 0 || k > n) throw Error(ErrorCode::InvalidArgument, "elementary_function needs 0 <= k <= n");
  return {"e" + std::to_string(k), [k](const Values& x) { return elementary_symmetric(x)[k]; }, true};
}

TestFunction quasi_invariant_function(int n, int m, cplx q) {
  auto eval = [n, m, q](const Values& x) {
    const Values e = elementary_symmetric(x);
    cplx sym = 1.0 + e[1];
    if (n >= 2) sym += 0.5 * e[2] * e[1];
    cplx delta = 1.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int k = -m; k <= m; ++k) delta *= x[a] - std::pow(q, k) * x[b];
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) r += static_cast<double>(i + 1) * std::pow(x[i], i + 1);
    return sym + delta * r;
  };
  return {"quasi_invariant_m" + std::to_string(m), eval, false};
}

namespace {

struct Measurement {
  double residual = 0.0;
  std::string where;
};

/// Worst |T_a^j h - T_b^j h| / scale at the centre of the averaging circle.
Measurement measure(const TestFunction& h, const Values& centre, int a, int b, int m, cplx q,
                    const QuasiInvarianceOptions& opts) {
  Measurement out;
  const int K = opts.circle_points;
  for (int j = 1; j <= m; ++j) {
    cplx diff = 0.0;
    double scale = 0.0;
    for (int k = 0; k < K; ++k) {
      const double theta = 2.0 * std::numbers::pi * (k + 0.5) / K;
      Values x = centre;
      x[b] *= 1.0 + opts.radius * std::polar(1.0, theta);
      Values xa = x, xb = x;
      xa[a] *= std::pow(q, j);
      xb[b] *= std::pow(q, j);
      const cplx ta = h.eval(xa), tb = h.eval(xb);
      diff += ta - tb;
      scale += 0.5 * (std::abs(ta) + std::abs(tb));
    }
    diff /= static_cast<double>(K);
    scale /= K;
    const double r = std::abs(diff) / std::max(scale, 1e-300);
    if (!(r <= out.residual)) {
      out.residual = r;
      out.where = "pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "), j = " + std::to_string(j);
    }
  }
  return out;
}

}  // namespace

std::vector<CheckResult> quasi_invariance_check(const DiffOperator& d, int m, const TestFunction& f,
                                                const QuasiInvarianceOptions& opts) {
  const int n = d.n;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "quasi-invariance needs n >= 2");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "quasi-invariance needs m >= 1");
  if (f.symmetric && !spot_check_symmetry(f, n, opts.seed))
    throw Error(ErrorCode::InvalidArgument, "test function " + f.name + " is flagged symmetric but is not");

  const TestFunction g{d.name + "(" + f.name + ")", [&d, &f](const Values& x) { return apply(d, f, x); }, false};
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);

  const std::size_t total = static_cast<std::size_t>(opts.samples) * pairs.size();
  auto results = parallel_map(total, opts.threads, [&](std::size_t idx) {
    const auto [a, b] = pairs[idx % pairs.size()];
    Rng rng(opts.seed, idx);
    Values x(n);
    for (auto& v : x) v = rng.annulus(0.8, 1.25);
    x[b] = x[a];
    return std::make_pair(measure(f, x, a, b, m, d.q, opts), measure(g, x, a, b, m, d.q, opts));
  });

  CheckResult input{"input_in_Qm", "T_a^j f = T_b^j f on x_a = x_b, j <= m (test function " + f.name + ")",
                    0.0, opts.tolerance};
  CheckResult output{"quasi_invariance",
                     "T_a^j (D f) = T_b^j (D f) on x_a = x_b, j <= m (D = " + d.name + ", f = " + f.name + ")",
                     0.0, opts.tolerance};
  for (std::size_t idx = 0; idx < total; ++idx) {
    const int sample = static_cast<int>(idx / pairs.size());
    input.record(results[idx].first.residual, sample, results[idx].first.where);
    output.record(results[idx].second.residual, sample, results[idx].second.where);
  }
  return {input, output};
}

}  // namespace rsq
