#include <doctest.h>

#include "rsq/hamiltonians.hpp"
#include "rsq/quantum.hpp"
#include "rsq/sampling.hpp"

using namespace rsq;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rsq::Error");
  return ErrorCode::InvalidArgument;
}

Values shift(Values x, int i, int j, cplx q) {
  x[i] *= q;
  x[j] *= q;
  return x;
}

/// D~_{2,1} f written out term by term.
cplx dtilde_by_hand(const TestFunction& f, const Values& x, cplx q, cplx t) {
  const int n = static_cast<int>(x.size());
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx a = 1.0 / (q * x[i]);
    for (int j = 0; j < n; ++j)
      if (j != i) {
        const cplx r = x[i] / x[j];
        a *= (1.0 - t * r) * (1.0 - q * t * r) / ((1.0 - r) * (1.0 - q * r));
      }
    sum += a * f.eval(shift(x, i, i, q));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx b = (t - 1.0) * (t - q) * (1.0 / x[i] + 1.0 / x[j]) / ((1.0 - q * x[i] / x[j]) * (1.0 - q * x[j] / x[i]));
      for (int l = 0; l < n; ++l)
        if (l != i && l != j)
          b *= (1.0 - t * x[i] / x[l]) * (1.0 - t * x[j] / x[l]) / ((1.0 - x[i] / x[l]) * (1.0 - x[j] / x[l]));
      sum += b * f.eval(shift(x, i, j, q));
    }
  return sum;
}

const TestFunction kPoly{"poly", [](const Values& x) {
                           cplx s = 1.0;
                           for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
                           return s + x[0];
                         }};

}  // namespace

TEST_CASE("applying operators") {
  const cplx q(0.9, 0.3), t(0.7, -0.2);
  const TestFunction id{"x0", [](const Values& x) { return x[0]; }};
  CHECK(rel(apply(op_macdonald(1, q, t), id, {1.0}), q) < 1e-15);
  CHECK(rel(apply(op_Dtilde21(1, q, t), id, {cplx(1.3, 0.4)}), q) < 1e-15);

  Rng rng(71);
  for (int n = 1; n <= 4; ++n) {
    Values x(n);
    for (auto& v : x) v = rng.annulus(0.7, 1.4);
    CHECK(rel(apply(op_Dtilde21(n, q, t), kPoly, x), dtilde_by_hand(kPoly, x, q, t)) < 1e-12);
    const TestFunction one{"1", [](const Values&) { return cplx(1.0); }};
    const TestFunction sum{"poly+x0", [&](const Values& y) { return kPoly.eval(y) + id.eval(y); }};
    const DiffOperator d = op_Htilde21(n, q, t, cplx(0.4, 0.1), -0.3);
    CHECK(rel(apply(d, sum, x), apply(d, kPoly, x) + apply(d, id, x)) < 1e-12);
    // the beta part is multiplication by sum 1/x_i
    cplx inv = 0.0;
    for (cplx v : x) inv += 1.0 / v;
    CHECK(rel(apply(d, one, x) - apply(op_Htilde21(n, q, t, cplx(0.4, 0.1), 0.0), one, x), -0.3 * inv) < 1e-12);
  }
}

TEST_CASE("operator structure") {
  const cplx q(0.9, 0.3), t(0.7, -0.2);
  for (int n = 1; n <= 4; ++n) {
    CHECK(op_Dtilde21(n, q, t).terms.size() == static_cast<std::size_t>(n + n * (n - 1) / 2));
    CHECK(op_Htilde21(n, q, t, 1.0, 1.0).terms.size() == static_cast<std::size_t>(3 * n + n * (n - 1) / 2));
    CHECK(op_macdonald(n, q, t).terms.size() == static_cast<std::size_t>(n));
  }
  const Values x{cplx(1.1, 0.2), cplx(0.8, -0.5), cplx(-0.9, 0.3)};
  for (cplx tt : {cplx(1.0), q}) {
    const DiffOperator d = op_Dtilde21(3, q, tt);
    for (const auto& term : d.terms)
      if (std::count(term.shift.begin(), term.shift.end(), 1) == 2) CHECK(std::abs(term.coeff.eval(x, q, tt)) < 1e-15);
  }
}

TEST_CASE("bad parameters and poles") {
  CHECK(code_of([] { op_Dtilde21(2, -1.0, 0.5); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { op_Dtilde21(2, std::polar(1.0, 2 * M_PI / 5), 0.5); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { op_macdonald(2, 0.0, 0.5); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { op_macdonald(2, 0.9, 0.0); }) == ErrorCode::BadParameters);
  CHECK_NOTHROW(op_Dtilde21(2, std::polar(1.0, 1.0), 0.5));

  const DiffOperator d = op_Dtilde21(2, cplx(0.9, 0.3), 0.5);
  CHECK(code_of([&] { apply(d, kPoly, {1.2, 1.2}); }) == ErrorCode::PoleProximity);
  CHECK(code_of([&] { apply(d, kPoly, {cplx(0.9, 0.3) * 1.2, 1.2}); }) == ErrorCode::PoleProximity);
}

TEST_CASE("classical symbols match the chart Hamiltonians") {
  Rng rng(72);
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k < 30; ++k) {
      const cplx t = rng.annulus(0.6, 1.4), q = rng.annulus(0.85, 1.15);
      const DarbouxPoint pt = random_darboux_point(rng, n, t);
      CHECK(rel(classical_symbol(op_Dtilde21(n, q, t), pt), coord_G21(pt)) < 1e-10);
      if (k < 3) {
        const cplx alpha(0.4, -0.2), beta(1.3, 0.5);
        CHECK(rel(classical_symbol(op_Htilde21(n, q, t, alpha, beta), pt),
                  coord_G(pt, 2) + alpha * coord_G(pt, 1) + beta * coord_G(pt, 0)) < 1e-10);
        CHECK(rel(classical_symbol(op_macdonald(n, q, t), pt), cauchy_B(pt).trace()) < 1e-10);
      }
    }
}

TEST_CASE("the gauge transformation relating D~ and D") {
  Rng rng(73);
  const double q = 0.83;
  const double lq = std::log(q);
  const auto g = [&](const Values& x) {
    double s = 0.0;
    for (cplx v : x) s += std::pow(std::log(v.real()) / lq, 2);
    return std::exp(lq * s / 4.0);
  };
  for (int n = 1; n <= 4; ++n) {
    Values x(n);
    for (auto& v : x) v = rng.uniform(0.5, 2.0);
    const cplx t = rng.uniform(0.3, 0.9);
    const TestFunction over_g{"f/g", [&](const Values& y) { return kPoly.eval(y) / g(y); }};
    CHECK(rel(apply(op_Dtilde21(n, q, t), kPoly, x), g(x) * apply(op_D21(n, q, t), over_g, x)) < 1e-11);
  }
}

TEST_CASE("symmetry spot check and the test functions") {
  const cplx q(0.95, 0.2);
  CHECK(spot_check_symmetry(elementary_function(3, 2), 3, 5));
  const TestFunction f = quasi_invariant_function(3, 2, q);
  CHECK_FALSE(f.symmetric);
  CHECK_FALSE(spot_check_symmetry(f, 3, 5));
  // Delta_m vanishes to the needed order: T_a^j f = T_b^j f on x_a = x_b
  const Values x{cplx(1.1, 0.1), cplx(1.1, 0.1), cplx(0.7, -0.4)};
  for (int j = 1; j <= 2; ++j) {
    Values a = x, b = x;
    a[0] *= std::pow(q, j);
    b[1] *= std::pow(q, j);
    CHECK(rel(f.eval(a), f.eval(b)) < 1e-12);
  }
}

TEST_CASE("D~ preserves quasi-invariance exactly when t = q^-m") {
  Rng rng(74);
  for (int m = 1; m <= 3; ++m)
    for (int n = 2; n <= 3; ++n) {
      const cplx q = rng.annulus(0.85, 1.15);
      const TestFunction f = quasi_invariant_function(n, m, q);
      QuasiInvarianceOptions opts;
      opts.seed = 100 + 10 * m + n;
      const auto good = quasi_invariance_check(op_Dtilde21(n, q, std::pow(q, -m)), m, f, opts);
      REQUIRE(good.size() == 2);
      CHECK(good[0].check == "input_in_Qm");
      CHECK(good[1].check == "quasi_invariance");
      INFO("m=" << m << " n=" << n << " residual " << good[1].max_residual);
      CHECK(good[0].pass);
      CHECK(good[1].pass);
      const auto control = quasi_invariance_check(op_Dtilde21(n, q, 1.1 * std::pow(q, -m)), m, f, opts);
      CHECK(control[0].pass);
      CHECK_FALSE(control[1].pass);
      CHECK(control[1].max_residual > 1e-3);
    }
}

TEST_CASE("symmetric inputs make the check vacuous, and false flags are caught") {
  const cplx q(0.97, 0.15);
  const auto checks = quasi_invariance_check(op_Dtilde21(3, q, 1.1 * std::pow(q, -1)), 1, elementary_function(3, 2));
  CHECK(checks[1].pass);
  TestFunction liar = quasi_invariant_function(3, 1, q);
  liar.symmetric = true;
  CHECK(code_of([&] { quasi_invariance_check(op_Dtilde21(3, q, 1.0 / q), 1, liar); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { quasi_invariance_check(op_Dtilde21(1, q, 1.0 / q), 1, elementary_function(1, 1)); }) ==
        ErrorCode::InvalidArgument);
}
