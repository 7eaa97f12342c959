#include <doctest.h>

#include "rsq/poisson.hpp"
#include "rsq/sampling.hpp"

using namespace rsq;

namespace {

std::vector<DarbouxPoint> draw_points(Rng& rng, int n, cplx t, int count) {
  std::vector<DarbouxPoint> pts;
  for (int i = 0; i < count; ++i) pts.push_back(random_darboux_point(rng, n, t));
  return pts;
}

void check_all(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    INFO(c.check << ": " << c.identity << " residual " << c.max_residual);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("canonical bracket of explicit functions") {
  const DarbouxPoint pt({cplx(1.1, 0.3), cplx(-0.6, 0.9)}, {cplx(0.8, -0.2), cplx(0.4, 0.7)}, cplx(0.9, 0.2));
  const ChartFunction f{"x0^2 sigma0", [](const DarbouxPoint& p) { return p.x[0] * p.x[0] * p.sigma[0]; }};
  const BracketEstimate b = canonical_bracket(f, coordinate_sigma(0), pt);
  const cplx expected = 2.0 * pt.x[0] * pt.x[0] * pt.sigma[0] * pt.sigma[0];
  CHECK(std::abs(b.value - expected) < 1e-8 * std::abs(expected));
  CHECK(b.error < 1e-6);

  CHECK(std::abs(canonical_bracket(coordinate_x(0), coordinate_x(1), pt).value) < 1e-10);
  CHECK(std::abs(canonical_bracket(coordinate_x(1), coordinate_sigma(0), pt).value) < 1e-10);
  const cplx xs = canonical_bracket(coordinate_x(1), coordinate_sigma(1), pt).value;
  CHECK(std::abs(xs - pt.x[1] * pt.sigma[1]) < 1e-9);
}

TEST_CASE("non-holomorphic evaluators are rejected") {
  const DarbouxPoint pt({cplx(1.1, 0.3)}, {cplx(0.8, -0.2)}, cplx(0.9, 0.2));
  const ChartFunction bad{"conj", [](const DarbouxPoint& p) { return std::conj(p.x[0]) * p.sigma[0]; }};
  try {
    chart_gradient(bad, pt);
    FAIL("expected NonHolomorphic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHolomorphic);
  }
}

TEST_CASE("each family is in involution, and mixed families are not") {
  Rng rng(61);
  for (int m = 1; m <= 2; ++m) {
    const QuiverParams p = random_regular_params(rng, m, 3);
    const auto pts = draw_points(rng, 3, p.t(), 2);
    for (Family f : {Family::E, Family::F, Family::G, Family::H}) {
      const std::vector<ChartFunction> fam{family_function(f, 1, p), family_function(f, 2, p)};
      const CheckResult c = verify_involution(fam, pts);
      INFO(family_name(f) << " m=" << m << " residual " << c.max_residual);
      CHECK(c.pass);
    }
    const CheckResult control = verify_involution({family_function(Family::E, 1, p), family_function(Family::H, 1, p)}, pts);
    CHECK_FALSE(control.pass);
    CHECK(control.max_residual > 1e-2);
  }
}

TEST_CASE("chart brackets and the nu closed form") {
  Rng rng(62);
  const QuiverParams p = random_regular_params(rng, 1, 3);
  const auto pts = draw_points(rng, 3, p.t(), 3);
  check_all(verify_chart_brackets(pts));
  const DarbouxPoint& pt = pts.front();
  const BracketEstimate b = canonical_bracket(coordinate_nu(0), coordinate_nu(2), pt);
  const cplx expected = nu_nu_bracket(pt, 0, 2);
  CHECK(normalized_residual(b.value, expected, coordinate_nu(0).eval(pt), coordinate_nu(2).eval(pt), b.scale) < 1e-6);
  CHECK(std::abs(nu_nu_bracket(pt, 0, 2) + nu_nu_bracket(pt, 2, 0)) < 1e-12 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("xi lift brackets") {
  Rng rng(63);
  for (int m = 2; m <= 3; ++m) {
    const QuiverParams p = random_regular_params(rng, m, 2);
    check_all(verify_xi_poisson(p, draw_points(rng, 2, p.t(), 2)));
  }
  CHECK_THROWS_AS(verify_xi_poisson(QuiverParams(1, 2, {1.3}), {}), Error);
}

TEST_CASE("the dual chart is anti-canonical") {
  Rng rng(64);
  for (int n = 2; n <= 3; ++n) {
    const QuiverParams p = random_regular_params(rng, 1, n);
    std::vector<CheckResult> checks;
    for (int attempt = 0; attempt < 10 && checks.empty(); ++attempt) {
      try {
        checks = verify_duality(random_darboux_point(rng, n, p.t()), p.q[0], n == 2 ? 1e-5 : 1e-4);
      } catch (const Error& e) {
        REQUIRE(e.code() == ErrorCode::DegenerateSpectrum);
      }
    }
    REQUIRE_FALSE(checks.empty());
    check_all(checks);
  }
}
