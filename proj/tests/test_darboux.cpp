#include <doctest.h>

#include "rsq/darboux.hpp"
#include "rsq/sampling.hpp"

using namespace rsq;

namespace {

bool throws_code(auto&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

/// Cauchy entry written out independently of the library.
cplx cauchy_entry(const Values& x, const Values& s, cplx t, int i, int j) {
  cplx prod = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (static_cast<int>(k) != j) prod *= (1.0 - t * x[j] / x[k]) / (1.0 - x[j] / x[k]);
  return s[j] * (t - 1.0) / (t - x[i] / x[j]) * prod;
}

}  // namespace

TEST_CASE("regularity of positions") {
  const cplx t(0.8, 0.3);
  CHECK(throws_code([&] { DarbouxPoint({1.0, 1.0}, {1.0, 1.0}, t); }, ErrorCode::RegularityViolation));
  CHECK(throws_code([&] { DarbouxPoint({1.0, t}, {1.0, 1.0}, t); }, ErrorCode::RegularityViolation));
  CHECK(throws_code([&] { DarbouxPoint({0.0, 2.0}, {1.0, 1.0}, t); }, ErrorCode::RegularityViolation));
  CHECK(throws_code([&] { DarbouxPoint({1.0, 2.0}, {1.0, 0.0}, t); }, ErrorCode::RegularityViolation));
  CHECK(throws_code([&] { DarbouxPoint({1.0, 2.0}, {1.0}, t); }, ErrorCode::InvalidArgument));
  CHECK_NOTHROW(DarbouxPoint({1.0, 2.0}, {1.0, cplx(0, 1)}, t));
}

TEST_CASE("the Lax matrix matches the closed form and the rank-one condition") {
  Rng rng(31);
  for (int n = 1; n <= 6; ++n) {
    const cplx t = rng.annulus(0.6, 1.4);
    const DarbouxPoint pt = random_darboux_point(rng, n, t);
    const CMatrix B = cauchy_B(pt);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(std::abs(B(i, j) - cauchy_entry(pt.x, pt.sigma, t, i, j)) < 1e-12 * std::max(1.0, std::abs(B(i, j))));
    CMatrix X = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) X(i, i) = pt.x[i];
    const CMatrix R = X * B * mat_inv(X) * mat_inv(B) - t * identity(n);
    CHECK(numerical_rank(R, {1e-12, 1e-9}) == 1);
  }
}

TEST_CASE("n = 1: the Lax matrix is sigma") {
  const DarbouxPoint pt({cplx(1.3, 0.2)}, {cplx(0.4, -0.9)}, cplx(0.7, 0.1));
  CHECK(std::abs(cauchy_B(pt)(0, 0) - pt.sigma[0]) < 1e-15);
  CHECK(std::abs(upsilon_product(pt.x, 0, pt.t) - 1.0) == 0.0);
}

TEST_CASE("upsilon product and the nu coordinates") {
  Rng rng(32);
  const cplx t = rng.annulus(0.6, 1.4);
  const DarbouxPoint pt = random_darboux_point(rng, 4, t);
  cplx direct = 1.0;
  for (int k : {0, 1, 3}) direct *= (1.0 - t * pt.x[2] / pt.x[k]) / (1.0 - pt.x[2] / pt.x[k]);
  CHECK(std::abs(upsilon_product(pt.x, 2, t) - direct) < 1e-13 * std::abs(direct));

  const Values nu = nu_from_sigma(pt.x, pt.sigma, t);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(nu[i] - pt.sigma[i] * upsilon_product(pt.x, i, t)) < 1e-13 * std::abs(nu[i]));
  const Values back = sigma_from_nu(pt.x, nu, t);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - pt.sigma[i]) < 1e-13 * std::abs(pt.sigma[i]));
}

TEST_CASE("tadpole points built from the chart") {
  Rng rng(33);
  const QuiverParams p = random_regular_params(rng, 1, 4);
  const DarbouxPoint pt = random_darboux_point(rng, 4, p.t());
  const TadpoleData d = build_tadpole_point(pt, p.q[0]);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(d.X(i, i) - pt.x[i]) == 0.0);
  CHECK(rel_diff(d.Z(), cauchy_B(pt)) < 1e-12);
  CHECK(verify_tadpole_moment(d, p.q[0]).max() < 1e-10);
}

TEST_CASE("dual chart round trip") {
  Rng rng(34);
  for (int n = 2; n <= 4; ++n) {
    const QuiverParams p = random_regular_params(rng, 1, n);
    const TadpoleData d = build_tadpole_point(random_darboux_point(rng, n, p.t()), p.q[0]);
    const DualExtraction ex = dual_chart_extract_full(d, p.q[0]);
    CHECK(ex.residual < 1e-8);
    CHECK(ex.gap > 1e-8);
    const TadpoleData dual = build_dual_tadpole_point(ex.point, p.q[0]);
    CHECK(verify_tadpole_moment(dual, p.q[0]).max() < 1e-9);
    // same point up to gauge: equal traces of words in X and Z
    const auto a = gauge_fingerprint(d, 3), b = gauge_fingerprint(dual, 3);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8 * std::max(1.0, std::abs(a[k])));
    // positions of the dual chart are the spectrum of Z, sorted
    for (int i = 0; i + 1 < n; ++i) CHECK_FALSE(complex_less(ex.point.pos[i + 1], ex.point.pos[i]));
  }
}

TEST_CASE("dual Lax matrix uses 1/t") {
  const DualPoint dp({1.0, cplx(0.4, 1.1)}, {cplx(0.3, 0.2), 2.0}, cplx(0.9, 0.2));
  const CMatrix A = dual_cauchy(dp);
  CHECK(rel_diff(A, cauchy_matrix(dp.pos, dp.mom, 1.0 / dp.t)) == 0.0);
  CHECK(std::abs(A(0, 1) - cauchy_entry(dp.pos, dp.mom, 1.0 / dp.t, 0, 1)) < 1e-14);
}
