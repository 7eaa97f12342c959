#include <doctest.h>

#include "rsq/flows.hpp"
#include "rsq/sampling.hpp"

using namespace rsq;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

AnyPoint random_point(Rng& rng, const QuiverParams& p, int n) {
  const DarbouxPoint pt = random_darboux_point(rng, n, p.t());
  if (p.m == 1) return build_tadpole_point(pt, p.q[0]);
  return build_cyclic_point(pt, p);
}

}  // namespace

TEST_CASE("n = 1 tadpole H flow has the scalar closed form") {
  const cplx q0(0.9, 0.35);
  const DarbouxPoint pt({cplx(1.2, -0.4)}, {cplx(0.7, 0.5)}, q0);
  const TadpoleData d = build_tadpole_point(pt, q0);
  const cplx x0 = d.X(0, 0), y = d.Y(0, 0);
  for (int k : {1, 2, 3}) {
    const cplx t(0.6, -0.25);
    const cplx e = std::exp(-t * std::pow(y, k));
    const cplx expected = e * x0 + std::pow(y, k - 1) * (e - 1.0) / std::pow(y, k);
    const TadpoleData out = flow_H(d, k, t);
    CHECK(rel(out.X(0, 0), expected) < 1e-13);
    CHECK(std::abs(out.Y(0, 0) - y) == 0.0);
  }
}

TEST_CASE("flows preserve the moment map and their own commuting family") {
  Rng rng(51);
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      const QuiverParams p = random_regular_params(rng, m, n);
      const AnyPoint d = random_point(rng, p, n);
      for (Family which : {Family::H, Family::G}) {
        const AnyPoint out = flow_multi(d, ExponentPoly{{m, cplx(0.3, 0.2)}, {2 * m, cplx(-0.1, 0.05)}}, which);
        CHECK(verify_moment(out, p).max() < 1e-9);
        for (int j = 1; j <= 3; ++j) CHECK(rel(ham_trace(out, which, j), ham_trace(d, which, j)) < 1e-8);
      }
    }
}

TEST_CASE("flows form a one-parameter group") {
  Rng rng(52);
  for (int m = 1; m <= 2; ++m) {
    const QuiverParams p = random_regular_params(rng, m, 3);
    const AnyPoint d = random_point(rng, p, 3);
    const cplx s(0.3, 0.1), t(-0.2, 0.4);
    const AnyPoint once = flow_H(d, m, s + t);
    const AnyPoint twice = flow_H(flow_H(d, m, s), m, t);
    CHECK(rel_diff(big_X(once), big_X(twice)) < 1e-10);
    const AnyPoint g1 = flow_G(d, m, s + t);
    const AnyPoint g2 = flow_G(flow_G(d, m, t), m, s);
    CHECK(rel_diff(big_X(g1), big_X(g2)) < 1e-10);
    CHECK(rel_diff(big_X(flow_H(d, m, 0.0)), big_X(d)) < 1e-14);
  }
}

TEST_CASE("the H flow solves its first-order equation") {
  Rng rng(53);
  const QuiverParams p = random_regular_params(rng, 1, 3);
  const AnyPoint d = random_point(rng, p, 3);
  const double r1 = ode_residual(d, 1, 1e-4), r2 = ode_residual(d, 1, 5e-5);
  CHECK(r1 < 1e-2);
  // first-order scheme: halving the step halves the residual
  CHECK(r1 / r2 > 1.8);
  CHECK(r1 / r2 < 2.2);
}

TEST_CASE("flow powers must be multiples of m") {
  Rng rng(54);
  const QuiverParams p = random_regular_params(rng, 2, 2);
  const AnyPoint d = random_point(rng, p, 2);
  try {
    flow_H(d, 3, 0.1);
    FAIL("expected BadMultiple");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadMultiple);
  }
  CHECK_THROWS_AS(flow_G(d, 0, 0.1), Error);
  CHECK_NOTHROW(flow_G(d, 4, 0.1));
}

TEST_CASE("eigenvalue curves are matched by displacement") {
  const Values prev{1.0, cplx(0, 1), -1.0};
  const Values next{cplx(-1.01, 0), cplx(1.02, 0), cplx(0, 0.99)};
  CHECK(match_by_displacement(prev, next) == std::vector<int>{1, 2, 0});
  // ties resolve to the smallest permutation
  CHECK(match_by_displacement({0.0, 0.0}, {0.0, 0.0}) == std::vector<int>{0, 1});
}

TEST_CASE("trajectory snapshots and CSV layout") {
  Rng rng(55);
  const QuiverParams p = random_regular_params(rng, 1, 2);
  const AnyPoint d = random_point(rng, p, 2);
  const FlowSpec spec{Family::H, ExponentPoly{{1, cplx(0.3, 0.2)}}};
  const std::vector<double> times{0.0, 0.5, 1.0};
  const Trajectory tr = trajectory(d, p, spec, times, {{Family::H, 1}, {Family::G, 1}});
  REQUIRE(tr.points.size() == 3);
  CHECK(rel_diff(big_X(tr.points[2]), big_X(flow_multi(d, ExponentPoly{{1, cplx(0.3, 0.2)}}, Family::H))) < 1e-13);
  for (const auto& c : tr.conserved) CHECK(rel(c[0], tr.conserved[0][0]) < 1e-9);
  for (double r : tr.moment_residuals) CHECK(r < 1e-9);
  const std::string csv = trajectory_csv(tr);
  CHECK(csv.rfind("time,re_pos_1,im_pos_1,re_pos_2,im_pos_2,re_H1,im_H1,re_G1,im_G1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  const Trajectory tr4 = trajectory(d, p, spec, times, {{Family::H, 1}}, 4);
  CHECK(trajectory_csv(tr4) == trajectory_csv(trajectory(d, p, spec, times, {{Family::H, 1}}, 1)));
}
