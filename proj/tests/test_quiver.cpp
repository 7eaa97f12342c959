#include <doctest.h>

#include "rsq/darboux.hpp"
#include "rsq/quiver.hpp"
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

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  return d;
}

}  // namespace

TEST_CASE("parameters: partial products and regularity") {
  const QuiverParams p(3, 2, {cplx(0.9, 0.1), cplx(1.2, 0), cplx(0.8, -0.3)});
  CHECK(std::abs(p.t_s(0) - p.q[0]) < 1e-15);
  CHECK(std::abs(p.t_s(2) - p.q[0] * p.q[1] * p.q[2]) < 1e-15);
  CHECK(std::abs(p.t() - p.t_s(2)) == 0.0);
  CHECK(std::abs(p.q_inf() - std::pow(p.t(), -2)) < 1e-14);
  const auto ts = p.t_list();
  CHECK(ts.size() == 3);
  CHECK(std::abs(ts[1] - p.t_s(1)) < 1e-15);

  CHECK(QuiverParams(1, 3, {cplx(0.9, 0.3)}).is_regular());
  // t = -1 is a root of unity
  CHECK_FALSE(QuiverParams(1, 3, {-1.0}).is_regular());
  // a single q_1 equal to t
  CHECK_FALSE(QuiverParams(2, 2, {1.0, cplx(0.7, 0.2)}).is_regular());
  CHECK(throws_code([] { QuiverParams(2, 2, {1.0}); }, ErrorCode::InvalidArgument));
  CHECK(throws_code([] { QuiverParams(1, 2, {0.0}); }, ErrorCode::InvalidArgument));
}

TEST_CASE("expected dimension is 2n") {
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 5; ++n) CHECK(expected_dimension(QuiverParams(m, n, std::vector<cplx>(m, 1.3))) == 2 * n);
}

TEST_CASE("tadpole data rejects singular factors") {
  CMatrix x(1, 1), y(1, 1), v(1, 1), w(1, 1);
  x(0, 0) = 1.0;
  y(0, 0) = -1.0;
  v(0, 0) = 0.5;
  w(0, 0) = 0.5;
  CHECK(throws_code([&] { TadpoleData(x, y, v, w); }, ErrorCode::SingularFactor));
  CHECK(throws_code([&] { TadpoleData(CMatrix::Identity(2, 2), CMatrix::Zero(3, 3), v, w); },
                    ErrorCode::InvalidArgument));
}

TEST_CASE("chart points satisfy the moment relations") {
  Rng rng(21);
  for (int n = 1; n <= 5; ++n) {
    const QuiverParams p1 = random_regular_params(rng, 1, n);
    const TadpoleData tad = build_tadpole_point(random_darboux_point(rng, n, p1.t()), p1.q[0]);
    const Residuals r = verify_tadpole_moment(tad, p1.q[0]);
    CHECK(r.pass());
    CHECK(r.max() < 1e-10);
    for (int m = 2; m <= 4; ++m) {
      const QuiverParams p = random_regular_params(rng, m, n);
      const CyclicData cyc = build_cyclic_point(random_darboux_point(rng, n, p.t()), p);
      CHECK(verify_cyclic_moment(cyc, p).max() < 1e-10);
    }
  }
}

TEST_CASE("a perturbed point fails and names the violated relation") {
  Rng rng(22);
  const QuiverParams p = random_regular_params(rng, 1, 3);
  TadpoleData tad = build_tadpole_point(random_darboux_point(rng, 3, p.t()), p.q[0]);
  tad.X(0, 1) += 1e-3;
  const Residuals r = verify_tadpole_moment(tad, p.q[0]);
  CHECK_FALSE(r.pass());
  CHECK(r.worst() == "(1+XY)(1+YX)^-1(1+VW) = q0");

  const QuiverParams pc = random_regular_params(rng, 3, 2);
  CyclicData cyc = build_cyclic_point(random_darboux_point(rng, 2, pc.t()), pc);
  cyc.Y[1](0, 0) += 1e-3;
  const Residuals rc = verify_cyclic_moment(cyc, pc);
  CHECK_FALSE(rc.pass());
  CHECK(rc.worst().find("vertex") != std::string::npos);
}

TEST_CASE("block operators place arrows by the composition convention") {
  Rng rng(23);
  const QuiverParams p = random_regular_params(rng, 3, 2);
  const CyclicData cyc = build_cyclic_point(random_darboux_point(rng, 2, p.t()), p);
  const CMatrix bx = cyc.big_X(), by = cyc.big_Y();
  CHECK(max_norm(bx.block(0, 2, 2, 2) - cyc.X[0]) == 0.0);
  CHECK(max_norm(bx.block(4, 0, 2, 2) - cyc.X[2]) == 0.0);
  CHECK(max_norm(by.block(2, 0, 2, 2) - cyc.Y[0]) == 0.0);
  CHECK(max_norm(by.block(0, 4, 2, 2) - cyc.Y[2]) == 0.0);
  CHECK(max_norm(bx.block(0, 0, 2, 2)) == 0.0);
  const CyclicData back = cyclic_from_blocks(bx, by, cyc.V, cyc.W, 3);
  for (int s = 0; s < 3; ++s) {
    CHECK(max_norm(back.X[s] - cyc.X[s]) == 0.0);
    CHECK(max_norm(back.Z(s) - cyc.Z(s)) < 1e-13);
  }
  CHECK(max_norm(cyc.big_V().block(0, 0, 2, 1) - cyc.V) == 0.0);
  CHECK(max_norm(cyc.big_V().block(2, 0, 4, 1)) == 0.0);
}

TEST_CASE("the xi lift reproduces the tadpole pair") {
  Rng rng(24);
  for (int m = 2; m <= 4; ++m) {
    const QuiverParams p = random_regular_params(rng, m, 3);
    const DarbouxPoint pt = random_darboux_point(rng, 3, p.t());
    CMatrix A = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) A(i, i) = pt.x[i];
    const CMatrix B = cauchy_B(pt);
    const CyclicData cyc = xi_lift(A, B, p);
    CHECK(max_norm(cyc.X[m - 1] - A) == 0.0);
    CHECK(rel_diff(cyc.Z(0), p.t_s(0) * B) < 1e-12);
    CHECK(rel_diff(cyc.Z(m - 1), p.t() * mat_inv(A) * B) < 1e-12);
    CHECK(verify_cyclic_moment(cyc, p).max() < 1e-10);
  }
  CHECK(throws_code([] { xi_lift(identity(2), identity(2), QuiverParams(1, 2, {1.5})); }, ErrorCode::InvalidArgument));
}

TEST_CASE("rank-one factorization") {
  Rng rng(25);
  const CMatrix u = rng.matrix(4, 1), w = rng.matrix(1, 4);
  const auto [V, W] = rank_one_factor(u * w);
  CHECK(rel_diff(V * W, u * w) < 1e-13);
  CHECK(throws_code([&] { rank_one_factor(rng.near_identity(3)); }, ErrorCode::NotRankOne));
}

TEST_CASE("fingerprints are gauge invariant and detect changes") {
  Rng rng(26);
  const QuiverParams p1 = random_regular_params(rng, 1, 3);
  const TadpoleData tad = build_tadpole_point(random_darboux_point(rng, 3, p1.t()), p1.q[0]);
  const CMatrix g = rng.near_identity(3);
  const TadpoleData moved = gauge_transform(tad, g);
  CHECK(max_abs_diff(gauge_fingerprint(tad, 4), gauge_fingerprint(moved, 4)) < 1e-10);
  CHECK(verify_tadpole_moment(moved, p1.q[0]).max() < 1e-10);

  const QuiverParams p = random_regular_params(rng, 2, 2);
  const CyclicData cyc = build_cyclic_point(random_darboux_point(rng, 2, p.t()), p);
  const std::vector<CMatrix> gs{rng.near_identity(2), rng.near_identity(2)};
  const CyclicData cmoved = gauge_transform(cyc, gs);
  CHECK(max_abs_diff(gauge_fingerprint(cyc, 4), gauge_fingerprint(cmoved, 4)) < 1e-10);
  CHECK(verify_cyclic_moment(cmoved, p).max() < 1e-10);

  TadpoleData other = tad;
  other.X(0, 0) *= 1.01;
  CHECK(max_abs_diff(gauge_fingerprint(tad, 2), gauge_fingerprint(other, 2)) > 1e-4);
}
