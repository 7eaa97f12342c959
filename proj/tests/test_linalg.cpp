#include <doctest.h>

#include "rsq/linalg.hpp"
#include "rsq/sampling.hpp"

using namespace rsq;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rsq::Error");
  return ErrorCode::InvalidArgument;
}

/// phi(z) = z^{-1}(exp(-t z^k) - 1) and its derivative, by hand.
cplx phi_scalar(cplx z, int k, cplx t) { return (std::exp(-t * std::pow(z, k)) - 1.0) / z; }
cplx phi_prime(cplx z, int k, cplx t) {
  const cplx e = std::exp(-t * std::pow(z, k));
  return (-t * static_cast<double>(k) * std::pow(z, k - 1) * e * z - (e - 1.0)) / (z * z);
}

}  // namespace

TEST_CASE("tolerance combines absolute and relative bounds") {
  const Tolerance tol;
  CHECK(tol.close(1.0, 1.0 + 5e-11));
  CHECK_FALSE(tol.close(1.0, 1.0 + 1e-9));
  CHECK(tol.close(0.0, 5e-13));
  CHECK_FALSE(tol.close(0.0, 5e-12));
  CHECK(tol.close(cplx(1e6, 0), cplx(1e6, 5e-5)));
}

TEST_CASE("inverse, determinant and powers") {
  Rng rng(3);
  const CMatrix a = rng.near_identity(5);
  const CMatrix b = rng.near_identity(5);
  CHECK(max_norm(a * mat_inv(a) - identity(5)) < 1e-13);
  CHECK(std::abs(det(a * b) - det(a) * det(b)) < 1e-12 * std::abs(det(a) * det(b)));
  CHECK(max_norm(mat_pow(a, 3) - a * a * a) < 1e-12);
  CHECK(max_norm(mat_pow(a, -2) * a * a - identity(5)) < 1e-12);
  CHECK(max_norm(mat_pow(a, 0) - identity(5)) == 0.0);

  CMatrix upper = CMatrix::Zero(3, 3);
  upper << 2.0, 1.0, 4.0, 0.0, cplx(0, 3), 5.0, 0.0, 0.0, -1.0;
  CHECK(std::abs(det(upper) - cplx(0, -6)) < 1e-14);
}

TEST_CASE("singular matrices are rejected") {
  CMatrix s(2, 2);
  s << 1.0, 2.0, 2.0, 4.0;
  CHECK(code_of([&] { mat_inv(s); }) == ErrorCode::SingularMatrix);
  CHECK(code_of([&] { mat_pow(s, -1); }) == ErrorCode::SingularMatrix);
}

TEST_CASE("numerical rank") {
  Rng rng(5);
  const CMatrix u = rng.matrix(4, 1), v = rng.matrix(1, 4);
  CHECK(numerical_rank(u * v) == 1);
  CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
  CHECK(numerical_rank(CMatrix::Constant(3, 3, 1e-15)) == 0);
  CHECK(numerical_rank(rng.near_identity(4)) == 4);
  const auto sv = singular_values(u * v);
  CHECK(sv.size() == 4);
  CHECK(std::abs(sv[0] - u.norm() * v.norm()) < 1e-12 * sv[0]);
}

TEST_CASE("matrix exponential") {
  CVector d(3);
  d << cplx(0.5, 1.0), -1.0, cplx(0, 2);
  const CMatrix e = mat_exp(diag(d));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(e(i, i) - std::exp(d(i))) < 1e-14);

  CMatrix nil = CMatrix::Zero(2, 2);
  nil(0, 1) = 3.0;
  CHECK(max_norm(mat_exp(nil) - (identity(2) + nil)) < 1e-15);

  Rng rng(9);
  const CMatrix a = rng.matrix(4, 4) * 0.7;
  CHECK(max_norm(mat_exp(a) * mat_exp(-a) - identity(4)) < 1e-12);
}

TEST_CASE("phi agrees with the scalar function, on Jordan blocks, and across routes") {
  const cplx t(0.4, -0.3);
  CMatrix z(1, 1);
  z(0, 0) = cplx(0.7, 0.2);
  CHECK(std::abs(mat_phi(z, 2, t)(0, 0) - phi_scalar(z(0, 0), 2, t)) < 1e-14);

  // phi(lambda + N) = phi(lambda) + phi'(lambda) N
  const cplx lambda(0.9, -0.4);
  CMatrix jordan = CMatrix::Zero(2, 2);
  jordan << lambda, 1.0, 0.0, lambda;
  const CMatrix pj = mat_phi(jordan, 3, t);
  CHECK(std::abs(pj(0, 0) - phi_scalar(lambda, 3, t)) < 1e-12);
  CHECK(std::abs(pj(0, 1) - phi_prime(lambda, 3, t)) < 1e-11);
  CHECK(std::abs(pj(1, 0)) < 1e-14);

  // phi(0) = -p'(0) when p starts at z^1
  CMatrix zero = CMatrix::Zero(2, 2);
  CHECK(max_norm(mat_phi(zero, 1, t) + t * identity(2)) < 1e-14);

  Rng rng(11);
  const CMatrix a = rng.matrix(4, 4) * 0.5;
  const ExponentPoly p{{1, cplx(0.2, 0.1)}, {2, cplx(-0.3, 0.05)}};
  CHECK(rel_diff(mat_phi(a, p), mat_phi_series(a, p)) < 1e-11);
  // z phi(z) = exp(-p(z)) - 1
  CHECK(max_norm(a * mat_phi(a, p) - (mat_exp(-poly_eval(a, p)) - identity(4))) < 1e-12);
}

TEST_CASE("eigensystem and canonical order") {
  Rng rng(13);
  const CMatrix a = rng.matrix(5, 5);
  const Eigensystem es = eigensystem(a);
  CHECK(max_norm(a * es.vectors - es.vectors * diag(es.values)) < 1e-11);
  CHECK(es.vector_condition >= 1.0);
  CHECK(complex_less(cplx(1, 5), cplx(2, -3)));
  CHECK(complex_less(cplx(1, -1), cplx(1, 0)));
  CHECK_FALSE(complex_less(cplx(1, 0), cplx(1, 0)));
}

TEST_CASE("comparisons and helpers") {
  CMatrix a = identity(2), b = identity(2);
  b(0, 1) = 1e-13;
  CHECK(approx_eq(a, b));
  b(0, 1) = 1e-6;
  CHECK_FALSE(approx_eq(a, b));
  CHECK(rel_diff(a, b) == doctest::Approx(1e-6));
  CHECK(all_finite(a));
  a(1, 1) = std::nan("");
  CHECK_FALSE(all_finite(a));
  CHECK(rel_diff(cplx(2, 0), cplx(2, 0)) == 0.0);
  CHECK(std::string(error_name(ErrorCode::PoleProximity)) == "PoleProximity");
}
