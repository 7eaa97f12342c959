/**
 * @file linalg.hpp
 * @brief Dense complex linear algebra kernel shared by every numerical module.
 *
 * Matrices are Eigen::MatrixXcd. The functions here add the checks the rest of
 * the library relies on: singularity detection on inversion, numerical rank
 * relative to the largest singular value, and the entire function
 * phi(z) = z^{-1}(exp(-p(z)) - 1) evaluated on matrices.
 */
#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rsq {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class ErrorCode {
  SingularMatrix,
  SingularFactor,
  NonConvergence,
  Overflow,
  NotRankOne,
  RegularityViolation,
  DegenerateSpectrum,
  ChartMismatch,
  BadMultiple,
  NonHolomorphic,
  PoleProximity,
  BadParameters,
  TrackingAmbiguity,
  InvalidArgument,
  ConfigError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Combined absolute/relative tolerance: |a-b| <= abs + rel*max(|a|,|b|).
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;

  bool close(cplx a, cplx b) const;
  bool close(double a, double b) const;
};

double max_norm(const CMatrix& m);
bool all_finite(const CMatrix& m);
/// Entrywise combined-tolerance comparison; shapes must agree.
bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
/// max |a-b| / max(1, max|a|, max|b|).
double rel_diff(const CMatrix& a, const CMatrix& b);
double rel_diff(cplx a, cplx b);

CMatrix identity(Eigen::Index n);
CMatrix diag(const CVector& v);

/// Throws SingularMatrix when an LU pivot falls below 1e-14*max_norm(m) or the
/// reciprocal condition estimate is below 100 machine epsilons.
CMatrix mat_inv(const CMatrix& m);
/// Integer power; negative exponents go through mat_inv.
CMatrix mat_pow(const CMatrix& m, int j);
cplx det(const CMatrix& m);

std::vector<double> singular_values(const CMatrix& m);
/// Number of singular values above max(tol.abs, tol.rel*sigma_max).
int numerical_rank(const CMatrix& m, const Tolerance& tol = {});
double condition_number(const CMatrix& m);

CMatrix mat_exp(const CMatrix& m);

/// Exponent polynomial p(z) = sum_k c_k z^k with all keys k >= 1.
using ExponentPoly = std::map<int, cplx>;

/// phi(M) for phi(z) = z^{-1}(exp(-p(z)) - 1), an entire function of z.
/// Uses the eigendecomposition when the eigenvector matrix has condition
/// number at most 1e8, and a scaled Taylor series otherwise.
CMatrix mat_phi(const CMatrix& m, const ExponentPoly& p);
/// phi(z) = z^{-1}(exp(-t z^k) - 1).
CMatrix mat_phi(const CMatrix& m, int k, cplx t);
/// Series path only; exposed so tests can compare both evaluation routes.
CMatrix mat_phi_series(const CMatrix& m, const ExponentPoly& p);

/// Evaluates p(M) = sum_k c_k M^k.
CMatrix poly_eval(const CMatrix& m, const ExponentPoly& p);

struct Eigensystem {
  CVector values;
  CMatrix vectors;
  double vector_condition = 0.0;
};
Eigensystem eigensystem(const CMatrix& m);

/// Canonical complex order: by real part, then imaginary part.
bool complex_less(cplx a, cplx b);

}  // namespace rsq
