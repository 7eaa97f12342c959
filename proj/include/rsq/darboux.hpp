/**
 * @file darboux.hpp
 * @brief Log-canonical charts (x, sigma) and their duals.
 *
 * A chart point (x, sigma, t) produces the Cauchy-type Lax matrix
 *   B_ij = sigma_j (t-1)/(t - x_i/x_j) prod_{k != j} (1 - t x_j/x_k)/(1 - x_j/x_k),
 * for which diag(x) B diag(x)^{-1} B^{-1} - t has rank one. The dual chart
 * (z, theta) diagonalizes Z instead and uses the parameter t^{-1}.
 */
#pragma once

#include <vector>

#include "rsq/linalg.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

using Values = std::vector<cplx>;

/// x_i != 0, x_i != x_j and x_i != t x_j for i != j, relative tolerance tol.
void check_regular_positions(const Values& x, cplx t, double tol = 1e-10);

struct DarbouxPoint {
  int n = 0;
  Values x, sigma;
  cplx t;

  DarbouxPoint() = default;
  /// Throws RegularityViolation outside h_reg or when some sigma_i = 0.
  DarbouxPoint(Values x, Values sigma, cplx t);
};

/// Dual chart point: positions z (or w) and momenta theta (or u). The matrix
/// attached to it is cauchy_matrix(pos, mom, 1/t).
struct DualPoint {
  int n = 0;
  Values pos, mom;
  cplx t;

  DualPoint() = default;
  DualPoint(Values pos, Values mom, cplx t);
};

/// Cauchy-type matrix with parameter s (no regularity check).
CMatrix cauchy_matrix(const Values& x, const Values& sigma, cplx s);
CMatrix cauchy_B(const DarbouxPoint& pt);
/// The dual Lax matrix cauchy_matrix(pos, mom, 1/t).
CMatrix dual_cauchy(const DualPoint& dp);

/// prod_{k != j} (1 - s x_j/x_k)/(1 - x_j/x_k).
cplx upsilon_product(const Values& x, int j, cplx s);

Values sigma_from_nu(const Values& x, const Values& nu, cplx t);
Values nu_from_sigma(const Values& x, const Values& sigma, cplx t);

/// X = diag(x), Z = cauchy_B(pt), Y = Z - X^{-1}; V = (1, ..., 1)^T and
/// W_i = (q0 - 1) prod_{k != i} (x_i - q0 x_k)/(x_i - x_k), the closed-form
/// factorization of q0 (1+YX)(1+XY)^{-1} - 1.
TadpoleData build_tadpole_point(const DarbouxPoint& pt, cplx q0);
/// xi_lift(diag(x), cauchy_B(pt), p), with the framing in closed form.
CyclicData build_cyclic_point(const DarbouxPoint& pt, const QuiverParams& p);
/// Z = diag(z), X = cauchy_matrix(z, theta, 1/q0), Y = Z - X^{-1}.
TadpoleData build_dual_tadpole_point(const DualPoint& dp, cplx q0);

struct DualExtraction {
  DualPoint point;
  double residual = 0.0;  ///< max deviation of X from the dual Cauchy form, relative
  double gap = 0.0;       ///< min eigenvalue distance / spread
};

/// Diagonalizes Z = Y + X^{-1}, sorts its eigenvalues by (Re, Im) and reads
/// theta off the diagonal of X in that eigenbasis. Throws DegenerateSpectrum
/// when the relative eigenvalue gap is below 1e-8 and ChartMismatch when X
/// deviates from the dual Cauchy form by more than 1e-8.
DualExtraction dual_chart_extract_full(const TadpoleData& d, cplx q0);
DualPoint dual_chart_extract(const TadpoleData& d, cplx q0);

}  // namespace rsq
