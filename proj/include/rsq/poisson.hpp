/**
 * @file poisson.hpp
 * @brief Finite-difference Poisson brackets in the log-canonical chart
 *        {x_i, sigma_j} = delta_ij x_i sigma_j, and the checks built on them.
 *
 * Partial derivatives are central differences along the real axis of each
 * coordinate at steps h and h/2, combined by Richardson extrapolation. A
 * third stencil along the imaginary axis tests holomorphy: for a holomorphic
 * evaluator both directions agree up to the truncation gap.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rsq/check.hpp"
#include "rsq/darboux.hpp"
#include "rsq/hamiltonians.hpp"

namespace rsq {

struct ChartFunction {
  std::string name;
  std::function<cplx(const DarbouxPoint&)> eval;
};

struct DiffOptions {
  double h = 1e-5;        ///< step relative to |coordinate|
  double noise = 1e-13;   ///< relative rounding level of the evaluator
  bool check_holomorphic = true;
};

struct ChartGradient {
  cplx value;
  Values dx, dsigma;
  std::vector<double> err_x, err_sigma;
};

/// Throws NonHolomorphic when the real- and imaginary-direction derivatives
/// disagree by more than 100x the expected gap.
ChartGradient chart_gradient(const ChartFunction& f, const DarbouxPoint& pt, const DiffOptions& opts = {});

struct BracketEstimate {
  cplx value;
  double error = 0.0;
  double scale = 0.0;  ///< sum of the absolute values of the terms
};

BracketEstimate bracket_from_gradients(const ChartGradient& f, const ChartGradient& g, const DarbouxPoint& pt);
BracketEstimate canonical_bracket(const ChartFunction& f, const ChartFunction& g, const DarbouxPoint& pt,
                                  const DiffOptions& opts = {});

/// |computed - expected| / max(|f g|, scale).
double normalized_residual(cplx computed, cplx expected, cplx f, cplx g, double scale);

ChartFunction coordinate_x(int i);
ChartFunction coordinate_sigma(int i);
/// nu_i = sigma_i prod_{k != i} (1 - t x_i/x_k)/(1 - x_i/x_k), t taken from the point.
ChartFunction coordinate_nu(int i);
ChartFunction product(const ChartFunction& f, const ChartFunction& g);
/// The bracket {f, g} as a chart function (for nested brackets).
ChartFunction bracket_function(const ChartFunction& f, const ChartFunction& g, const DiffOptions& opts);

/// tr of the family member j on the point built from the chart: tadpole
/// point at q0 = t for m = 1, the cyclic lift for m >= 2.
ChartFunction family_function(Family family, int j, const QuiverParams& p);

/// Pairwise brackets within `family`, normalized as in normalized_residual.
CheckResult verify_involution(const std::vector<ChartFunction>& family, const std::vector<DarbouxPoint>& pts,
                              double tol = 1e-6, const DiffOptions& opts = {}, unsigned threads = 1);

/// {x_i, sigma_j} = delta_ij x_i sigma_j (tol_xs), {x_i, nu_j} = delta_ij x_i nu_j
/// and the closed form of {nu_i, nu_j} at q0 = t (tol_nu).
std::vector<CheckResult> verify_chart_brackets(const std::vector<DarbouxPoint>& pts, double tol_xs = 1e-8,
                                               double tol_nu = 1e-6, unsigned threads = 1);

/// Closed form of {nu_i, nu_j} for i != j.
cplx nu_nu_bracket(const DarbouxPoint& pt, int i, int j);

struct XiPoissonTolerances {
  double bracket = 1e-6;
  double pullback = 1e-12;
  double sum_identity = 1e-9;
};

/// For f_a = tr X^{am}, g_b = tr(Z X^{1+bm}) of the cyclic lift:
/// pullbacks f_a = m tr A^a, g_b = tau tr(B A^b) (tau = sum t_s);
/// {f_a, f_b} = 0, {f_a, g_b} = a m g_{a+b}, {g_b, g_c} = -sum h;
/// and the trace identity
///   sum_{r=bm}^{cm-1} h_{r,(b+c)m-r} = tau^2 sum_{p=b}^{c-1} tr(B A^p B A^{b+c-p}),
/// h_{r,s} = tr(Z X^{1+r} Z X^{1+s}). Needs m >= 2.
std::vector<CheckResult> verify_xi_poisson(const QuiverParams& p, const std::vector<DarbouxPoint>& pts,
                                           const XiPoissonTolerances& tol = {}, unsigned threads = 1);

/// Dual chart (z, theta) as functions of (x, sigma) through dual_chart_extract,
/// with eigenvalues matched to the ordering at `pt`. Checks {z_i, z_j} = 0,
/// {z_i, theta_j} = -delta_ij z_i theta_j, {theta_i, theta_j} = 0.
/// Throws DegenerateSpectrum when the relative Z gap at pt is below 1e-4.
std::vector<CheckResult> verify_duality(const DarbouxPoint& pt, cplx q0, double tol);

}  // namespace rsq
