/**
 * @file flows.hpp
 * @brief Closed-form Hamiltonian flows of the H and G families.
 *
 * For the exponent polynomial P(z) = sum_k t_k z^k (every k a multiple of m):
 *   H flow: X(t) = exp(-P(Y)) X(0) + phi(Y), phi(z) = z^{-1}(exp(-P(z)) - 1),
 *           with Y constant;
 *   G flow: X(t) = exp(-P(Z)) X(0), with Z constant.
 * Both act on the block operators, so cyclic data keeps its block pattern.
 * Cyclic framings are constant. Tadpole framings move as V -> E V,
 * W -> W E^{-1} with E the exponential factor above, since the tadpole
 * relation carries (1+YX)^{-1} to the right of 1+XY.
 */
#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rsq/hamiltonians.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

using AnyPoint = std::variant<TadpoleData, CyclicData>;

int point_m(const AnyPoint& d);
int point_n(const AnyPoint& d);
cplx ham_trace(const AnyPoint& d, Family family, int j);
Residuals verify_moment(const AnyPoint& d, const QuiverParams& p, const Tolerance& tol = {});
CMatrix big_X(const AnyPoint& d);
CMatrix big_Y(const AnyPoint& d);

/// coefficients: power k -> time t_k; `which` is Family::H or Family::G.
AnyPoint flow_multi(const AnyPoint& d, const ExponentPoly& coefficients, Family which);
AnyPoint flow_H(const AnyPoint& d, int k, cplx t);
AnyPoint flow_G(const AnyPoint& d, int k, cplx t);

TadpoleData flow_H(const TadpoleData& d, int k, cplx t);
CyclicData flow_H(const CyclicData& d, int k, cplx t);
TadpoleData flow_G(const TadpoleData& d, int k, cplx t);
CyclicData flow_G(const CyclicData& d, int k, cplx t);

/// max |(X(h) - X(0))/h + Y^{k-1} + Y^k X(0)| for the H flow with power k.
double ode_residual(const AnyPoint& d, int k, double h);

/// Particle positions: spectrum of X (tadpole) or of the holonomy X_0 X_1 ... X_{m-1}.
Values positions(const AnyPoint& d);

struct FlowSpec {
  Family family = Family::H;
  ExponentPoly coefficients;  ///< per unit time; the state at time s uses s * coefficients
};

struct Trajectory {
  std::vector<double> times;
  std::vector<AnyPoint> points;
  std::vector<Values> positions;  ///< tracked curves, positions[time][curve]
  std::vector<std::string> conserved_names;
  std::vector<Values> conserved;  ///< conserved[time][quantity]
  std::vector<double> moment_residuals;
  std::vector<std::string> warnings;
};

/// Each snapshot comes from the closed form at that time; eigenvalue curves
/// are matched between consecutive times by minimal total displacement.
/// Curves closer than 1e-10 are reported in `warnings` (TrackingAmbiguity).
Trajectory trajectory(const AnyPoint& d, const QuiverParams& p, const FlowSpec& spec,
                      const std::vector<double>& times, const std::vector<std::pair<Family, int>>& conserved,
                      unsigned threads = 1);

/// Permutation perm minimizing sum_i |next[perm[i]] - prev[i]|; ties go to the
/// lexicographically smallest permutation.
std::vector<int> match_by_displacement(const Values& prev, const Values& next);

/// Columns: time, re/im of each position, re/im of each conserved value.
std::string trajectory_csv(const Trajectory& tr);

}  // namespace rsq
