/**
 * @file sampling.hpp
 * @brief Seeded random draws of matrices, regular parameters and chart points.
 *
 * Every draw is a pure function of (seed, stream index), so parallel sweeps
 * produce identical samples regardless of scheduling.
 */
#pragma once

#include <cstdint>
#include <random>

#include "rsq/darboux.hpp"
#include "rsq/linalg.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

/// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  double uniform(double lo, double hi);
  /// Modulus uniform in [rmin, rmax], argument uniform in [0, 2 pi).
  cplx annulus(double rmin, double rmax);
  cplx gaussian();
  CMatrix matrix(Eigen::Index rows, Eigen::Index cols);
  /// Identity plus a scaled Gaussian perturbation; comfortably invertible.
  CMatrix near_identity(Eigen::Index n, double scale = 0.4);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Draws q_0..q_{m-1} on an annulus around |q| = 1 until the regularity check passes.
QuiverParams random_regular_params(Rng& rng, int m, int n);

/// Largest 2-norm condition number of the Lax matrix accepted by the point
/// samplers. Moment residuals of the stored data grow like cond^2 * eps.
constexpr double kMaxLaxCondition = 1e3;

/// Draws h_reg positions with pairwise separation at least `separation`
/// (relative), also away from t-multiples, and momenta on an annulus;
/// redraws until cond(cauchy_B) <= max_condition.
DarbouxPoint random_darboux_point(Rng& rng, int n, cplx t, double separation = 0.2,
                                  double max_condition = kMaxLaxCondition);

/// Same pattern for the dual chart (regularity with respect to 1/t).
DualPoint random_dual_point(Rng& rng, int n, cplx t, double separation = 0.2,
                            double max_condition = kMaxLaxCondition);

}  // namespace rsq
