/**
 * @file suites.hpp
 * @brief Seeded numerical verification suites over grids of (m, n): moment
 *        relations, Hamiltonian coordinate formulas, Poisson brackets,
 *        the xi map, duality, flows, and the difference-operator checks.
 *
 * Every sample is drawn from Rng(seed, stream) with a stream index fixed by
 * its position in the grid, so the results do not depend on --threads.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsq/check.hpp"
#include "rsq/linalg.hpp"

namespace rsq {

struct SuiteTolerances {
  double moment = 1e-10;
  double hamiltonian = 1e-10;
  double specialized = 1e-12;  ///< the split G_{2,1} formula against the index sum
  double involution = 1e-6;
  double chart_x_sigma = 1e-8;
  double chart_nu = 1e-6;
  double xi_bracket = 1e-6;
  double xi_sum = 1e-9;
  double duality_n2 = 1e-5;
  double duality_n3 = 1e-4;
  double conservation = 1e-8;
  double semigroup = 1e-9;
  double ode_ratio_lo = 1.8;
  double ode_ratio_hi = 2.2;
  double symbol = 1e-10;
  double quasi_invariance = 1e-8;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::vector<int> ms{1, 2, 3};
  std::vector<int> ns{2, 3};
  int samples = 4;
  int trajectory_points = 100;
  double flow_time = 1.0;  ///< scaled down per sample so the flow exponent stays O(1)
  SuiteTolerances tol;
};

/// "moment", "hamiltonians", "poisson", "xi", "duality", "flows".
std::vector<std::string> numeric_suite_names();
std::vector<CheckResult> run_numeric_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<CheckResult> moment_suite(const SuiteConfig& cfg);
std::vector<CheckResult> hamiltonian_suite(const SuiteConfig& cfg);
/// Involution of the E, F, G, H families (j = 1..3) and the chart brackets.
std::vector<CheckResult> poisson_suite(const SuiteConfig& cfg);
/// Uses the m >= 2 entries of cfg.ms and n <= 3.
std::vector<CheckResult> xi_suite(const SuiteConfig& cfg);
/// Tadpole only, n in {2, 3} from cfg.ns. Samples with a nearly degenerate
/// Z spectrum are redrawn (up to 10 times each).
std::vector<CheckResult> duality_suite(const SuiteConfig& cfg);
/// H and G flows of the lowest admissible power: conservation, moment
/// residuals, semigroup law and first-order convergence of the ODE residual.
/// Times are multiplied by min(1, 1/(|c| max(|Y^k|, |Z^k|))) in the spectral
/// norm, c the flow coefficient. The ODE step 1e-4 is scaled by
/// min(1, 1/|Y^k|).
std::vector<CheckResult> flow_suite(const SuiteConfig& cfg);

/// Classical symbol of the operator against the chart Hamiltonians at
/// `points` random (x, sigma, q, t) for each n in ns. op: dtilde21 (split
/// G_{2,1} formula), htilde21 (G_2 + alpha G_1 + beta G_0), macdonald (E_1 of
/// the dual chart with t -> 1/t).
CheckResult symbol_check(const std::string& op, const std::vector<int>& ns, int points, cplx alpha, cplx beta,
                         std::uint64_t seed, double tol);

}  // namespace rsq
