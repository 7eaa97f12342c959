/**
 * @file quantum.hpp
 * @brief q-difference operators in n variables with rational coefficients:
 *        the gauge-transformed twisted operator D~_{2,1}, its deformation
 *        H~_{2,1}, the first Macdonald-Ruijsenaars operator, classical
 *        symbols and the quasi-invariance test.
 *
 * T_i acts multiplicatively, (T_i f)(x) = f(x_1, ..., q x_i, ..., x_n).
 * Coefficients are kept as products of explicit factors so that poles are
 * visible and the q -> 1 limit is a plain substitution.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rsq/check.hpp"
#include "rsq/darboux.hpp"

namespace rsq {

/// c q^a t^b; a may be half-integral (principal branch of q^{1/2}).
struct ParamMonomial {
  cplx c = 1.0;
  double q_pow = 0.0;
  int t_pow = 0;

  cplx eval(cplx q, cplx t) const;
};

struct CoeffFactor {
  enum class Kind : std::uint8_t {
    Binomial,  ///< 1 - c x_i / x_j
    Param,     ///< c1 - c2, parameters only
    InvSum,    ///< x_i^{-1} + x_j^{-1}
    HalfSum,   ///< x_i^{1/2} x_j^{-1/2} + x_i^{-1/2} x_j^{1/2}, principal roots
    Power,     ///< x_i
  };
  Kind kind = Kind::Power;
  int i = 0, j = 0;
  ParamMonomial c1, c2;
  int exponent = 1;  ///< negative exponents are denominators

  static CoeffFactor binomial(ParamMonomial c, int i, int j, int exponent = 1);
  static CoeffFactor param(ParamMonomial c1, ParamMonomial c2, int exponent = 1);
  static CoeffFactor inv_sum(int i, int j, int exponent = 1);
  static CoeffFactor half_sum(int i, int j, int exponent = 1);
  static CoeffFactor power(int i, int exponent);

  /// Value of the base (before the exponent).
  cplx base(const Values& x, cplx q, cplx t) const;
};

/// prefactor * prod factors.
struct Coefficient {
  ParamMonomial prefactor;
  std::vector<CoeffFactor> factors;

  cplx eval(const Values& x, cplx q, cplx t) const;
  /// Smallest |base| over the denominator factors (infinity if none).
  double min_denominator(const Values& x, cplx q, cplx t) const;
  std::string to_string() const;
};

struct DiffTerm {
  std::vector<int> shift;  ///< mu: x_i -> q^{mu_i} x_i
  Coefficient coeff;
};

struct DiffOperator {
  std::string name;
  int n = 0;
  cplx q = 1.0, t = 1.0;
  std::vector<DiffTerm> terms;
};

struct TestFunction {
  std::string name;
  std::function<cplx(const Values&)> eval;
  bool symmetric = false;  ///< asserted by the caller
};

/// Denominator factors smaller than this raise PoleProximity.
constexpr double kPoleThreshold = 1e-10;

/// sum_mu c_mu(x) f(q^mu x). Throws PoleProximity near a coefficient pole.
cplx apply(const DiffOperator& d, const TestFunction& f, const Values& x);

/// sum_i a~_i T_i^2 + sum_{i<j} b~_ij T_i T_j. BadParameters when q is
/// (numerically) a root of unity of order <= 24, or q = 0, or t = 0.
DiffOperator op_Dtilde21(int n, cplx q, cplx t);
/// D~_{2,1} + alpha sum_i prod_{k != i} (1 - t x_i/x_k)/(1 - x_i/x_k) x_i^{-1} T_i
///          + beta sum_i x_i^{-1}.
DiffOperator op_Htilde21(int n, cplx q, cplx t, cplx alpha, cplx beta);
/// sum_i prod_{j != i} (1 - t x_i/x_j)/(1 - x_i/x_j) T_i.
DiffOperator op_macdonald(int n, cplx q, cplx t);
/// The untwisted operator sum_i a_i T_i^2 + sum_{i<j} b_ij T_i T_j with the
/// half-integral powers taken on the principal branch. On x = q^z with q > 0
/// and x > 0 it satisfies D~ = g D g^{-1}, g(z) = q^{<z,z>/4}.
DiffOperator op_D21(int n, cplx q, cplx t);

/// Coefficients at q = 1 with T_i -> sigma_i. Throws PoleProximity.
cplx classical_symbol(const DiffOperator& d, const DarbouxPoint& pt);

/// Checks f(x) = f(x with x_a, x_b swapped) at 3 random transpositions.
bool spot_check_symmetry(const TestFunction& f, int n, std::uint64_t seed);

/// A symmetric polynomial plus Delta_m(x) r(x), where
/// Delta_m = prod_{a<b} prod_{k=-m}^{m} (x_a - q^k x_b) and r is a fixed
/// non-symmetric polynomial. Lies in Q_m without being symmetric.
TestFunction quasi_invariant_function(int n, int m, cplx q);
/// e_k(x) (symmetric flag set).
TestFunction elementary_function(int n, int k);

struct QuasiInvarianceOptions {
  int samples = 20;
  double tolerance = 1e-8;
  double radius = 1e-3;  ///< relative radius of the averaging circle
  int circle_points = 8;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// With g = D f, measures |(T_a^j g - T_b^j g)(x)| / scale on x_a = x_b for
/// j = 1..m over all pairs a < b. The diagonal is reached as the mean over a
/// small circle x_b -> x_b (1 + r e^{i theta}), which equals the centre value
/// for functions holomorphic there. Returns the checks "input_in_Qm" (same
/// measurement on f) and "quasi_invariance". Symmetric-flagged inputs are
/// spot-checked; a false flag throws InvalidArgument.
std::vector<CheckResult> quasi_invariance_check(const DiffOperator& d, int m, const TestFunction& f,
                                                const QuasiInvarianceOptions& opts = {});

}  // namespace rsq
