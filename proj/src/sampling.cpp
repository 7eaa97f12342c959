#include "rsq/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rsq {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

cplx Rng::annulus(double rmin, double rmax) {
  const double r = uniform(rmin, rmax);
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, phi);
}

cplx Rng::gaussian() {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(engine_);
  const double im = g(engine_);
  return {re, im};
}

CMatrix Rng::matrix(Eigen::Index rows, Eigen::Index cols) {
  CMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = gaussian();
  return out;
}

CMatrix Rng::near_identity(Eigen::Index n, double scale) {
  return identity(n) + (scale / std::sqrt(static_cast<double>(n))) * matrix(n, n);
}

QuiverParams random_regular_params(Rng& rng, int m, int n) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<cplx> q(m);
    for (auto& qi : q) qi = rng.annulus(0.75, 1.3);
    QuiverParams p(m, n, std::move(q));
    // sampling keeps a visible margin from the irregular locus
    if (p.is_regular(2 * n, 0.05)) return p;
  }
  throw Error(ErrorCode::NonConvergence, "could not draw regular parameters");
}

namespace {

bool separated(cplx a, cplx b, double sep) { return std::abs(a - b) >= sep * std::max(std::abs(a), std::abs(b)); }

Values draw_positions(Rng& rng, int n, cplx s, double separation) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Values x;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const cplx c = rng.annulus(0.6, 1.6);
      for (cplx y : x)
        if (!separated(c, y, separation) || !separated(c, s * y, separation) || !separated(y, s * c, separation))
          ok = false;
      x.push_back(c);
    }
    if (ok) return x;
  }
  throw Error(ErrorCode::NonConvergence, "could not draw separated positions");
}

double condition(const CMatrix& a) {
  const auto sv = singular_values(a);
  return sv.back() > 0.0 ? sv.front() / sv.back() : std::numeric_limits<double>::infinity();
}

}  // namespace

DarbouxPoint random_darboux_point(Rng& rng, int n, cplx t, double separation, double max_condition) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Values x = draw_positions(rng, n, t, separation);
    Values sigma(n);
    for (auto& s : sigma) s = rng.annulus(0.5, 1.5);
    DarbouxPoint pt(std::move(x), std::move(sigma), t);
    if (condition(cauchy_B(pt)) <= max_condition) return pt;
  }
  throw Error(ErrorCode::NonConvergence, "could not draw a well-conditioned chart point");
}

DualPoint random_dual_point(Rng& rng, int n, cplx t, double separation, double max_condition) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Values z = draw_positions(rng, n, 1.0 / t, separation);
    Values theta(n);
    for (auto& s : theta) s = rng.annulus(0.5, 1.5);
    DualPoint dp(std::move(z), std::move(theta), t);
    if (condition(dual_cauchy(dp)) <= max_condition) return dp;
  }
  throw Error(ErrorCode::NonConvergence, "could not draw a well-conditioned dual point");
}

}  // namespace rsq
