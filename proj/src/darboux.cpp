#include "rsq/darboux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rsq {

namespace {

bool near(cplx a, cplx b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

void check_momenta(const Values& mom) {
  for (cplx s : mom)
    if (std::abs(s) <= 1e-300 || !std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw Error(ErrorCode::RegularityViolation, "momentum coordinates must be finite and nonzero");
}

}  // namespace

void check_regular_positions(const Values& x, cplx t, double tol) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x[i]) <= tol || !std::isfinite(x[i].real()) || !std::isfinite(x[i].imag()))
      throw Error(ErrorCode::RegularityViolation, "positions must be finite and nonzero");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (near(x[i], x[j], tol)) throw Error(ErrorCode::RegularityViolation, "coinciding positions");
      if (near(x[i], t * x[j], tol)) throw Error(ErrorCode::RegularityViolation, "positions related by the chart parameter");
    }
  }
}

DarbouxPoint::DarbouxPoint(Values x_, Values sigma_, cplx t_)
    : n(static_cast<int>(x_.size())), x(std::move(x_)), sigma(std::move(sigma_)), t(t_) {
  if (n < 1 || sigma.size() != x.size()) throw Error(ErrorCode::InvalidArgument, "x and sigma must have equal length >= 1");
  check_regular_positions(x, t);
  check_momenta(sigma);
}

DualPoint::DualPoint(Values pos_, Values mom_, cplx t_)
    : n(static_cast<int>(pos_.size())), pos(std::move(pos_)), mom(std::move(mom_)), t(t_) {
  if (n < 1 || mom.size() != pos.size()) throw Error(ErrorCode::InvalidArgument, "positions and momenta must have equal length >= 1");
  if (std::abs(t) == 0.0) throw Error(ErrorCode::RegularityViolation, "dual chart needs t != 0");
  check_regular_positions(pos, 1.0 / t);
  check_momenta(mom);
}

cplx upsilon_product(const Values& x, int j, cplx s) {
  cplx acc = 1.0;
  for (int k = 0; k < static_cast<int>(x.size()); ++k) {
    if (k == j) continue;
    const cplx r = x[j] / x[k];
    acc *= (1.0 - s * r) / (1.0 - r);
  }
  return acc;
}

CMatrix cauchy_matrix(const Values& x, const Values& sigma, cplx s) {
  const int n = static_cast<int>(x.size());
  CMatrix B(n, n);
  for (int j = 0; j < n; ++j) {
    const cplx col = sigma[j] * upsilon_product(x, j, s);
    for (int i = 0; i < n; ++i) B(i, j) = col * (s - 1.0) / (s - x[i] / x[j]);
  }
  return B;
}

CMatrix cauchy_B(const DarbouxPoint& pt) {
  check_regular_positions(pt.x, pt.t);
  return cauchy_matrix(pt.x, pt.sigma, pt.t);
}

CMatrix dual_cauchy(const DualPoint& dp) { return cauchy_matrix(dp.pos, dp.mom, 1.0 / dp.t); }

Values sigma_from_nu(const Values& x, const Values& nu, cplx t) {
  check_regular_positions(x, t);
  Values out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    cplx acc = nu[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const cplx r = x[i] / x[j];
      acc *= (1.0 - r) / (1.0 - t * r);
    }
    out[i] = acc;
  }
  return out;
}

Values nu_from_sigma(const Values& x, const Values& sigma, cplx t) {
  check_regular_positions(x, t);
  Values out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    cplx acc = sigma[i];
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (i == j) continue;
      const cplx r = x[i] / x[j];
      acc *= (1.0 - t * r) / (1.0 - r);
    }
    out[i] = acc;
  }
  return out;
}

namespace {

/// w_i = prod_{k != i} (x_i - s x_k)/(x_i - x_k). For C = cauchy_matrix(x, ., s)
/// and D = diag(x), D C D^{-1} C^{-1} = s - (s-1) s^{1-n} e w^T with e = (1, ..., 1),
/// which gives the rank-one framing of both charts in closed form.
CMatrix defect_row(const Values& x, cplx s) {
  const int n = static_cast<int>(x.size());
  CMatrix w(1, n);
  for (int i = 0; i < n; ++i) {
    cplx acc = 1.0;
    for (int k = 0; k < n; ++k)
      if (k != i) acc *= (x[i] - s * x[k]) / (x[i] - x[k]);
    w(0, i) = acc;
  }
  return w;
}

}  // namespace

TadpoleData build_tadpole_point(const DarbouxPoint& pt, cplx q0) {
  if (!near(pt.t, q0, 1e-14)) throw Error(ErrorCode::InvalidArgument, "tadpole chart needs t = q0");
  const int n = pt.n;
  CMatrix X = CMatrix::Zero(n, n), Xi = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    X(i, i) = pt.x[i];
    Xi(i, i) = 1.0 / pt.x[i];
  }
  return TadpoleData(X, cauchy_B(pt) - Xi, CMatrix::Ones(n, 1), (q0 - 1.0) * defect_row(pt.x, q0));
}

CyclicData build_cyclic_point(const DarbouxPoint& pt, const QuiverParams& p) {
  if (!near(pt.t, p.t(), 1e-14)) throw Error(ErrorCode::InvalidArgument, "cyclic chart needs t = q_0 ... q_{m-1}");
  if (pt.n != p.n) throw Error(ErrorCode::InvalidArgument, "chart size differs from n");
  if (p.m < 2) throw Error(ErrorCode::InvalidArgument, "cyclic chart needs m >= 2");
  const int n = pt.n;
  const cplx t = p.t();
  // (AB)^{-1} e = (1/(sigma_j x_j))_j for A = diag(x), B = cauchy_B(pt)
  CMatrix V(n, 1);
  for (int j = 0; j < n; ++j) V(j, 0) = 1.0 / (pt.sigma[j] * pt.x[j]);
  const CVector x = Eigen::Map<const CVector>(pt.x.data(), n);
  return xi_lift_framed(diag(x), cauchy_B(pt), p, std::move(V), (t - 1.0) * defect_row(pt.x, t));
}

TadpoleData build_dual_tadpole_point(const DualPoint& dp, cplx q0) {
  if (!near(dp.t, q0, 1e-14)) throw Error(ErrorCode::InvalidArgument, "dual tadpole chart needs t = q0");
  const int n = dp.n;
  const CVector z = Eigen::Map<const CVector>(dp.pos.data(), n);
  const CMatrix X = dual_cauchy(dp);
  const cplx s = 1.0 / q0;
  return TadpoleData(X, diag(z) - mat_inv(X), CMatrix::Ones(n, 1),
                     (q0 - 1.0) * std::pow(q0, n - 1) * defect_row(dp.pos, s));
}

DualExtraction dual_chart_extract_full(const TadpoleData& d, cplx q0) {
  const int n = d.n();
  const CMatrix Z = d.Z();
  const Eigensystem es = eigensystem(Z);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return complex_less(es.values(a), es.values(b)); });
  Values z(n);
  CMatrix S(n, n);
  for (int i = 0; i < n; ++i) {
    z[i] = es.values(order[i]);
    S.col(i) = es.vectors.col(order[i]);
  }

  DualExtraction out;
  out.gap = 1.0;
  if (n > 1) {
    double spread = 0.0, gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        spread = std::max(spread, std::abs(z[i] - z[j]));
        gap = std::min(gap, std::abs(z[i] - z[j]));
      }
    out.gap = spread > 0 ? gap / spread : 0.0;
    if (out.gap < 1e-8) throw Error(ErrorCode::DegenerateSpectrum, "eigenvalues of Z are not separated");
  }

  const CMatrix Xe = mat_inv(S) * d.X * S;
  const cplx s = 1.0 / q0;
  Values theta(n);
  for (int j = 0; j < n; ++j) theta[j] = Xe(j, j) / upsilon_product(z, j, s);

  // X in the eigenbasis agrees with the Cauchy form up to a diagonal rescaling
  const CMatrix C = cauchy_matrix(z, theta, s);
  CVector scale(n);
  for (int i = 0; i < n; ++i) scale(i) = Xe(i, 0) / C(i, 0);
  scale /= scale(0);
  const CMatrix fitted = scale.cwiseInverse().asDiagonal() * Xe * scale.asDiagonal();
  out.residual = max_norm(fitted - C) / std::max(1.0, max_norm(C));
  if (!(out.residual <= 1e-8)) throw Error(ErrorCode::ChartMismatch, "X does not have the dual Cauchy form");
  out.point = DualPoint(std::move(z), std::move(theta), q0);
  return out;
}

DualPoint dual_chart_extract(const TadpoleData& d, cplx q0) { return dual_chart_extract_full(d, q0).point; }

}  // namespace rsq
