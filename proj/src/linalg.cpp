#include "rsq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

namespace rsq {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::RegularityViolation: return "RegularityViolation";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::BadMultiple: return "BadMultiple";
    case ErrorCode::NonHolomorphic: return "NonHolomorphic";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::TrackingAmbiguity: return "TrackingAmbiguity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

bool Tolerance::close(cplx a, cplx b) const {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

bool Tolerance::close(double a, double b) const {
  return std::abs(a - b) <= abs + rel * std::max(std::abs(a), std::abs(b));
}

double max_norm(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool approx_eq(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!tol.close(a.data()[i], b.data()[i])) return false;
  return true;
}

double rel_diff(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max({1.0, max_norm(a), max_norm(b)});
  return max_norm(a - b) / scale;
}

double rel_diff(cplx a, cplx b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix diag(const CVector& v) { return v.asDiagonal(); }

CMatrix mat_inv(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "mat_inv needs a square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  const double scale = max_norm(m);
  if (scale == 0.0) throw Error(ErrorCode::SingularMatrix, "zero matrix");
  Eigen::PartialPivLU<CMatrix> lu(m);
  const CMatrix& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(packed(i, i)) < 1e-14 * scale)
      throw Error(ErrorCode::SingularMatrix, "pivot below 1e-14 * max norm");
  if (lu.rcond() < 100.0 * std::numeric_limits<double>::epsilon())
    throw Error(ErrorCode::SingularMatrix, "condition estimate too large");
  CMatrix inv = lu.inverse();
  // one step of iterative refinement
  inv += inv * (identity(n) - m * inv);
  return inv;
}

CMatrix mat_pow(const CMatrix& m, int j) {
  CMatrix base = j < 0 ? mat_inv(m) : m;
  unsigned e = static_cast<unsigned>(j < 0 ? -j : j);
  CMatrix result = identity(m.rows());
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

cplx det(const CMatrix& m) { return m.rows() == 0 ? cplx(1.0) : m.partialPivLu().determinant(); }

std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

int numerical_rank(const CMatrix& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  const auto s = singular_values(m);
  const double cut = std::max(tol.abs, tol.rel * s.front());
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double v) { return v > cut; }));
}

double condition_number(const CMatrix& m) {
  const auto s = singular_values(m);
  if (s.empty()) return 1.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

CMatrix mat_exp(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "mat_exp needs a square matrix");
  if (m.rows() == 0) return m;
  CMatrix e = m.exp();
  if (!all_finite(e)) throw Error(ErrorCode::Overflow, "matrix exponential overflowed");
  return e;
}

CMatrix poly_eval(const CMatrix& m, const ExponentPoly& p) {
  CMatrix acc = CMatrix::Zero(m.rows(), m.cols());
  for (const auto& [k, c] : p) acc += c * mat_pow(m, k);
  return acc;
}

namespace {

void check_poly(const ExponentPoly& p) {
  for (const auto& entry : p)
    if (entry.first < 1) throw Error(ErrorCode::InvalidArgument, "exponent powers must be >= 1");
}

// (e^w - 1)/w
cplx psi1(cplx w) {
  if (std::abs(w) < 0.5) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 1; n < 60; ++n) {
      term *= w / static_cast<double>(n + 1);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

cplx scalar_phi(cplx z, const ExponentPoly& p) {
  cplx q = 0.0, pz = 0.0;
  for (const auto& [k, c] : p) {
    const cplx zk1 = std::pow(z, k - 1);
    q += c * zk1;
    pz += c * zk1 * z;
  }
  return -q * psi1(-pz);
}

CMatrix reduced_poly(const CMatrix& m, const ExponentPoly& p) {
  CMatrix acc = CMatrix::Zero(m.rows(), m.cols());
  for (const auto& [k, c] : p) acc += c * mat_pow(m, k - 1);
  return acc;
}

}  // namespace

CMatrix mat_phi_series(const CMatrix& m, const ExponentPoly& p) {
  check_poly(p);
  const Eigen::Index n = m.rows();
  const CMatrix q = reduced_poly(m, p);
  const CMatrix w = -(m * q);
  const double norm = w.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix ws = w / std::ldexp(1.0, s);
  CMatrix e = identity(n), psi = identity(n), term = identity(n);
  bool converged = false;
  for (int k = 1; k <= 1000; ++k) {
    term = term * ws / static_cast<double>(k);
    e += term;
    psi += term / static_cast<double>(k + 1);
    if (max_norm(term) < 1e-18 * std::max(1.0, max_norm(e))) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorCode::NonConvergence, "phi series did not converge in 1000 terms");
  for (int i = 0; i < s; ++i) {
    psi = psi * (e + identity(n)) * 0.5;
    e = e * e;
  }
  CMatrix out = -(q * psi);
  if (!all_finite(out)) throw Error(ErrorCode::Overflow, "phi overflowed");
  return out;
}

CMatrix mat_phi(const CMatrix& m, const ExponentPoly& p) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "mat_phi needs a square matrix");
  check_poly(p);
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  if (p.empty()) return CMatrix::Zero(n, n);
  Eigensystem es = eigensystem(m);
  if (es.vector_condition > 1e8 || !std::isfinite(es.vector_condition)) return mat_phi_series(m, p);
  CVector f(n);
  for (Eigen::Index i = 0; i < n; ++i) f(i) = scalar_phi(es.values(i), p);
  CMatrix out = es.vectors * f.asDiagonal() * mat_inv(es.vectors);
  if (!all_finite(out)) throw Error(ErrorCode::Overflow, "phi overflowed");
  return out;
}

CMatrix mat_phi(const CMatrix& m, int k, cplx t) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "mat_phi needs k >= 1");
  return mat_phi(m, ExponentPoly{{k, t}});
}

Eigensystem eigensystem(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "eigensolver failed");
  Eigensystem es;
  es.values = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  es.vector_condition = condition_number(es.vectors);
  return es;
}

bool complex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace rsq
