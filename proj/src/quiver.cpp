#include "rsq/quiver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace rsq {

QuiverParams::QuiverParams(int m_, int n_, std::vector<cplx> q_) : m(m_), n(n_), q(std::move(q_)) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "quiver needs m >= 1 and n >= 1");
  if (static_cast<int>(q.size()) != m) throw Error(ErrorCode::InvalidArgument, "need exactly m parameters q");
  for (cplx qi : q)
    if (std::abs(qi) == 0.0 || !std::isfinite(qi.real()) || !std::isfinite(qi.imag()))
      throw Error(ErrorCode::InvalidArgument, "parameters q must be finite and nonzero");
}

cplx QuiverParams::t_s(int s) const {
  cplx acc = 1.0;
  for (int i = 0; i <= s; ++i) acc *= q.at(i);
  return acc;
}

std::vector<cplx> QuiverParams::t_list() const {
  std::vector<cplx> out(m);
  cplx acc = 1.0;
  for (int s = 0; s < m; ++s) out[s] = acc *= q[s];
  return out;
}

cplx QuiverParams::q_inf() const { return std::pow(t(), -n); }

bool QuiverParams::is_regular(int p_max, double tol) const {
  if (p_max < 0) p_max = 2 * n;
  const cplx tt = t();
  for (int i = 1; i <= m; ++i) {
    for (int j = i; j <= m; ++j) {
      cplx prod = 1.0;
      for (int k = i; k < j; ++k) prod *= q[k];
      for (int p = -p_max; p <= p_max; ++p) {
        if (i == j && p == 0) continue;
        const cplx tp = std::pow(tt, p);
        if (std::abs(prod - tp) <= tol * std::max({1.0, std::abs(prod), std::abs(tp)})) return false;
      }
    }
  }
  return true;
}

namespace {

void require_shape(const CMatrix& a, Eigen::Index r, Eigen::Index c, const char* what) {
  if (a.rows() != r || a.cols() != c) throw Error(ErrorCode::InvalidArgument, std::string("bad shape for ") + what);
  if (!all_finite(a)) throw Error(ErrorCode::InvalidArgument, std::string("non-finite entries in ") + what);
}

CMatrix checked_inv(const CMatrix& a, const std::string& what) {
  try {
    return mat_inv(a);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularFactor, what + " is not invertible");
  }
}

}  // namespace

TadpoleData::TadpoleData(CMatrix X_, CMatrix Y_, CMatrix V_, CMatrix W_)
    : X(std::move(X_)), Y(std::move(Y_)), V(std::move(V_)), W(std::move(W_)) {
  const Eigen::Index n = X.rows();
  require_shape(X, n, n, "X");
  require_shape(Y, n, n, "Y");
  require_shape(V, n, 1, "V");
  require_shape(W, 1, n, "W");
  const CMatrix id = identity(n);
  checked_inv(id + X * Y, "1+XY");
  checked_inv(id + Y * X, "1+YX");
  checked_inv(id + V * W, "1+VW");
  checked_inv(CMatrix::Identity(1, 1) + W * V, "1+WV");
}

CMatrix TadpoleData::Z() const { return Y + mat_inv(X); }

CyclicData::CyclicData(std::vector<CMatrix> X_, std::vector<CMatrix> Y_, CMatrix V_, CMatrix W_)
    : X(std::move(X_)), Y(std::move(Y_)), V(std::move(V_)), W(std::move(W_)) {
  if (X.size() < 2 || X.size() != Y.size()) throw Error(ErrorCode::InvalidArgument, "cyclic data needs m >= 2 blocks");
  const Eigen::Index n = V.rows();
  for (std::size_t s = 0; s < X.size(); ++s) {
    require_shape(X[s], n, n, "X_s");
    require_shape(Y[s], n, n, "Y_s");
  }
  require_shape(V, n, 1, "V");
  require_shape(W, 1, n, "W");
}

CyclicData CyclicData::from_xz(const std::vector<CMatrix>& X, const std::vector<CMatrix>& Z, CMatrix V, CMatrix W) {
  if (X.size() != Z.size()) throw Error(ErrorCode::InvalidArgument, "X and Z block counts differ");
  std::vector<CMatrix> Y(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) Y[s] = Z[s] - mat_inv(X[s]);
  return CyclicData(X, std::move(Y), std::move(V), std::move(W));
}

CMatrix CyclicData::Z(int s) const { return Y.at(s) + mat_inv(X.at(s)); }

CMatrix CyclicData::big_X() const {
  const int mm = m(), nn = n();
  CMatrix big = CMatrix::Zero(mm * nn, mm * nn);
  for (int s = 0; s < mm; ++s) big.block(s * nn, ((s + 1) % mm) * nn, nn, nn) = X[s];
  return big;
}

CMatrix CyclicData::big_Y() const {
  const int mm = m(), nn = n();
  CMatrix big = CMatrix::Zero(mm * nn, mm * nn);
  for (int s = 0; s < mm; ++s) big.block(((s + 1) % mm) * nn, s * nn, nn, nn) = Y[s];
  return big;
}

CMatrix CyclicData::big_Z() const {
  const int mm = m(), nn = n();
  CMatrix big = CMatrix::Zero(mm * nn, mm * nn);
  for (int s = 0; s < mm; ++s) big.block(((s + 1) % mm) * nn, s * nn, nn, nn) = Z(s);
  return big;
}

CMatrix CyclicData::big_V() const {
  CMatrix big = CMatrix::Zero(m() * n(), 1);
  big.topRows(n()) = V;
  return big;
}

CMatrix CyclicData::big_W() const {
  CMatrix big = CMatrix::Zero(1, m() * n());
  big.leftCols(n()) = W;
  return big;
}

CyclicData cyclic_from_blocks(const CMatrix& bigX, const CMatrix& bigY, const CMatrix& V, const CMatrix& W, int m) {
  const int n = static_cast<int>(V.rows());
  std::vector<CMatrix> X(m), Y(m);
  for (int s = 0; s < m; ++s) {
    X[s] = bigX.block(s * n, ((s + 1) % m) * n, n, n);
    Y[s] = bigY.block(((s + 1) % m) * n, s * n, n, n);
  }
  return CyclicData(std::move(X), std::move(Y), V, W);
}

double Residuals::max() const {
  double best = 0.0;
  for (const auto& r : items) best = std::max(best, r.value);
  return best;
}

bool Residuals::pass() const {
  return std::all_of(items.begin(), items.end(), [](const Residual& r) { return r.value <= r.bound; });
}

std::string Residuals::worst() const {
  std::string name;
  double ratio = -1.0;
  for (const auto& r : items) {
    const double q = r.bound > 0 ? r.value / r.bound : r.value;
    if (q > ratio) {
      ratio = q;
      name = r.relation;
    }
  }
  return name;
}

namespace {

// The relations are evaluated in extended precision so that the residual
// reflects the stored data rather than the rounding of the check itself.
using LCplx = std::complex<long double>;
using LMatrix = Eigen::Matrix<LCplx, Eigen::Dynamic, Eigen::Dynamic>;

LMatrix widen(const CMatrix& a) { return a.cast<LCplx>(); }

LMatrix wide_inv(const LMatrix& a, const std::string& what) {
  checked_inv(a.cast<cplx>(), what);
  return a.partialPivLu().inverse();
}

Residual matrix_residual(std::string name, const LMatrix& lhs, cplx target, const Tolerance& tol) {
  LMatrix diff = lhs;
  diff.diagonal().array() -= LCplx(target);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < diff.size(); ++k) worst = std::max(worst, static_cast<double>(std::abs(diff(k))));
  const double scale = std::max(1.0, std::abs(target));
  return {std::move(name), worst, tol.abs + tol.rel * scale};
}

}  // namespace

Residuals verify_tadpole_moment(const TadpoleData& d, cplx q0, const Tolerance& tol) {
  const Eigen::Index n = d.X.rows();
  const LMatrix lid = LMatrix::Identity(n, n);
  const LMatrix X = widen(d.X), Y = widen(d.Y);
  Residuals out;
  const LMatrix lhs = (lid + X * Y) * wide_inv(lid + Y * X, "1+YX") * (lid + widen(d.V) * widen(d.W));
  out.items.push_back(matrix_residual("(1+XY)(1+YX)^-1(1+VW) = q0", lhs, q0, tol));
  const LMatrix wv = wide_inv(LMatrix::Identity(1, 1) + widen(d.W) * widen(d.V), "1+WV");
  out.items.push_back(matrix_residual("(1+WV)^-1 = q0^-n", wv, std::pow(q0, -static_cast<int>(n)), tol));
  return out;
}

Residuals verify_cyclic_moment(const CyclicData& d, const QuiverParams& p, const Tolerance& tol) {
  const int m = d.m();
  if (m < 2 || m != p.m || d.n() != p.n) throw Error(ErrorCode::InvalidArgument, "cyclic data does not match the parameters");
  const LMatrix lid = LMatrix::Identity(d.n(), d.n());
  Residuals out;
  for (int i = 0; i < m; ++i) {
    const int prev = (i + m - 1) % m;
    // Z_{i-1} X_{i-1} = 1 + Y_{i-1} X_{i-1} and X_i Z_i = 1 + X_i Y_i
    const LMatrix outgoing = lid + widen(d.X[i]) * widen(d.Y[i]);
    LMatrix lhs = wide_inv(lid + widen(d.Y[prev]) * widen(d.X[prev]), "Z_{i-1}X_{i-1}") * outgoing;
    std::string name = "vertex " + std::to_string(i) + ": (Z[i-1]X[i-1])^-1 X[i]Z[i]";
    if (i == 0) {
      lhs = lhs * (lid + widen(d.V) * widen(d.W));
      name += "(1+VW)";
    }
    out.items.push_back(matrix_residual(name + " = q_" + std::to_string(i), lhs, p.q[i], tol));
  }
  const LMatrix wv = wide_inv(LMatrix::Identity(1, 1) + widen(d.W) * widen(d.V), "1+WV");
  out.items.push_back(matrix_residual("framing: (1+WV)^-1 = t^-n", wv, std::pow(p.t(), -p.n), tol));
  return out;
}

std::pair<CMatrix, CMatrix> rank_one_factor(const CMatrix& R, const Tolerance& tol) {
  if (numerical_rank(R, tol) != 1) throw Error(ErrorCode::NotRankOne, "matrix is not of rank one");
  Eigen::JacobiSVD<CMatrix> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CVector u = svd.matrixU().col(0);
  const CVector v = svd.matrixV().col(0);
  Eigen::Index pivot = 0;
  u.cwiseAbs().maxCoeff(&pivot);
  const cplx phase = u(pivot) / std::abs(u(pivot));
  u /= phase;
  const double s1 = svd.singularValues()(0);
  CMatrix V = u;
  CMatrix W = (s1 * phase) * v.adjoint();
  V(pivot) = cplx(V(pivot).real(), 0.0);
  return {V, W};
}

CyclicData xi_lift(const CMatrix& A, const CMatrix& B, const QuiverParams& p, const Tolerance& rank_tol) {
  const int m = p.m, n = p.n;
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "xi_lift needs m >= 2");
  if (A.rows() != n || B.rows() != n) throw Error(ErrorCode::InvalidArgument, "A, B must be n x n");
  const CMatrix Ai = mat_inv(A), Bi = mat_inv(B);
  const cplx t = p.t();
  const CMatrix R = t * mat_inv(A * B * Ai * Bi) - identity(n);
  const auto [Vt, Wt] = rank_one_factor(R, rank_tol);
  return xi_lift_framed(A, B, p, Bi * Ai * Vt, Wt);
}

CyclicData xi_lift_framed(const CMatrix& A, const CMatrix& B, const QuiverParams& p, CMatrix V, const CMatrix& Wt) {
  const int m = p.m, n = p.n;
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "xi_lift needs m >= 2");
  if (A.rows() != n || B.rows() != n || V.rows() != n || Wt.cols() != n)
    throw Error(ErrorCode::InvalidArgument, "xi_lift: shapes do not match n");
  const auto ts = p.t_list();
  std::vector<CMatrix> X(m), Z(m);
  for (int s = 0; s < m - 1; ++s) {
    X[s] = identity(n);
    Z[s] = ts[s] * B;
  }
  X[m - 1] = A;
  Z[m - 1] = p.t() * A.partialPivLu().solve(B);
  CMatrix W = Wt * A * B;
  return CyclicData::from_xz(X, Z, std::move(V), std::move(W));
}

namespace {

std::vector<cplx> fingerprint_from(const CMatrix& X, const CMatrix& Z, const CMatrix& V, const CMatrix& W,
                                   int max_len) {
  if (max_len < 1) throw Error(ErrorCode::InvalidArgument, "fingerprint needs max_len >= 1");
  std::vector<cplx> traces, framed;
  std::vector<CMatrix> level{identity(X.rows())};
  framed.push_back((W * V)(0, 0));
  for (int len = 1; len <= max_len; ++len) {
    std::vector<CMatrix> next;
    next.reserve(level.size() * 2);
    for (const auto& w : level) {
      next.push_back(w * X);
      next.push_back(w * Z);
    }
    for (const auto& w : next) {
      traces.push_back(w.trace());
      framed.push_back((W * w * V)(0, 0));
    }
    level = std::move(next);
  }
  traces.insert(traces.end(), framed.begin(), framed.end());
  return traces;
}

}  // namespace

std::vector<cplx> gauge_fingerprint(const TadpoleData& d, int max_len) {
  return fingerprint_from(d.X, d.Z(), d.V, d.W, max_len);
}

std::vector<cplx> gauge_fingerprint(const CyclicData& d, int max_len) {
  return fingerprint_from(d.big_X(), d.big_Z(), d.big_V(), d.big_W(), max_len);
}

TadpoleData gauge_transform(const TadpoleData& d, const CMatrix& g) {
  const CMatrix gi = mat_inv(g);
  return TadpoleData(g * d.X * gi, g * d.Y * gi, g * d.V, d.W * gi);
}

CyclicData gauge_transform(const CyclicData& d, const std::vector<CMatrix>& g) {
  const int m = d.m();
  if (static_cast<int>(g.size()) != m) throw Error(ErrorCode::InvalidArgument, "need one gauge block per vertex");
  std::vector<CMatrix> gi(m), X(m), Y(m);
  for (int s = 0; s < m; ++s) gi[s] = mat_inv(g[s]);
  for (int s = 0; s < m; ++s) {
    const int nx = (s + 1) % m;
    X[s] = g[s] * d.X[s] * gi[nx];
    Y[s] = g[nx] * d.Y[s] * gi[s];
  }
  return CyclicData(std::move(X), std::move(Y), g[0] * d.V, d.W * gi[0]);
}

int expected_dimension(const QuiverParams& p) {
  // vertices 0..m-1 carry n, the framing vertex carries 1
  const long n = p.n;
  long arrows = static_cast<long>(p.m) * n * n;  // x_s : s -> s+1
  arrows += n;                                   // v : 0 -> framing
  const long dot = 1 + static_cast<long>(p.m) * n * n;
  return static_cast<int>(2 * (1 + arrows - dot));
}

}  // namespace rsq
