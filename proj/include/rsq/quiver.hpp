/**
 * @file quiver.hpp
 * @brief Points of the representation space of the framed tadpole (m = 1) and
 *        framed cyclic (m >= 2) quivers, moment relations, the lift from the
 *        tadpole pair (A, B) to cyclic data, and gauge-invariant fingerprints.
 *
 * Composition convention: a path ab means a followed by b. The arrow
 * x_s : s -> s+1 is therefore represented by an n x n matrix X_s acting from
 * V_{s+1} to V_s, and in the mn x mn block operator X it sits in block
 * (s, s+1). Y_s and Z_s = Y_s + X_s^{-1} sit in block (s+1, s). The framing
 * V (n x 1) and W (1 x n) attach to block 0.
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsq/linalg.hpp"

namespace rsq {

struct QuiverParams {
  int m = 1;
  int n = 1;
  std::vector<cplx> q;

  QuiverParams() = default;
  QuiverParams(int m, int n, std::vector<cplx> q);

  /// t_s = q_0 q_1 ... q_s.
  cplx t_s(int s) const;
  std::vector<cplx> t_list() const;
  cplx t() const { return t_s(m - 1); }
  cplx q_inf() const;

  /// Bounded-height certificate: no product of consecutive q_k (k in [i, j))
  /// equals t^p for |p| <= p_max, and t is not a root of unity of order
  /// <= p_max. p_max < 0 selects 2n.
  bool is_regular(int p_max = -1, double tol = 1e-10) const;
};

struct TadpoleData {
  CMatrix X, Y, V, W;

  TadpoleData() = default;
  /// Checks shapes, finiteness and invertibility of 1+XY, 1+YX, 1+VW, 1+WV.
  TadpoleData(CMatrix X, CMatrix Y, CMatrix V, CMatrix W);

  int n() const { return static_cast<int>(X.rows()); }
  /// Z = Y + X^{-1}.
  CMatrix Z() const;
};

struct CyclicData {
  std::vector<CMatrix> X, Y;
  CMatrix V, W;

  CyclicData() = default;
  CyclicData(std::vector<CMatrix> X, std::vector<CMatrix> Y, CMatrix V, CMatrix W);
  /// Builds the point from (X_s, Z_s); needs every X_s invertible.
  static CyclicData from_xz(const std::vector<CMatrix>& X, const std::vector<CMatrix>& Z, CMatrix V,
                            CMatrix W);

  int m() const { return static_cast<int>(X.size()); }
  int n() const { return static_cast<int>(V.rows()); }
  /// Z_s = Y_s + X_s^{-1}.
  CMatrix Z(int s) const;

  CMatrix big_X() const;
  CMatrix big_Y() const;
  CMatrix big_Z() const;
  /// V embedded in block 0 of C^{mn}.
  CMatrix big_V() const;
  CMatrix big_W() const;
};

/// Rebuilds cyclic data from block operators, keeping only the admissible blocks.
CyclicData cyclic_from_blocks(const CMatrix& bigX, const CMatrix& bigY, const CMatrix& V,
                              const CMatrix& W, int m);

struct Residual {
  std::string relation;
  double value = 0.0;
  double bound = 0.0;
};

struct Residuals {
  std::vector<Residual> items;

  double max() const;
  bool pass() const;
  /// Name of the relation with the largest value/bound ratio.
  std::string worst() const;
};

/// Entrywise max |lhs - q| of each relation, evaluated in long double.
Residuals verify_tadpole_moment(const TadpoleData& d, cplx q0, const Tolerance& tol = {});
Residuals verify_cyclic_moment(const CyclicData& d, const QuiverParams& p, const Tolerance& tol = {});

/// R ~ V W with V the dominant left singular vector, scaled so that its
/// largest-magnitude entry is real positive; W absorbs sigma_1.
std::pair<CMatrix, CMatrix> rank_one_factor(const CMatrix& R, const Tolerance& tol = {1e-12, 1e-8});

/// Lift of a tadpole-side pair (A, B) with A B A^{-1} B^{-1} (1 + V~W~) = t
/// to cyclic data: X_s = 1, Z_s = t_s B (s < m-1), X_{m-1} = A,
/// Z_{m-1} = t A^{-1} B, V = (AB)^{-1} V~, W = W~ AB.
CyclicData xi_lift(const CMatrix& A, const CMatrix& B, const QuiverParams& p,
                   const Tolerance& rank_tol = {1e-12, 1e-8});
/// Same lift with the framing supplied: V = (AB)^{-1} V~ given directly as
/// `V`, and W~ (so that A B A^{-1} B^{-1} (1 + V~W~) = t).
CyclicData xi_lift_framed(const CMatrix& A, const CMatrix& B, const QuiverParams& p, CMatrix V, const CMatrix& Wt);

/// Canonical order: traces of all words in {X, Z} of length 1..max_len,
/// shorter words first and X before Z within a length; then W word V for
/// words of length 0..max_len in the same order. Cyclic data uses the block
/// operators, so words whose length is not a multiple of m have zero trace.
std::vector<cplx> gauge_fingerprint(const TadpoleData& d, int max_len);
std::vector<cplx> gauge_fingerprint(const CyclicData& d, int max_len);

TadpoleData gauge_transform(const TadpoleData& d, const CMatrix& g);
/// X_s -> g_s X_s g_{s+1}^{-1}, Y_s -> g_{s+1} Y_s g_s^{-1}, V -> g_0 V, W -> W g_0^{-1}.
CyclicData gauge_transform(const CyclicData& d, const std::vector<CMatrix>& g);

/// 2 p(alpha~) for the framed quiver at dimension vector (1, n, ..., n).
int expected_dimension(const QuiverParams& p);

}  // namespace rsq
