#pragma once

#include "rsq/darboux.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

/// The four commuting families: E = tr X^{jm}, F = tr (1+XY)^j,
/// G = tr (Y+X^{-1})^{jm}, H = tr Y^{jm} (m = 1 for the tadpole).
enum class Family { E, F, G, H };

const char* family_name(Family f);

cplx ham_trace(const TadpoleData& d, Family family, int j);
cplx ham_trace(const CyclicData& d, Family family, int j);

/// Closed forms of ham_trace on xi_lift(A, B, p):
///   E = m tr A^j, F = sum_s t_s^j tr B^j,
///   G = m (t_0...t_{m-1})^j tr (A^{-1} B^m)^j,
///   H = m (t_0...t_{m-1})^j tr (A^{-1} prod_s (B - t_s^{-1}))^j.
cplx xi_reduced_trace(const CMatrix& A, const CMatrix& B, const QuiverParams& p, Family family, int j);

/// G_{m,1} as the explicit sum over index tuples (j_0, ..., j_{m-1}), cyclic
/// in s; m = 0 gives sum_i 1/x_i. Equals tr(A^{-1} B^m) in the chart.
cplx coord_G(const DarbouxPoint& pt, int m);

/// The m = 2 sum split into diagonal and off-diagonal pairs.
cplx coord_G21(const DarbouxPoint& pt);

/// value = sum_l (-1)^{m-l} e_{m-l}(t_0^{-1}, ..., t_{m-1}^{-1}) coord_G(pt, l);
/// ham_trace(build_cyclic_point(pt, p), H, 1) = normalization * value.
struct CoordH {
  cplx value;
  cplx normalization;
};
CoordH coord_H(const DarbouxPoint& pt, const QuiverParams& p);
/// Same expansion with arbitrary inverse parameters (used for limits).
cplx coord_H_expansion(const DarbouxPoint& pt, const Values& t_inverse);

/// Elementary symmetric polynomials e_0..e_k of the given values.
Values elementary_symmetric(const Values& v);

/// Hamiltonians in the chart where B = diag(w) and A = cauchy_matrix(w, u, 1/t).
/// The H product runs over t_0..t_{m-1}. For m = p.m,
/// ham_trace(E,1) = E_normalization * E1 and ham_trace(H,1) = H_normalization * H1
/// on xi_lift(A, B, p).
struct DualHams {
  cplx E1, F, H1;
  cplx E_normalization, H_normalization;
};
DualHams dual_coord_hams(const DualPoint& dp, const QuiverParams& p, int m, int f_power = 1);

}  // namespace rsq
