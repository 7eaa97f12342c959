#include "rsq/hamiltonians.hpp"

#include <vector>

namespace rsq {

const char* family_name(Family f) {
  switch (f) {
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::H: return "H";
  }
  return "?";
}

namespace {

void require_positive(Family family, int j) {
  if (family != Family::F && j < 1) throw Error(ErrorCode::InvalidArgument, "E, G, H need j >= 1");
}

cplx family_trace(const CMatrix& X, const CMatrix& Y, Family family, int j, int m) {
  const CMatrix id = identity(X.rows());
  switch (family) {
    case Family::E: return mat_pow(X, j * m).trace();
    case Family::F: return mat_pow(id + X * Y, j).trace();
    case Family::G: return mat_pow(Y + mat_inv(X), j * m).trace();
    case Family::H: return mat_pow(Y, j * m).trace();
  }
  return 0.0;
}

}  // namespace

cplx ham_trace(const TadpoleData& d, Family family, int j) {
  require_positive(family, j);
  return family_trace(d.X, d.Y, family, j, 1);
}

cplx ham_trace(const CyclicData& d, Family family, int j) {
  require_positive(family, j);
  const CMatrix X = d.big_X();
  const CMatrix Y = d.big_Y();
  if (family == Family::G) {
    // the block Z avoids inverting the big X twice
    return mat_pow(d.big_Z(), j * d.m()).trace();
  }
  return family_trace(X, Y, family, j, d.m());
}

cplx xi_reduced_trace(const CMatrix& A, const CMatrix& B, const QuiverParams& p, Family family, int j) {
  require_positive(family, j);
  const int m = p.m;
  const auto ts = p.t_list();
  cplx prod_t = 1.0;
  for (cplx t : ts) prod_t *= t;
  const CMatrix Ai = mat_inv(A);
  const CMatrix id = identity(A.rows());
  switch (family) {
    case Family::E: return static_cast<double>(m) * mat_pow(A, j).trace();
    case Family::F: {
      cplx coeff = 0.0;
      for (cplx t : ts) coeff += std::pow(t, j);
      return coeff * mat_pow(B, j).trace();
    }
    case Family::G:
      return static_cast<double>(m) * std::pow(prod_t, j) * mat_pow(Ai * mat_pow(B, m), j).trace();
    case Family::H: {
      CMatrix P = Ai;
      for (cplx t : ts) P = P * (B - id / t);
      return static_cast<double>(m) * std::pow(prod_t, j) * mat_pow(P, j).trace();
    }
  }
  return 0.0;
}

cplx coord_G(const DarbouxPoint& pt, int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "coord_G needs m >= 0");
  check_regular_positions(pt.x, pt.t);
  const int n = pt.n;
  const cplx t = pt.t;
  if (m == 0) {
    cplx acc = 0.0;
    for (cplx xi : pt.x) acc += 1.0 / xi;
    return acc;
  }
  std::vector<cplx> ups(n);
  for (int j = 0; j < n; ++j) {
    cplx acc = 1.0;
    for (int a = 0; a < n; ++a)
      if (a != j) acc *= (1.0 - t * pt.x[j] / pt.x[a]) / (1.0 - pt.x[j] / pt.x[a]);
    ups[j] = acc;
  }
  std::vector<int> idx(m, 0);
  cplx total = 0.0;
  while (true) {
    cplx term = 1.0 / pt.x[idx[0]];
    for (int s = 0; s < m; ++s) {
      const int a = idx[s], b = idx[(s + 1) % m];
      term *= pt.sigma[a] * (t - 1.0) / (t - pt.x[a] / pt.x[b]) * ups[a];
    }
    total += term;
    int pos = 0;
    while (pos < m && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == m) break;
  }
  return total;
}

cplx coord_G21(const DarbouxPoint& pt) {
  check_regular_positions(pt.x, pt.t);
  const int n = pt.n;
  const cplx t = pt.t;
  const auto& x = pt.x;
  const auto& s = pt.sigma;
  auto ups = [&](int i, int a) { return (1.0 - t * x[i] / x[a]) / (1.0 - x[i] / x[a]); };
  cplx diag_part = 0.0, pair_part = 0.0;
  for (int i = 0; i < n; ++i) {
    cplx prod = 1.0;
    for (int a = 0; a < n; ++a)
      if (a != i) prod *= ups(i, a) * ups(i, a);
    diag_part += s[i] * s[i] / x[i] * prod;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cplx prod = 1.0;
      for (int a = 0; a < n; ++a)
        if (a != i && a != j) prod *= ups(i, a) * ups(j, a);
      pair_part += s[i] * s[j] * (t - 1.0) * (t - 1.0) * (1.0 / x[i] + 1.0 / x[j]) /
                   ((1.0 - x[i] / x[j]) * (1.0 - x[j] / x[i])) * prod;
    }
  return diag_part + pair_part;
}

Values elementary_symmetric(const Values& v) {
  Values e(v.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    for (std::size_t r = k + 1; r >= 1; --r) e[r] += e[r - 1] * v[k];
  return e;
}

cplx coord_H_expansion(const DarbouxPoint& pt, const Values& t_inverse) {
  const int m = static_cast<int>(t_inverse.size());
  const Values e = elementary_symmetric(t_inverse);
  cplx total = 0.0;
  for (int l = 0; l <= m; ++l) {
    const double sign = ((m - l) % 2 == 0) ? 1.0 : -1.0;
    total += sign * e[m - l] * coord_G(pt, l);
  }
  return total;
}

CoordH coord_H(const DarbouxPoint& pt, const QuiverParams& p) {
  const auto ts = p.t_list();
  Values inv(ts.size());
  cplx prod = 1.0;
  for (std::size_t s = 0; s < ts.size(); ++s) {
    inv[s] = 1.0 / ts[s];
    prod *= ts[s];
  }
  return {coord_H_expansion(pt, inv), static_cast<double>(p.m) * prod};
}

DualHams dual_coord_hams(const DualPoint& dp, const QuiverParams& p, int m, int f_power) {
  if (m < 0 || m > p.m) throw Error(ErrorCode::InvalidArgument, "dual Hamiltonians need 0 <= m <= p.m");
  const cplx t = dp.t;
  check_regular_positions(dp.pos, 1.0 / t);
  const auto& w = dp.pos;
  const auto& u = dp.mom;
  const int n = dp.n;
  const auto ts = p.t_list();
  DualHams out{0.0, 0.0, 0.0, static_cast<double>(p.m), 0.0};
  cplx prod_t = 1.0;
  for (int k = 0; k < m; ++k) prod_t *= ts[k];
  out.H_normalization = static_cast<double>(p.m) * prod_t;
  for (int i = 0; i < n; ++i) {
    cplx e_coeff = 1.0, h_coeff = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const cplx r = w[i] / w[j];
      e_coeff *= (1.0 - r / t) / (1.0 - r);
      h_coeff *= (1.0 - t * r) / (1.0 - r);
    }
    cplx shifted = 1.0;
    for (int k = 0; k < m; ++k) shifted *= w[i] - 1.0 / ts[k];
    out.E1 += e_coeff * u[i];
    out.F += std::pow(w[i], f_power);
    out.H1 += h_coeff * shifted / u[i];
  }
  return out;
}

}  // namespace rsq
