#include "rsq/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "rsq/flows.hpp"
#include "rsq/parallel.hpp"

namespace rsq {

namespace {

struct Partial {
  cplx value;
  double error;
};

Partial partial(const ChartFunction& f, const DarbouxPoint& pt, cplx f0, bool sigma_coord, int i,
                const DiffOptions& opts) {
  const cplx c0 = sigma_coord ? pt.sigma[i] : pt.x[i];
  const double h = opts.h * std::max(std::abs(c0), 1e-3);
  DarbouxPoint moved = pt;
  cplx& c = sigma_coord ? moved.sigma[i] : moved.x[i];
  double fmax = std::abs(f0);
  auto at = [&](cplx delta) {
    c = c0 + delta;
    const cplx v = f.eval(moved);
    fmax = std::max(fmax, std::abs(v));
    return v;
  };
  const cplx d1 = (at(h) - at(-h)) / (2.0 * h);
  const cplx d2 = (at(h / 2) - at(-h / 2)) / h;
  const cplx rich = (4.0 * d2 - d1) / 3.0;
  const double floor = 10.0 * opts.noise * fmax / h;
  const double gap = std::abs(d2 - d1);
  if (opts.check_holomorphic) {
    const cplx I(0.0, 1.0);
    const cplx di = (at(I * (h / 2)) - at(-I * (h / 2))) / (I * h);
    if (std::abs(di - d2) > 100.0 * (gap + floor))
      throw Error(ErrorCode::NonHolomorphic, f.name + " is not holomorphic in " + (sigma_coord ? "sigma_" : "x_") +
                                                 std::to_string(i + 1));
  }
  return {rich, gap / 15.0 + floor};
}

}  // namespace

ChartGradient chart_gradient(const ChartFunction& f, const DarbouxPoint& pt, const DiffOptions& opts) {
  ChartGradient g;
  g.value = f.eval(pt);
  const int n = pt.n;
  g.dx.resize(n);
  g.dsigma.resize(n);
  g.err_x.resize(n);
  g.err_sigma.resize(n);
  for (int i = 0; i < n; ++i) {
    const Partial px = partial(f, pt, g.value, false, i, opts);
    const Partial ps = partial(f, pt, g.value, true, i, opts);
    g.dx[i] = px.value;
    g.err_x[i] = px.error;
    g.dsigma[i] = ps.value;
    g.err_sigma[i] = ps.error;
  }
  return g;
}

BracketEstimate bracket_from_gradients(const ChartGradient& f, const ChartGradient& g, const DarbouxPoint& pt) {
  BracketEstimate out{0.0, 0.0, 0.0};
  for (int i = 0; i < pt.n; ++i) {
    const cplx w = pt.x[i] * pt.sigma[i];
    const cplx a = w * f.dx[i] * g.dsigma[i];
    const cplx b = w * f.dsigma[i] * g.dx[i];
    out.value += a - b;
    out.scale += std::abs(a) + std::abs(b);
    out.error += std::abs(w) * (f.err_x[i] * std::abs(g.dsigma[i]) + std::abs(f.dx[i]) * g.err_sigma[i] +
                                f.err_sigma[i] * std::abs(g.dx[i]) + std::abs(f.dsigma[i]) * g.err_x[i]);
  }
  return out;
}

BracketEstimate canonical_bracket(const ChartFunction& f, const ChartFunction& g, const DarbouxPoint& pt,
                                  const DiffOptions& opts) {
  return bracket_from_gradients(chart_gradient(f, pt, opts), chart_gradient(g, pt, opts), pt);
}

double normalized_residual(cplx computed, cplx expected, cplx f, cplx g, double scale) {
  const double norm = std::max({std::abs(f * g), scale, 1e-300});
  return std::abs(computed - expected) / norm;
}

ChartFunction coordinate_x(int i) {
  return {"x" + std::to_string(i + 1), [i](const DarbouxPoint& pt) { return pt.x.at(i); }};
}

ChartFunction coordinate_sigma(int i) {
  return {"sigma" + std::to_string(i + 1), [i](const DarbouxPoint& pt) { return pt.sigma.at(i); }};
}

ChartFunction coordinate_nu(int i) {
  return {"nu" + std::to_string(i + 1), [i](const DarbouxPoint& pt) {
            return pt.sigma.at(i) * upsilon_product(pt.x, i, pt.t);
          }};
}

ChartFunction product(const ChartFunction& f, const ChartFunction& g) {
  return {f.name + "*" + g.name, [f, g](const DarbouxPoint& pt) { return f.eval(pt) * g.eval(pt); }};
}

ChartFunction bracket_function(const ChartFunction& f, const ChartFunction& g, const DiffOptions& opts) {
  return {"{" + f.name + "," + g.name + "}",
          [f, g, opts](const DarbouxPoint& pt) { return canonical_bracket(f, g, pt, opts).value; }};
}

ChartFunction family_function(Family family, int j, const QuiverParams& p) {
  std::string name = std::string(family_name(family)) + std::to_string(j);
  if (p.m == 1) {
    const cplx q0 = p.q.at(0);
    return {name, [family, j, q0](const DarbouxPoint& pt) { return ham_trace(build_tadpole_point(pt, q0), family, j); }};
  }
  return {name, [family, j, p](const DarbouxPoint& pt) { return ham_trace(build_cyclic_point(pt, p), family, j); }};
}

namespace {

std::string pair_label(const std::string& a, const std::string& b) { return "{" + a + "," + b + "}"; }

}  // namespace

CheckResult verify_involution(const std::vector<ChartFunction>& family, const std::vector<DarbouxPoint>& pts,
                              double tol, const DiffOptions& opts, unsigned threads) {
  CheckResult res{"involution", "members of one family Poisson-commute", 0.0, tol};
  struct Worst {
    double value = 0.0;
    std::string where;
  };
  const auto per_point = parallel_map(pts.size(), threads, [&](std::size_t k) {
    std::vector<ChartGradient> grads;
    for (const auto& f : family) grads.push_back(chart_gradient(f, pts[k], opts));
    Worst w;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        const auto br = bracket_from_gradients(grads[a], grads[b], pts[k]);
        const double r = normalized_residual(br.value, 0.0, grads[a].value, grads[b].value, br.scale);
        if (r > w.value || w.where.empty()) w = {r, pair_label(family[a].name, family[b].name)};
      }
    return w;
  });
  for (std::size_t k = 0; k < per_point.size(); ++k) res.record(per_point[k].value, static_cast<int>(k), per_point[k].where);
  return res;
}

cplx nu_nu_bracket(const DarbouxPoint& pt, int i, int j) {
  const auto nu = nu_from_sigma(pt.x, pt.sigma, pt.t);
  const cplx xi = pt.x[i], xj = pt.x[j], q = pt.t;
  return (1.0 - q) * (1.0 - q) * (xi + xj) * xi * xj * nu[i] * nu[j] / ((xi - xj) * (xi - q * xj) * (xj - q * xi));
}

std::vector<CheckResult> verify_chart_brackets(const std::vector<DarbouxPoint>& pts, double tol_xs, double tol_nu,
                                               unsigned threads) {
  CheckResult xs{"chart_x_sigma", "{x_i, sigma_j} = delta_ij x_i sigma_j", 0.0, tol_xs};
  CheckResult xnu{"chart_x_nu", "{x_i, nu_j} = delta_ij x_i nu_j", 0.0, tol_nu};
  CheckResult nunu{"chart_nu_nu", "{nu_i, nu_j} matches the closed Cauchy form", 0.0, tol_nu};
  struct PointResult {
    double r[3] = {0.0, 0.0, 0.0};
    std::string where[3];
  };
  const auto per_point = parallel_map(pts.size(), threads, [&](std::size_t k) {
    const DarbouxPoint& pt = pts[k];
    const int n = pt.n;
    std::vector<ChartGradient> gx, gs, gn;
    for (int i = 0; i < n; ++i) {
      gx.push_back(chart_gradient(coordinate_x(i), pt));
      gs.push_back(chart_gradient(coordinate_sigma(i), pt));
      gn.push_back(chart_gradient(coordinate_nu(i), pt));
    }
    PointResult out;
    auto fold = [&](int slot, double r, const std::string& where) {
      if (r > out.r[slot] || out.where[slot].empty()) {
        out.r[slot] = r;
        out.where[slot] = where;
      }
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::string ij = "i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1);
        auto b = bracket_from_gradients(gx[i], gs[j], pt);
        fold(0, normalized_residual(b.value, i == j ? pt.x[i] * pt.sigma[j] : 0.0, gx[i].value, gs[j].value, b.scale), ij);
        b = bracket_from_gradients(gx[i], gn[j], pt);
        fold(1, normalized_residual(b.value, i == j ? gx[i].value * gn[j].value : 0.0, gx[i].value, gn[j].value, b.scale), ij);
        if (i != j) {
          b = bracket_from_gradients(gn[i], gn[j], pt);
          fold(2, normalized_residual(b.value, nu_nu_bracket(pt, i, j), gn[i].value, gn[j].value, b.scale), ij);
        }
      }
    return out;
  });
  for (std::size_t k = 0; k < per_point.size(); ++k) {
    const int idx = static_cast<int>(k);
    xs.record(per_point[k].r[0], idx, per_point[k].where[0]);
    xnu.record(per_point[k].r[1], idx, per_point[k].where[1]);
    if (pts[k].n > 1) nunu.record(per_point[k].r[2], idx, per_point[k].where[2]);
  }
  return {xs, xnu, nunu};
}

namespace {

cplx g_trace(const CyclicData& d, int b) {
  return (d.big_Z() * mat_pow(d.big_X(), 1 + b * d.m())).trace();
}

cplx h_trace(const CMatrix& Z, const CMatrix& X, int r, int s) {
  return (Z * mat_pow(X, 1 + r) * Z * mat_pow(X, 1 + s)).trace();
}

cplx tau(const QuiverParams& p) {
  cplx acc = 0.0;
  for (cplx t : p.t_list()) acc += t;
  return acc;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

std::vector<CheckResult> verify_xi_poisson(const QuiverParams& p, const std::vector<DarbouxPoint>& pts,
                                           const XiPoissonTolerances& tol, unsigned threads) {
  if (p.m < 2) throw Error(ErrorCode::InvalidArgument, "the lift check needs m >= 2");
  const int m = p.m;
  const cplx tv = tau(p);
  CheckResult pull{"xi_pullback", "pullbacks f_a = m tr A^a and g_b = tau tr(B A^b)", 0.0, tol.pullback};
  CheckResult ff{"xi_f_f", "{f_a, f_b} = 0", 0.0, tol.bracket};
  CheckResult fg{"xi_f_g", "{f_a, g_b} = a m g_{a+b}", 0.0, tol.bracket};
  CheckResult gg{"xi_g_g", "{g_b, g_c} = -sum_{r=bm}^{cm-1} h_{r,(b+c)m-r}", 0.0, tol.bracket};
  CheckResult hid{"xi_h_sum", "sum of h_{r,(b+c)m-r} equals tau^2 sum_p tr(B A^p B A^{b+c-p})", 0.0,
                  tol.sum_identity};

  auto f_fn = [&](int a) {
    return ChartFunction{"f" + std::to_string(a),
                         [p, a](const DarbouxPoint& pt) { return ham_trace(build_cyclic_point(pt, p), Family::E, a); }};
  };
  auto g_fn = [&](int b) {
    return ChartFunction{"g" + std::to_string(b),
                         [p, b](const DarbouxPoint& pt) { return g_trace(build_cyclic_point(pt, p), b); }};
  };

  struct PointResult {
    double r[5] = {0, 0, 0, 0, 0};
    std::string where[5];
  };
  const auto per_point = parallel_map(pts.size(), threads, [&](std::size_t k) {
    const DarbouxPoint& pt = pts[k];
    PointResult out;
    auto fold = [&](int slot, double r, const std::string& where) {
      if (r > out.r[slot] || out.where[slot].empty()) {
        out.r[slot] = r;
        out.where[slot] = where;
      }
    };
    const CyclicData d = build_cyclic_point(pt, p);
    const CMatrix A = diag(Eigen::Map<const CVector>(pt.x.data(), pt.n));
    const CMatrix B = cauchy_B(pt);
    const CMatrix bigX = d.big_X(), bigZ = d.big_Z();

    for (int a = 1; a <= 3; ++a)
      fold(0, rel(ham_trace(d, Family::E, a), static_cast<double>(m) * mat_pow(A, a).trace()), "f" + std::to_string(a));
    for (int b = 0; b <= 3; ++b)
      fold(0, rel(g_trace(d, b), tv * (B * mat_pow(A, b)).trace()), "g" + std::to_string(b));

    for (int b = 0; b <= 2; ++b)
      for (int c = b + 1; c <= 3; ++c) {
        cplx lhs = 0.0, rhs = 0.0;
        for (int r = b * m; r <= c * m - 1; ++r) lhs += h_trace(bigZ, bigX, r, (b + c) * m - r);
        for (int q = b; q <= c - 1; ++q) rhs += (B * mat_pow(A, q) * B * mat_pow(A, b + c - q)).trace();
        fold(4, rel(lhs, tv * tv * rhs), "b=" + std::to_string(b) + ",c=" + std::to_string(c));
      }

    std::vector<ChartGradient> gf, gg_;
    for (int a = 1; a <= 2; ++a) gf.push_back(chart_gradient(f_fn(a), pt));
    for (int b = 0; b <= 1; ++b) gg_.push_back(chart_gradient(g_fn(b), pt));
    {
      const auto br = bracket_from_gradients(gf[0], gf[1], pt);
      fold(1, normalized_residual(br.value, 0.0, gf[0].value, gf[1].value, br.scale), "{f1,f2}");
    }
    for (int a = 1; a <= 2; ++a)
      for (int b = 0; b <= 1; ++b) {
        const auto br = bracket_from_gradients(gf[a - 1], gg_[b], pt);
        const cplx expected = static_cast<double>(a * m) * g_trace(d, a + b);
        fold(2, normalized_residual(br.value, expected, gf[a - 1].value, gg_[b].value, br.scale),
             "{f" + std::to_string(a) + ",g" + std::to_string(b) + "}");
      }
    {
      const auto br = bracket_from_gradients(gg_[0], gg_[1], pt);
      cplx expected = 0.0;
      for (int r = 0; r <= m - 1; ++r) expected -= h_trace(bigZ, bigX, r, m - r);
      fold(3, normalized_residual(br.value, expected, gg_[0].value, gg_[1].value, br.scale), "{g0,g1}");
    }
    return out;
  });
  CheckResult* slots[5] = {&pull, &ff, &fg, &gg, &hid};
  for (std::size_t k = 0; k < per_point.size(); ++k)
    for (int s = 0; s < 5; ++s) slots[s]->record(per_point[k].r[s], static_cast<int>(k), per_point[k].where[s]);
  return {pull, ff, fg, gg, hid};
}

namespace {

/// Dual coordinates ordered like `reference` (by minimal displacement of z).
DualPoint matched_dual(const DarbouxPoint& pt, cplx q0, const Values& reference) {
  const DualPoint dp = dual_chart_extract(build_tadpole_point(pt, q0), q0);
  const auto perm = match_by_displacement(reference, dp.pos);
  DualPoint out = dp;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.pos[i] = dp.pos[perm[i]];
    out.mom[i] = dp.mom[perm[i]];
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_duality(const DarbouxPoint& pt, cplx q0, double tol) {
  const auto base = dual_chart_extract_full(build_tadpole_point(pt, q0), q0);
  if (base.gap < 1e-4)
    throw Error(ErrorCode::DegenerateSpectrum, "Z spectrum gap " + std::to_string(base.gap) + " is below 1e-4");
  const Values ref = base.point.pos;
  const int n = pt.n;
  std::vector<ChartGradient> gz, gt;
  for (int i = 0; i < n; ++i) {
    ChartFunction z{"z" + std::to_string(i + 1),
                    [q0, ref, i](const DarbouxPoint& p) { return matched_dual(p, q0, ref).pos[i]; }};
    ChartFunction th{"theta" + std::to_string(i + 1),
                     [q0, ref, i](const DarbouxPoint& p) { return matched_dual(p, q0, ref).mom[i]; }};
    DiffOptions opts;
    opts.noise = 1e-11;
    gz.push_back(chart_gradient(z, pt, opts));
    gt.push_back(chart_gradient(th, pt, opts));
  }
  CheckResult zz{"dual_z_z", "{z_i, z_j} = 0", 0.0, tol};
  CheckResult zt{"dual_z_theta", "{z_i, theta_j} = -delta_ij z_i theta_j", 0.0, tol};
  CheckResult tt{"dual_theta_theta", "{theta_i, theta_j} = 0", 0.0, tol};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::string ij = "i=" + std::to_string(i + 1) + ",j=" + std::to_string(j + 1);
      auto b = bracket_from_gradients(gz[i], gt[j], pt);
      const cplx expected = i == j ? -gz[i].value * gt[j].value : cplx(0.0);
      zt.record(normalized_residual(b.value, expected, gz[i].value, gt[j].value, b.scale), 0, ij);
      if (i < j) {
        b = bracket_from_gradients(gz[i], gz[j], pt);
        zz.record(normalized_residual(b.value, 0.0, gz[i].value, gz[j].value, b.scale), 0, ij);
        b = bracket_from_gradients(gt[i], gt[j], pt);
        tt.record(normalized_residual(b.value, 0.0, gt[i].value, gt[j].value, b.scale), 0, ij);
      }
    }
  return {zz, zt, tt};
}

}  // namespace rsq
