#include "rsq/suites.hpp"

#include <algorithm>
#include <cmath>

#include "rsq/darboux.hpp"
#include "rsq/flows.hpp"
#include "rsq/hamiltonians.hpp"
#include "rsq/parallel.hpp"
#include "rsq/poisson.hpp"
#include "rsq/quantum.hpp"
#include "rsq/sampling.hpp"

namespace rsq {

namespace {

enum SuiteId : std::uint64_t { kMoment = 1, kHam, kPoisson, kXi, kDuality, kFlows, kSymbol };

std::uint64_t stream(SuiteId suite, int m, int n, int sample) {
  return ((static_cast<std::uint64_t>(suite) * 64 + m) * 64 + n) * 65536 + static_cast<std::uint64_t>(sample);
}

std::string grid_label(int m, int n) { return "m=" + std::to_string(m) + " n=" + std::to_string(n); }

CheckResult& slot(std::vector<CheckResult>& acc, const std::string& name, const std::string& identity, double tol) {
  for (auto& c : acc)
    if (c.check == name) return c;
  acc.push_back(CheckResult{name, identity, 0.0, tol});
  return acc.back();
}

/// Folds a finished check into the accumulator entry of the same name.
void fold(std::vector<CheckResult>& acc, const CheckResult& c, const std::string& label, int point) {
  CheckResult& s = slot(acc, c.check, c.identity, c.tolerance);
  s.record(c.max_residual, point, label + (c.detail.empty() ? "" : ": " + c.detail));
}

AnyPoint chart_point(const DarbouxPoint& pt, const QuiverParams& p) {
  if (p.m == 1) return build_tadpole_point(pt, p.q[0]);
  return build_cyclic_point(pt, p);
}

struct Draw {
  QuiverParams p;
  DarbouxPoint pt;
};

Draw draw(SuiteId suite, std::uint64_t seed, int m, int n, int sample) {
  Rng rng(seed, stream(suite, m, n, sample));
  QuiverParams p = random_regular_params(rng, m, n);
  DarbouxPoint pt = random_darboux_point(rng, n, p.t());
  return {std::move(p), std::move(pt)};
}

std::vector<std::pair<int, int>> grid(const SuiteConfig& cfg) {
  std::vector<std::pair<int, int>> g;
  for (int m : cfg.ms)
    for (int n : cfg.ns) g.emplace_back(m, n);
  return g;
}

}  // namespace

std::vector<std::string> numeric_suite_names() { return {"moment", "hamiltonians", "poisson", "xi", "duality", "flows"}; }

std::vector<CheckResult> run_numeric_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "moment") return moment_suite(cfg);
  if (name == "hamiltonians") return hamiltonian_suite(cfg);
  if (name == "poisson") return poisson_suite(cfg);
  if (name == "xi") return xi_suite(cfg);
  if (name == "duality") return duality_suite(cfg);
  if (name == "flows") return flow_suite(cfg);
  throw Error(ErrorCode::InvalidArgument, "unknown numerical suite '" + name + "'");
}

std::vector<CheckResult> moment_suite(const SuiteConfig& cfg) {
  const auto g = grid(cfg);
  struct Task {
    int m, n, sample;
  };
  std::vector<Task> tasks;
  for (auto [m, n] : g)
    for (int s = 0; s < cfg.samples; ++s) tasks.push_back({m, n, s});
  auto res = parallel_map(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto& tk = tasks[i];
    const Draw d = draw(kMoment, cfg.seed, tk.m, tk.n, tk.sample);
    return verify_moment(chart_point(d.pt, d.p), d.p);
  });
  CheckResult c{"moment_relations", "chart points satisfy the multiplicative moment relations", 0.0, cfg.tol.moment};
  for (std::size_t i = 0; i < tasks.size(); ++i)
    c.record(res[i].max(), tasks[i].sample, grid_label(tasks[i].m, tasks[i].n) + ": " + res[i].worst());
  return {c};
}

std::vector<CheckResult> hamiltonian_suite(const SuiteConfig& cfg) {
  const auto g = grid(cfg);
  struct Task {
    int m, n, sample;
  };
  struct Out {
    double g_trace = 0.0, h_trace = 0.0, specialized = 0.0;
  };
  std::vector<Task> tasks;
  for (auto [m, n] : g)
    for (int s = 0; s < cfg.samples; ++s) tasks.push_back({m, n, s});
  auto res = parallel_map(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto& tk = tasks[i];
    const Draw d = draw(kHam, cfg.seed, tk.m, tk.n, tk.sample);
    Out o;
    const CMatrix B = cauchy_B(d.pt);
    CMatrix Ainv = CMatrix::Zero(tk.n, tk.n);
    for (int i = 0; i < tk.n; ++i) Ainv(i, i) = 1.0 / d.pt.x[i];
    for (int l = 0; l <= tk.m; ++l)
      o.g_trace = std::max(o.g_trace, rel_diff(coord_G(d.pt, l), (Ainv * mat_pow(B, l)).trace()));
    if (tk.m == 1) {
      // tadpole chart: tr Y = sum_i sigma_i prod_{k != i} upsilon - sum_i 1/x_i
      cplx expected = 0.0;
      for (int i = 0; i < tk.n; ++i) expected += d.pt.sigma[i] * upsilon_product(d.pt.x, i, d.pt.t) - 1.0 / d.pt.x[i];
      o.h_trace = rel_diff(ham_trace(build_tadpole_point(d.pt, d.p.q[0]), Family::H, 1), expected);
    } else {
      const CoordH h = coord_H(d.pt, d.p);
      o.h_trace = rel_diff(ham_trace(build_cyclic_point(d.pt, d.p), Family::H, 1), h.normalization * h.value);
    }
    o.specialized = rel_diff(coord_G21(d.pt), coord_G(d.pt, 2));
    return o;
  });
  CheckResult gt{"G_coordinate_trace", "coordinate sum G_l equals tr(A^-1 B^l), l = 0..m", 0.0, cfg.tol.hamiltonian};
  CheckResult ht{"H_coordinate_trace", "coordinate expansion of H_1 equals the trace on the chart point", 0.0,
                 cfg.tol.hamiltonian};
  CheckResult sp{"G21_split_formula", "diagonal/pair form of G_{2,1} equals the index-sum form", 0.0,
                 cfg.tol.specialized};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string label = grid_label(tasks[i].m, tasks[i].n);
    gt.record(res[i].g_trace, tasks[i].sample, label);
    ht.record(res[i].h_trace, tasks[i].sample, label);
    sp.record(res[i].specialized, tasks[i].sample, label);
  }
  return {gt, ht, sp};
}

std::vector<CheckResult> poisson_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> acc;
  for (auto [m, n] : grid(cfg)) {
    std::vector<DarbouxPoint> pts;
    QuiverParams p;
    for (int s = 0; s < cfg.samples; ++s) {
      Draw d = draw(kPoisson, cfg.seed, m, n, s);
      if (s == 0) p = d.p;
      // one parameter set per grid cell; the points follow its t
      Rng rng(cfg.seed, stream(kPoisson, m, n, s) ^ 0x9e37);
      pts.push_back(s == 0 ? d.pt : random_darboux_point(rng, n, p.t()));
    }
    for (Family f : {Family::E, Family::F, Family::G, Family::H}) {
      std::vector<ChartFunction> fam;
      for (int j = 1; j <= 3; ++j) fam.push_back(family_function(f, j, p));
      CheckResult c = verify_involution(fam, pts, cfg.tol.involution, {}, cfg.threads);
      c.check = std::string("involution_") + family_name(f);
      c.identity = std::string("members of the ") + family_name(f) + " family Poisson-commute";
      fold(acc, c, grid_label(m, n), c.worst_point);
    }
    if (m == cfg.ms.front())
      for (const auto& c : verify_chart_brackets(pts, cfg.tol.chart_x_sigma, cfg.tol.chart_nu, cfg.threads))
        fold(acc, c, "n=" + std::to_string(n), c.worst_point);
  }
  return acc;
}

std::vector<CheckResult> xi_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> acc;
  const XiPoissonTolerances tol{cfg.tol.xi_bracket, 1e-12, cfg.tol.xi_sum};
  for (auto [m, n] : grid(cfg)) {
    if (m < 2 || n > 3) continue;
    std::vector<DarbouxPoint> pts;
    QuiverParams p;
    for (int s = 0; s < cfg.samples; ++s) {
      Draw d = draw(kXi, cfg.seed, m, n, s);
      if (s == 0) p = d.p;
      Rng rng(cfg.seed, stream(kXi, m, n, s) ^ 0x9e37);
      pts.push_back(s == 0 ? d.pt : random_darboux_point(rng, n, p.t()));
    }
    for (const auto& c : verify_xi_poisson(p, pts, tol, cfg.threads)) fold(acc, c, grid_label(m, n), c.worst_point);
  }
  return acc;
}

std::vector<CheckResult> duality_suite(const SuiteConfig& cfg) {
  std::vector<int> ns;
  for (int n : cfg.ns)
    if (n == 2 || n == 3) ns.push_back(n);
  struct Task {
    int n, sample;
  };
  std::vector<Task> tasks;
  for (int n : ns)
    for (int s = 0; s < cfg.samples; ++s) tasks.push_back({n, s});
  auto res = parallel_map(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto& tk = tasks[i];
    const double tol = tk.n == 2 ? cfg.tol.duality_n2 : cfg.tol.duality_n3;
    for (int attempt = 0;; ++attempt) {
      Rng rng(cfg.seed, stream(kDuality, 1, tk.n, tk.sample) + (static_cast<std::uint64_t>(attempt) << 40));
      const QuiverParams p = random_regular_params(rng, 1, tk.n);
      const DarbouxPoint pt = random_darboux_point(rng, tk.n, p.t());
      try {
        return verify_duality(pt, p.q[0], tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSpectrum || attempt >= 9) throw;
      }
    }
  });
  std::vector<CheckResult> acc;
  for (std::size_t i = 0; i < tasks.size(); ++i)
    for (const auto& c : res[i]) fold(acc, c, "n=" + std::to_string(tasks[i].n), tasks[i].sample);
  return acc;
}

std::vector<CheckResult> flow_suite(const SuiteConfig& cfg) {
  struct Task {
    int m, n, sample;
  };
  struct Out {
    double drift_H = 0.0, drift_G = 0.0, moment = 0.0, semigroup = 0.0, ode_ratio = 0.0;
    std::string warning;
  };
  std::vector<Task> tasks;
  for (auto [m, n] : grid(cfg))
    for (int s = 0; s < cfg.samples; ++s) tasks.push_back({m, n, s});
  auto res = parallel_map(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto& tk = tasks[i];
    const Draw d = draw(kFlows, cfg.seed, tk.m, tk.n, tk.sample);
    const AnyPoint start = chart_point(d.pt, d.p);
    const int k = tk.m;
    const cplx coeff{0.3, 0.2};
    // time span capped so that |coeff| t max(|Y^k|, |Z^k|) <= 1
    const CMatrix Y0 = big_Y(start);
    const double yk = singular_values(mat_pow(Y0, k)).front();
    const double zk = singular_values(mat_pow(Y0 + mat_inv(big_X(start)), k)).front();
    const double span = std::min(1.0, 1.0 / (std::abs(coeff) * std::max(yk, zk)));
    std::vector<double> times(cfg.trajectory_points);
    for (int j = 0; j < cfg.trajectory_points; ++j)
      times[j] = span * cfg.flow_time * j / std::max(1, cfg.trajectory_points - 1);
    Out o;
    for (Family fam : {Family::H, Family::G}) {
      std::vector<std::pair<Family, int>> conserved;
      for (int j = 1; j <= 3; ++j) conserved.emplace_back(fam, j);
      const Trajectory tr = trajectory(start, d.p, FlowSpec{fam, {{k, coeff}}}, times, conserved, 1);
      double drift = 0.0;
      for (std::size_t s = 0; s < tr.times.size(); ++s)
        for (std::size_t q = 0; q < conserved.size(); ++q)
          drift = std::max(drift, rel_diff(tr.conserved[s][q], tr.conserved[0][q]));
      (fam == Family::H ? o.drift_H : o.drift_G) = drift;
      for (double r : tr.moment_residuals) o.moment = std::max(o.moment, r);
      if (!tr.warnings.empty()) o.warning = tr.warnings.front();
    }
    const cplx s1 = span * cplx{0.3, 0.1}, s2 = span * cplx{0.45, -0.2};
    const AnyPoint direct = flow_H(start, k, s1 + s2);
    const AnyPoint composed = flow_H(flow_H(start, k, s1), k, s2);
    o.semigroup = rel_diff(big_X(direct), big_X(composed));
    const AnyPoint g_direct = flow_G(start, k, s1 + s2);
    const AnyPoint g_composed = flow_G(flow_G(start, k, s1), k, s2);
    o.semigroup = std::max(o.semigroup, rel_diff(big_X(g_direct), big_X(g_composed)));
    const double h = 1e-4 * std::min(1.0, 1.0 / yk);
    o.ode_ratio = ode_residual(start, k, h) / ode_residual(start, k, h / 2);
    return o;
  });

  CheckResult dh{"conservation_H", "H_1..H_3 are constant along the H flow", 0.0, cfg.tol.conservation};
  CheckResult dg{"conservation_G", "G_1..G_3 are constant along the G flow", 0.0, cfg.tol.conservation};
  CheckResult mo{"flow_moment", "moment relations hold along both flows", 0.0, cfg.tol.conservation};
  CheckResult sg{"semigroup", "flow(s1 + s2) = flow(s2) o flow(s1) for H and G", 0.0, cfg.tol.semigroup};
  const double mid = 0.5 * (cfg.tol.ode_ratio_lo + cfg.tol.ode_ratio_hi);
  CheckResult od{"ode_first_order", "the H-flow ODE residual halves with the step: |ratio - 2| within band", 0.0,
                 0.5 * (cfg.tol.ode_ratio_hi - cfg.tol.ode_ratio_lo)};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string label = grid_label(tasks[i].m, tasks[i].n);
    const int s = tasks[i].sample;
    dh.record(res[i].drift_H, s, label);
    dg.record(res[i].drift_G, s, label);
    mo.record(res[i].moment, s, label + (res[i].warning.empty() ? "" : " (" + res[i].warning + ")"));
    sg.record(res[i].semigroup, s, label);
    od.record(std::abs(res[i].ode_ratio - mid), s, label + ", ratio " + std::to_string(res[i].ode_ratio));
  }
  return {dh, dg, mo, sg, od};
}

CheckResult symbol_check(const std::string& op, const std::vector<int>& ns, int points, cplx alpha, cplx beta,
                         std::uint64_t seed, double tol) {
  CheckResult c{"symbol_" + op, "", 0.0, tol};
  if (op == "dtilde21")
    c.identity = "q -> 1 symbol of D~_{2,1} equals the split G_{2,1} chart formula";
  else if (op == "htilde21")
    c.identity = "q -> 1 symbol of H~_{2,1} equals G_2 + alpha G_1 + beta G_0";
  else if (op == "macdonald")
    c.identity = "q -> 1 symbol of the Macdonald operator equals E_1 in the dual chart with t -> 1/t";
  else
    throw Error(ErrorCode::InvalidArgument, "unknown operator '" + op + "'");
  for (int n : ns)
    for (int s = 0; s < points; ++s) {
      Rng rng(seed, stream(kSymbol, 0, n, s));
      const cplx t = rng.annulus(0.6, 1.5);
      const cplx q = rng.annulus(0.7, 1.3);
      const DarbouxPoint pt = random_darboux_point(rng, n, t);
      double r = 0.0;
      if (op == "dtilde21") {
        r = rel_diff(classical_symbol(op_Dtilde21(n, q, t), pt), coord_G21(pt));
      } else if (op == "htilde21") {
        const cplx expected = coord_G(pt, 2) + alpha * coord_G(pt, 1) + beta * coord_G(pt, 0);
        r = rel_diff(classical_symbol(op_Htilde21(n, q, t, alpha, beta), pt), expected);
      } else {
        const DualPoint dp(pt.x, pt.sigma, 1.0 / t);
        const QuiverParams p(1, n, {t});
        r = rel_diff(classical_symbol(op_macdonald(n, q, t), pt), dual_coord_hams(dp, p, 1).E1);
      }
      c.record(r, s, "n=" + std::to_string(n));
    }
  return c;
}

}  // namespace rsq
