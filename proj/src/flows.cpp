#include "rsq/flows.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "rsq/parallel.hpp"

namespace rsq {

int point_m(const AnyPoint& d) {
  return std::holds_alternative<TadpoleData>(d) ? 1 : std::get<CyclicData>(d).m();
}

int point_n(const AnyPoint& d) {
  return std::visit([](const auto& v) { return v.n(); }, d);
}

cplx ham_trace(const AnyPoint& d, Family family, int j) {
  return std::visit([&](const auto& v) { return ham_trace(v, family, j); }, d);
}

Residuals verify_moment(const AnyPoint& d, const QuiverParams& p, const Tolerance& tol) {
  if (const auto* tad = std::get_if<TadpoleData>(&d)) return verify_tadpole_moment(*tad, p.q.at(0), tol);
  return verify_cyclic_moment(std::get<CyclicData>(d), p, tol);
}

CMatrix big_X(const AnyPoint& d) {
  if (const auto* tad = std::get_if<TadpoleData>(&d)) return tad->X;
  return std::get<CyclicData>(d).big_X();
}

CMatrix big_Y(const AnyPoint& d) {
  if (const auto* tad = std::get_if<TadpoleData>(&d)) return tad->Y;
  return std::get<CyclicData>(d).big_Y();
}

namespace {

void check_multiples(const ExponentPoly& coefficients, int m) {
  for (const auto& entry : coefficients)
    if (entry.first < 1 || entry.first % m != 0)
      throw Error(ErrorCode::BadMultiple, "flow power " + std::to_string(entry.first) + " is not a positive multiple of m");
}

// E is the flow factor exp(-P(Y)) or exp(-P(Z)). On the cyclic side the framing
// is constant. The tadpole relation has (1+YX)^-1 on the right, so 1+VW must be
// conjugated by E to stay on the level set.
AnyPoint rebuild(const AnyPoint& d, const CMatrix& X, const CMatrix& Y, const CMatrix& E) {
  if (const auto* tad = std::get_if<TadpoleData>(&d))
    return TadpoleData(X, Y, E * tad->V, tad->W * mat_inv(E));
  const auto& cyc = std::get<CyclicData>(d);
  return cyclic_from_blocks(X, Y, cyc.V, cyc.W, cyc.m());
}

}  // namespace

AnyPoint flow_multi(const AnyPoint& d, const ExponentPoly& coefficients, Family which) {
  check_multiples(coefficients, point_m(d));
  if (which != Family::H && which != Family::G)
    throw Error(ErrorCode::InvalidArgument, "only the H and G families have closed-form flows");
  if (coefficients.empty()) return d;
  const CMatrix X0 = big_X(d);
  const CMatrix Y0 = big_Y(d);
  if (which == Family::H) {
    const CMatrix E = mat_exp(-poly_eval(Y0, coefficients));
    const CMatrix X = E * X0 + mat_phi(Y0, coefficients);
    return rebuild(d, X, Y0, E);
  }
  CMatrix Z;
  if (const auto* tad = std::get_if<TadpoleData>(&d))
    Z = tad->Z();
  else
    Z = std::get<CyclicData>(d).big_Z();
  const CMatrix E = mat_exp(-poly_eval(Z, coefficients));
  const CMatrix X = E * X0;
  return rebuild(d, X, Z - mat_inv(X), E);
}

AnyPoint flow_H(const AnyPoint& d, int k, cplx t) { return flow_multi(d, ExponentPoly{{k, t}}, Family::H); }
AnyPoint flow_G(const AnyPoint& d, int k, cplx t) { return flow_multi(d, ExponentPoly{{k, t}}, Family::G); }

TadpoleData flow_H(const TadpoleData& d, int k, cplx t) { return std::get<TadpoleData>(flow_H(AnyPoint(d), k, t)); }
CyclicData flow_H(const CyclicData& d, int k, cplx t) { return std::get<CyclicData>(flow_H(AnyPoint(d), k, t)); }
TadpoleData flow_G(const TadpoleData& d, int k, cplx t) { return std::get<TadpoleData>(flow_G(AnyPoint(d), k, t)); }
CyclicData flow_G(const CyclicData& d, int k, cplx t) { return std::get<CyclicData>(flow_G(AnyPoint(d), k, t)); }

double ode_residual(const AnyPoint& d, int k, double h) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "ode_residual needs h > 0");
  const CMatrix X0 = big_X(d);
  const CMatrix Y = big_Y(d);
  const CMatrix Xh = big_X(flow_H(d, k, h));
  const CMatrix rhs = mat_pow(Y, k - 1) + mat_pow(Y, k) * X0;
  return max_norm((Xh - X0) / h + rhs);
}

Values positions(const AnyPoint& d) {
  CMatrix hol;
  if (const auto* tad = std::get_if<TadpoleData>(&d)) {
    hol = tad->X;
  } else {
    const auto& cyc = std::get<CyclicData>(d);
    hol = identity(cyc.n());
    for (const auto& Xs : cyc.X) hol = hol * Xs;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(hol, false);
  Values out(solver.eigenvalues().data(), solver.eigenvalues().data() + hol.rows());
  std::sort(out.begin(), out.end(), complex_less);
  return out;
}

std::vector<int> match_by_displacement(const Values& prev, const Values& next) {
  const int n = static_cast<int>(prev.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto cost = [&](const std::vector<int>& p) {
    double c = 0.0;
    for (int i = 0; i < n; ++i) c += std::abs(next[p[i]] - prev[i]);
    return c;
  };
  if (n <= 8) {
    std::vector<int> best = perm;
    double best_cost = cost(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double c = cost(perm);
      if (c < best_cost) {
        best_cost = c;
        best = perm;
      }
    }
    return best;
  }
  // greedy for large n
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int arg = -1;
    for (int j = 0; j < n; ++j)
      if (!used[j] && (arg < 0 || std::abs(next[j] - prev[i]) < std::abs(next[arg] - prev[i]))) arg = j;
    used[arg] = true;
    perm[i] = arg;
  }
  return perm;
}

Trajectory trajectory(const AnyPoint& d, const QuiverParams& p, const FlowSpec& spec, const std::vector<double>& times,
                      const std::vector<std::pair<Family, int>>& conserved, unsigned threads) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw Error(ErrorCode::InvalidArgument, "time grid must be monotone");
  check_multiples(spec.coefficients, point_m(d));

  struct Snapshot {
    AnyPoint point;
    Values pos;
    Values values;
    double residual = 0.0;
  };
  auto snaps = parallel_map(times.size(), threads, [&](std::size_t i) {
    ExponentPoly scaled;
    for (const auto& [k, c] : spec.coefficients) scaled[k] = c * times[i];
    Snapshot s{flow_multi(d, scaled, spec.family), {}, {}, 0.0};
    s.pos = positions(s.point);
    for (const auto& [fam, j] : conserved) s.values.push_back(ham_trace(s.point, fam, j));
    s.residual = verify_moment(s.point, p).max();
    return s;
  });

  Trajectory tr;
  tr.times = times;
  for (const auto& [fam, j] : conserved) tr.conserved_names.push_back(std::string(family_name(fam)) + std::to_string(j));
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    Values pos = snaps[i].pos;
    if (i > 0) {
      const auto perm = match_by_displacement(tr.positions.back(), pos);
      Values ordered(pos.size());
      for (std::size_t c = 0; c < pos.size(); ++c) ordered[c] = pos[perm[c]];
      pos = std::move(ordered);
    }
    for (std::size_t a = 0; a < pos.size(); ++a)
      for (std::size_t b = a + 1; b < pos.size(); ++b)
        if (std::abs(pos[a] - pos[b]) < 1e-10) {
          tr.warnings.push_back(std::string(error_name(ErrorCode::TrackingAmbiguity)) + " at time index " +
                                std::to_string(i));
          a = pos.size();
          break;
        }
    tr.positions.push_back(std::move(pos));
    tr.points.push_back(std::move(snaps[i].point));
    tr.conserved.push_back(std::move(snaps[i].values));
    tr.moment_residuals.push_back(snaps[i].residual);
  }
  return tr;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "time";
  const std::size_t npos = tr.positions.empty() ? 0 : tr.positions.front().size();
  for (std::size_t c = 0; c < npos; ++c)
    out += ",re_pos_" + std::to_string(c + 1) + ",im_pos_" + std::to_string(c + 1);
  for (const auto& name : tr.conserved_names) out += ",re_" + name + ",im_" + name;
  out += '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    put(tr.times[i]);
    for (cplx z : tr.positions[i]) {
      out += ',';
      put(z.real());
      out += ',';
      put(z.imag());
    }
    for (cplx z : tr.conserved[i]) {
      out += ',';
      put(z.real());
      out += ',';
      put(z.imag());
    }
    out += '\n';
  }
  return out;
}

}  // namespace rsq
