#include "cauchylab/constraints.hpp"

#include <cmath>

#include "cauchylab/curvature.hpp"

namespace cauchylab {

void MetricState::validate(double tol) const {
  if (g.rank() != Rank::Sym2Cov) throw Error("MetricState: g must be sym-2-cov");
  if (W.rank() != Rank::Endo) throw Error("MetricState: W must be an endomorphism");
  if (g.chart() != W.chart()) throw Error("MetricState: g and W on different charts");
  const double sd = symmetry_defect(g);
  if (sd > tol)
    throw Error("MetricState: g symmetry defect " + format_g17(sd));
  const double wd = g_symmetry_defect(g, W);
  if (wd > tol)
    throw Error("MetricState: W not g-symmetric, defect " + format_g17(wd));
}

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Ok: return "ok";
    case TrajectoryStatus::Degenerate: return "degenerate";
    case TrajectoryStatus::BlowUp: return "blow-up";
  }
  return "?";
}

std::size_t Trajectory::index_at(double tt) const {
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - tt) <= 0.5 * dt + 1e-15) return k;
  throw Error("Trajectory: no sample near t = " + format_g17(tt));
}

ConstraintResidual constraint_residual(const MetricState& state) {
  const Field& g = state.g;
  const Field& W = state.W;
  const int n = g.dim();

  Field ginv = metric_inverse(g);
  std::vector<double> gamma = christoffel(g, ginv);
  CurvatureBundle curv = curvature(g);

  Field trw = trace_endo(W);
  Field trw2 = contract_endo(W, W);

  // f = (1/2) ((n-1) lambda - Scal - tr(W^2) + tr^2 W)
  Field f(g.chart(), Rank::Scalar);
  {
    auto fc = f.comp(0);
    auto sc = curv.scal.comp(0);
    auto t1 = trw.comp(0);
    auto t2 = trw2.comp(0);
    const double c = (n - 1) * state.lambda;
    for (std::size_t p = 0; p < g.points(); ++p)
      fc[p] = 0.5 * (c - sc[p] - t2[p] + t1[p] * t1[p]);
  }

  Field omega = add(differential(trw), divergence(g, ginv, gamma, W));

  ConstraintResidual out{std::move(f), std::move(omega), std::move(trw)};
  out.f_sup = out.f.sup_norm();
  out.omega_sup = form_norm(ginv, out.omega).sup_norm();
  out.f_l2 = l2_norm_scalar(out.f, curv.vol_density);
  out.omega_l2 = l2_norm_form(out.omega, ginv, curv.vol_density);
  return out;
}

double umbilical_alpha(double scal, int n, double lambda) {
  if (n < 2) throw Error("umbilical_alpha: n must be >= 2");
  const double radicand = scal / (n * (n - 1.0)) - lambda / n;
  if (radicand < 0.0)
    throw Error("umbilical_alpha: negative radicand; requires lambda <= Scal/(n-1) "
                "(lambda = " + format_g17(lambda) + ", Scal = " + format_g17(scal) + ")");
  return std::sqrt(radicand);
}

namespace {

struct TimeDerivatives {
  Field gdot;
  Field gddot;
};

// 4th-order centered stencils at sample k (needs k-2 .. k+2), assembled
// from differences so constant data gives exact zeros and cancellation
// stays at the O(dt) difference scale.
TimeDerivatives time_derivatives(const Trajectory& traj, std::size_t k) {
  if (traj.size() < 5 || k < 2 || k + 2 >= traj.size())
    throw Error("ambient_ricci: t must be at least two steps from the "
                "trajectory endpoints");
  const double dt = traj.dt;
  // gdot = [8 (g_{k+1} - g_{k-1}) - (g_{k+2} - g_{k-2})] / (12 dt)
  Field d1 = sub(traj.g[k + 1], traj.g[k - 1]);
  Field d2 = sub(traj.g[k + 2], traj.g[k - 2]);
  Field gdot = scale(sub(scale(d1, 8.0), d2), 1.0 / (12 * dt));

  // gddot = [16 ((g_{k+1}-g_k) + (g_{k-1}-g_k))
  //          - ((g_{k+2}-g_k) + (g_{k-2}-g_k))] / (12 dt^2)
  Field s1 = add(sub(traj.g[k + 1], traj.g[k]), sub(traj.g[k - 1], traj.g[k]));
  Field s2 = add(sub(traj.g[k + 2], traj.g[k]), sub(traj.g[k - 2], traj.g[k]));
  Field gddot = scale(sub(scale(s1, 16.0), s2), 1.0 / (12 * dt * dt));
  return {std::move(gdot), std::move(gddot)};
}

}  // namespace

AmbientRicci ambient_ricci(const Trajectory& traj, double t) {
  const std::size_t k = traj.index_at(t);
  auto [gdot, gddot] = time_derivatives(traj, k);
  const Field& g = traj.g[k];
  const Chart& chart = traj.chart;
  const std::size_t np = chart.num_points();

  Field ginv = metric_inverse(g);
  std::vector<double> gamma = christoffel(g, ginv);
  CurvatureBundle curv = curvature(g);

  Field W = scale(raise(ginv, gdot), -0.5);
  Field trw = trace_endo(W);
  Field trw2 = contract_endo(W, W);
  Field tr_gddot = trace_with_metric(ginv, gddot);

  AmbientRicci out{Field(chart, Rank::Scalar), Field(chart, Rank::OneForm),
                   Field(chart, Rank::Sym2Cov), Field(chart, Rank::Scalar),
                   Field(chart, Rank::Scalar)};

  {
    auto nn = out.ric_nn.comp(0);
    auto t2 = trw2.comp(0);
    auto tg = tr_gddot.comp(0);
    for (std::size_t p = 0; p < np; ++p) nn[p] = t2[p] - 0.5 * tg[p];
  }

  out.ric_nX = add(differential(trw), divergence(g, ginv, gamma, W));

  // Ric(X,Y) = Ric^g + 2 g(W., W.) + (1/2) tr(W) gdot - (1/2) gddot
  Field gW2 = lower(g, compose(W, W));
  out.ric_tan = curv.ricci;
  axpy(out.ric_tan, 2.0, gW2);
  Field half_trw_gdot = mul_scalar(trw, gdot);
  axpy(out.ric_tan, 0.5, half_trw_gdot);
  axpy(out.ric_tan, -0.5, gddot);

  {
    auto sz = out.scal_z.comp(0);
    auto sc = curv.scal.comp(0);
    auto t1 = trw.comp(0);
    auto t2 = trw2.comp(0);
    auto tg = tr_gddot.comp(0);
    auto gc = out.gauss_combo.comp(0);
    auto nn = out.ric_nn.comp(0);
    for (std::size_t p = 0; p < np; ++p) {
      sz[p] = sc[p] + 3.0 * t2[p] - t1[p] * t1[p] - tg[p];
      gc[p] = sz[p] - 2.0 * nn[p];
    }
  }
  return out;
}

double einstein_residual_at(const Trajectory& traj, double t, double lambda) {
  AmbientRicci amb = ambient_ricci(traj, t);
  const std::size_t k = traj.index_at(t);
  const Field& g = traj.g[k];
  Field ginv = metric_inverse(g);

  double res = 0.0;
  {
    auto nn = amb.ric_nn.comp(0);
    for (std::size_t p = 0; p < g.points(); ++p)
      res = std::max(res, std::abs(nn[p] - lambda));
  }
  res = std::max(res, form_norm(ginv, amb.ric_nX).sup_norm());

  Field mixed = raise(ginv, amb.ric_tan);  // g^{-1} Ric_tan, dimensionless
  const int n = g.dim();
  for (int i = 0; i < n; ++i) {
    auto mc = mixed.comp(i * n + i);
    for (std::size_t p = 0; p < g.points(); ++p) mc[p] -= lambda;
  }
  res = std::max(res, mixed.sup_norm());
  return res;
}

EinsteinSeries einstein_residual(const Trajectory& traj, double lambda) {
  if (traj.size() < 5)
    throw Error("einstein_residual: need at least 5 trajectory samples");
  EinsteinSeries out;
  for (std::size_t k = 2; k + 2 < traj.size(); ++k) {
    MetricState s{traj.g[k], traj.W[k], lambda};
    ConstraintResidual cr = constraint_residual(s);
    out.t.push_back(traj.t[k]);
    out.f_sup.push_back(cr.f_sup);
    out.omega_sup.push_back(cr.omega_sup);
    out.einstein_sup.push_back(einstein_residual_at(traj, traj.t[k], lambda));
  }
  return out;
}

}  // namespace cauchylab
