#include "cauchylab/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylab/curvature.hpp"
#include "cauchylab/spectral.hpp"

namespace cauchylab {

EvolutionRhs evolution_rhs(const MetricState& state, int kmax) {
  const Field& g = state.g;
  const Field& W = state.W;
  const int n = g.dim();

  Field ginv = metric_inverse(g);
  Field ric = ricci(g);

  // gdot_{ij} = -2 g_{ik} W^k_j, symmetrized against roundoff.
  Field gdot = symmetrize(scale(lower(g, W), -2.0));

  // Wdot = -g^{-1} Ric + tr(W) W + lambda Id
  Field Wdot = scale(raise(ginv, ric), -1.0);
  Field trw = trace_endo(W);
  Field trw_W = mul_scalar(trw, W);
  axpy(Wdot, 1.0, trw_W);
  for (int i = 0; i < n; ++i) {
    auto c = Wdot.comp(i * n + i);
    for (std::size_t p = 0; p < g.points(); ++p) c[p] += state.lambda;
  }

  if (g.chart().is_grid() && kmax > 0) {
    galerkin_project_in_place(gdot, kmax);
    galerkin_project_in_place(Wdot, kmax);
  }
  return {std::move(gdot), std::move(Wdot)};
}

namespace {

struct StateVec {
  Field g;
  Field W;
};

StateVec axpy_state(const StateVec& y, double a, const EvolutionRhs& k) {
  StateVec out = y;
  axpy(out.g, a, k.gdot);
  axpy(out.W, a, k.Wdot);
  return out;
}

bool spd_everywhere(const Field& g) {
  try {
    (void)metric_inverse(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Trajectory evolve(const MetricState& state0, double T, double dt,
                  const EvolveOptions& opts) {
  if (!(dt > 0.0)) throw Error("evolve: dt must be positive");
  state0.validate(1e-10);

  const Chart& chart = state0.chart();
  int kmax = opts.kmax;
  if (kmax < 0) kmax = chart.is_grid() ? chart.points_per_axis() / 4 : 0;

  // Off-constraint data is legitimate input (the propagation monitor uses
  // it); record the initial residual for reporting, never refuse.
  ConstraintResidual cr0 = constraint_residual(state0);

  const double dir = T >= 0 ? 1.0 : -1.0;
  const double h = dir * dt;
  const std::size_t nsteps = static_cast<std::size_t>(std::llround(std::abs(T) / dt));

  Trajectory traj;
  traj.chart = chart;
  traj.dt = dt;
  traj.lambda = state0.lambda;
  traj.kmax = kmax;
  traj.status = TrajectoryStatus::Ok;
  traj.f0_sup = cr0.f_sup;
  traj.omega0_sup = cr0.omega_sup;
  traj.constraints_ok = cr0.satisfied(opts.constraint_warn);

  StateVec y{state0.g, state0.W};
  double t = 0.0;
  traj.t.push_back(t);
  traj.g.push_back(y.g);
  traj.W.push_back(y.W);

  auto rhs = [&](const StateVec& s) {
    return evolution_rhs({s.g, s.W, state0.lambda}, kmax);
  };

  for (std::size_t step = 1; step <= nsteps; ++step) {
    StateVec ynew = y;
    try {
      EvolutionRhs k1 = rhs(y);
      EvolutionRhs k2 = rhs(axpy_state(y, 0.5 * h, k1));
      EvolutionRhs k3 = rhs(axpy_state(y, 0.5 * h, k2));
      EvolutionRhs k4 = rhs(axpy_state(y, h, k3));
      axpy(ynew.g, h / 6.0, k1.gdot);
      axpy(ynew.g, h / 3.0, k2.gdot);
      axpy(ynew.g, h / 3.0, k3.gdot);
      axpy(ynew.g, h / 6.0, k4.gdot);
      axpy(ynew.W, h / 6.0, k1.Wdot);
      axpy(ynew.W, h / 3.0, k2.Wdot);
      axpy(ynew.W, h / 3.0, k3.Wdot);
      axpy(ynew.W, h / 6.0, k4.Wdot);
    } catch (const Error&) {
      // A stage left the SPD cone: the metric is degenerating.
      traj.status = TrajectoryStatus::Degenerate;
      traj.stop_time = t;
      return traj;
    }

    t = h * static_cast<double>(step);

    if (!ynew.g.finite() || !ynew.W.finite()) {
      traj.status = TrajectoryStatus::BlowUp;
      traj.stop_time = t;
      return traj;
    }
    ynew.g = symmetrize(ynew.g);
    const double w_sup = ynew.W.sup_norm();
    if (!spd_everywhere(ynew.g) || w_sup > opts.w_sup_limit ||
        w_sup * dt > opts.w_dt_limit) {
      traj.status = TrajectoryStatus::Degenerate;
      traj.stop_time = t;
      return traj;
    }
    Field ginv = metric_inverse(ynew.g);
    ynew.W = g_symmetrize(ynew.g, ginv, ynew.W);

    y = std::move(ynew);
    if (step % static_cast<std::size_t>(std::max(1, opts.store_every)) == 0) {
      traj.t.push_back(t);
      traj.g.push_back(y.g);
      traj.W.push_back(y.W);
    }
  }
  traj.stop_time = t;

  if (dir < 0) {
    std::reverse(traj.t.begin(), traj.t.end());
    std::reverse(traj.g.begin(), traj.g.end());
    std::reverse(traj.W.begin(), traj.W.end());
  }
  return traj;
}

Trajectory evolve_symmetric(const MetricState& state0, double t_back,
                            double t_fwd, double dt, const EvolveOptions& opts) {
  Trajectory back = evolve(state0, -t_back, dt, opts);
  Trajectory fwd = evolve(state0, t_fwd, dt, opts);
  if (back.status != TrajectoryStatus::Ok) return back;
  if (fwd.status != TrajectoryStatus::Ok) return fwd;

  Trajectory out = back;  // samples at -t_back .. 0 in increasing order
  for (std::size_t k = 1; k < fwd.size(); ++k) {
    out.t.push_back(fwd.t[k]);
    out.g.push_back(fwd.g[k]);
    out.W.push_back(fwd.W[k]);
  }
  out.stop_time = fwd.stop_time;
  return out;
}

PropagationReport monitor_propagation(const Trajectory& traj) {
  if (traj.size() < 5)
    throw Error("monitor_propagation: need at least 5 samples");
  const double dt = traj.dt;
  const Chart& chart = traj.chart;

  // Constraint quantities at every sample.
  std::vector<Field> f, omega, H;
  f.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    MetricState s{traj.g[k], traj.W[k], traj.lambda};
    ConstraintResidual cr = constraint_residual(s);
    f.push_back(std::move(cr.f));
    omega.push_back(std::move(cr.omega));
    H.push_back(std::move(cr.H));
  }

  PropagationReport rep;
  for (std::size_t k = 2; k + 2 < traj.size(); ++k) {
    // 4th-order centered time derivative, difference-first form.
    auto d4 = [&](const std::vector<Field>& v) {
      Field d1 = sub(v[k + 1], v[k - 1]);
      Field d2 = sub(v[k + 2], v[k - 2]);
      return scale(sub(scale(d1, 8.0), d2), 1.0 / (12 * dt));
    };
    Field dfdt = d4(f);
    Field domegadt = d4(omega);

    Field ginv = metric_inverse(traj.g[k]);
    std::vector<double> gamma = christoffel(traj.g[k], ginv);

    // RHS of the linear system.
    Field rhs_f = divergence_form(ginv, gamma, omega[k]);
    {
      auto rc = rhs_f.comp(0);
      auto hc = H[k].comp(0);
      auto fc = f[k].comp(0);
      for (std::size_t p = 0; p < chart.num_points(); ++p)
        rc[p] += 2.0 * hc[p] * fc[p];
    }
    Field rhs_omega = differential(f[k]);
    {
      const int n = chart.dim();
      for (int a = 0; a < n; ++a) {
        auto rc = rhs_omega.comp(a);
        auto hc = H[k].comp(0);
        auto oc = omega[k].comp(a);
        for (std::size_t p = 0; p < chart.num_points(); ++p)
          rc[p] += hc[p] * oc[p];
      }
    }

    rep.t.push_back(traj.t[k]);
    rep.f_sup.push_back(f[k].sup_norm());
    rep.omega_sup.push_back(omega[k].sup_norm());
    rep.f_mismatch.push_back(sub(dfdt, rhs_f).sup_norm());
    rep.omega_mismatch.push_back(sub(domegadt, rhs_omega).sup_norm());
    rep.dfdt_sup.push_back(dfdt.sup_norm());
    rep.max_mismatch = std::max({rep.max_mismatch, rep.f_mismatch.back(),
                                 rep.omega_mismatch.back()});
  }
  return rep;
}

}  // namespace cauchylab
