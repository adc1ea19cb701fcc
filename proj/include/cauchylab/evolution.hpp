#pragma once

#include "cauchylab/constraints.hpp"
#include "cauchylab/state.hpp"

namespace cauchylab {

/// Right-hand side of the first-order evolution system in the
/// normal-geodesic gauge:
///   gdot = -2 g(W., .)
///   Wdot = -g^{-1} Ric^g + tr(W) W + lambda Id
/// The lambda coefficient is +1; see docs/evolution-sign-conventions.md for
/// the variants this replaces and the exact solutions that pin it. On grid
/// charts the result is Galerkin-projected to modes |k| <= kmax (0 = off).
struct EvolutionRhs {
  Field gdot;
  Field Wdot;
};

EvolutionRhs evolution_rhs(const MetricState& state, int kmax = 0);

struct EvolveOptions {
  int kmax = -1;           // Galerkin cap; -1 = N/4 default on grids, 0 = off
  int store_every = 1;     // sample retention stride
  double constraint_warn = 1e-6;
  double w_sup_limit = 1e12;  // |W| beyond this counts as degeneration
  // Resolution guard: gdot/g = -2W, so sup|W| dt is the relative metric
  // change per step; beyond this the collapse is unresolvable and the run
  // stops with Degenerate status (the cone hits it just before t = 1).
  double w_dt_limit = 0.25;
};

/// Classical fixed-step RK4 from t=0 to t=T (T < 0 integrates backward).
/// g and W are re-symmetrized after every step. Stops early with status
/// Degenerate when g loses positive definiteness (or |W| passes the limit)
/// and BlowUp on non-finite values; the partial trajectory is returned.
Trajectory evolve(const MetricState& state0, double T, double dt,
                  const EvolveOptions& opts = {});

/// Backward + forward integration merged into one increasing-t trajectory
/// spanning [-T_back, T_fwd]; used to place t=0 in the interior for the
/// centered propagation stencils.
Trajectory evolve_symmetric(const MetricState& state0, double t_back,
                            double t_fwd, double dt,
                            const EvolveOptions& opts = {});

/// Propagation check for the first-order linear system satisfied by the
/// constraint quantities:
///   df/dt     = delta^{g_t} omega_t + 2 H f_t
///   domega/dt = d f_t + H omega_t,     H = tr(W_t).
/// At each interior sample the left sides are 4th-order centered time
/// differences of (f_t, omega_t) and the right sides are evaluated from the
/// sampled fields.
struct PropagationReport {
  std::vector<double> t;
  std::vector<double> f_sup;
  std::vector<double> omega_sup;
  std::vector<double> f_mismatch;      // |dfdt - (delta omega + 2Hf)|_sup
  std::vector<double> omega_mismatch;  // |domegadt - (df + H omega)|_sup
  std::vector<double> dfdt_sup;        // measured df/dt (diagnostics)
  double max_mismatch = 0.0;
};

PropagationReport monitor_propagation(const Trajectory& traj);

}  // namespace cauchylab
