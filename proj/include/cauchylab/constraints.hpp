#pragma once

#include "cauchylab/state.hpp"

namespace cauchylab {

/// The constraint quantities of the Cauchy data:
///   f     = (1/2) ((n-1) lambda - Scal - tr(W^2) + tr^2(W))
///   omega = d tr(W) + delta^g(W)
/// Data satisfies the constraints iff both vanish.
struct ConstraintResidual {
  Field f;      // scalar
  Field omega;  // 1-form
  Field H;      // tr W
  double f_sup = 0.0;
  double omega_sup = 0.0;  // sup of the pointwise g-norm
  double f_l2 = 0.0;       // volume-weighted
  double omega_l2 = 0.0;

  bool satisfied(double tol) const { return f_sup <= tol && omega_sup <= tol; }
};

ConstraintResidual constraint_residual(const MetricState& state);

/// Umbilical Weingarten coefficient alpha = sqrt(Scal/(n(n-1)) - lambda/n);
/// requires lambda <= Scal/(n-1). W = alpha*Id then satisfies the
/// constraints whenever Scal is constant.
double umbilical_alpha(double scal, int n, double lambda);

/// The ambient Ricci data of dt^2 + g_t evaluated from trajectory samples:
///   Ric(nu,nu) = tr(W^2) - (1/2) tr_g(gddot)
///   Ric(nu,X)  = d tr(W) + delta^g(W)
///   Ric(X,Y)   = Ric^g + 2 g(W., W.) + (1/2) tr(W) gdot - (1/2) gddot
///   Scal^Z     = Scal^g + 3 tr(W^2) - tr^2(W) - tr_g(gddot)
/// gdot, gddot come from 4th-order centered stencils in t and W from
/// W = -(1/2) g^{-1} gdot, so this is an a-posteriori check independent of
/// the integrator's internal W.
struct AmbientRicci {
  Field ric_nn;       // scalar
  Field ric_nX;       // 1-form
  Field ric_tan;      // sym-2-cov
  Field scal_z;       // scalar
  Field gauss_combo;  // Scal^Z - 2 Ric(nu,nu), for cross-validation
};

AmbientRicci ambient_ricci(const Trajectory& traj, double t);

/// sup-norm Einstein residual |Ric^Z - lambda g^Z| at one interior sample:
/// max of |Ric_nn - lambda|, the frame norm of Ric_nX, and the components
/// of g^{-1} Ric_tan - lambda Id.
double einstein_residual_at(const Trajectory& traj, double t, double lambda);

struct EinsteinSeries {
  std::vector<double> t;
  std::vector<double> f_sup;
  std::vector<double> omega_sup;
  std::vector<double> einstein_sup;
};

/// Residual time-series over all interior samples (two steps from each end).
EinsteinSeries einstein_residual(const Trajectory& traj, double lambda);

}  // namespace cauchylab
