#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "cauchylab/state.hpp"

namespace cauchylab {

/// Diagonal left-invariant metric diag(A, B, C) on SU(2) in the frame with
/// [e_1, e_2] = 2 e_3 (cyclic); A = B = C = 1 is the unit round 3-sphere
/// (sectional curvature 1).
struct LeftInvariantMetric {
  double A = 1.0, B = 1.0, C = 1.0;

  bool positive() const { return A > 0 && B > 0 && C > 0; }
  bool round(double tol = 1e-12) const {
    return std::abs(A - B) <= tol * A && std::abs(A - C) <= tol * A;
  }
};

/// Frame curvature computed from the Koszul formula with the structure
/// constants (nothing transcribed from closed-form tables).
struct FrameCurvature {
  // Gamma^k_{ij} of the invariant basis e_i (not orthonormalized)
  std::array<double, 27> gamma{};
  // Connection coefficients of the orthonormalized frame:
  // omega_{iab} = g(nabla_{ebar_i} ebar_a, ebar_b)
  std::array<double, 27> omega{};
  std::array<double, 3> ric_diag{};  // Ric(e_i, e_i) as a bilinear form
  double scal = 0.0;
};

FrameCurvature frame_curvature(const LeftInvariantMetric& m,
                               double orientation = +1.0);

/// Diagonal reduction of the evolution system: a 6-variable ODE in
/// (A, B, C, w_A, w_B, w_C) with
///   Adot_i = -2 A_i w_i,   wdot_i = -Ric_ii/A_i + (sum w) w_i + lambda.
struct DiagTrajectory {
  double dt = 0.0;
  double lambda = 0.0;
  TrajectoryStatus status = TrajectoryStatus::Ok;
  double stop_time = 0.0;
  std::vector<double> t;
  std::vector<std::array<double, 3>> metric;     // (A,B,C)
  std::vector<std::array<double, 3>> weingarten; // (w_A,w_B,w_C)
};

DiagTrajectory evolve_homogeneous(const LeftInvariantMetric& m0,
                                  const std::array<double, 3>& w0,
                                  double lambda, double T, double dt);

/// Backward+forward merge, matching evolve_symmetric.
DiagTrajectory evolve_homogeneous_symmetric(const LeftInvariantMetric& m0,
                                            const std::array<double, 3>& w0,
                                            double lambda, double t_back,
                                            double t_fwd, double dt);

/// Killing-spinor test on the round metric (s,s,s): returns the measured
/// Killing constant (expected -1/(2 sqrt(s)) for the left-invariant frame,
/// +1/(2 sqrt(s)) for the right-invariant one) and the sup residual of
/// nabla_X psi - kappa X . psi. Non-round input is an error.
enum class FrameChirality { Left, Right };

struct KillingCheck {
  double kappa = 0.0;
  double residual = 0.0;
};

KillingCheck killing_spinor_check(const LeftInvariantMetric& m,
                                  FrameChirality chirality);

// -- bridges to the general Field machinery -------------------------------

Field to_metric_field(const Chart& su2_chart, const LeftInvariantMetric& m);
Field to_diag_endo(const Chart& su2_chart, const std::array<double, 3>& w);
MetricState to_state(const Chart& su2_chart, const LeftInvariantMetric& m,
                     const std::array<double, 3>& w, double lambda);

/// Field-trajectory view of a diagonal trajectory (for the constraint /
/// spinor machinery).
Trajectory to_trajectory(const Chart& su2_chart, const DiagTrajectory& dtraj);

/// sup over samples and components of |g_k - exact(t_k)| for a closed-form
/// diagonal solution.
double max_deviation(const DiagTrajectory& traj,
                     const std::function<std::array<double, 3>(double)>& exact);

}  // namespace cauchylab
