#include "doctest.h"

#include <cmath>

#include "cauchylab/constraints.hpp"
#include "cauchylab/curvature.hpp"
#include "cauchylab/homogeneous.hpp"
#include "cauchylab/spectral.hpp"

using namespace cauchylab;

namespace {

MetricState flat_state(double w_diag, double lambda, int N = 8) {
  Chart chart = Chart::periodic_grid(3, N);
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(i, i, p) = 1.0;
  Field w = scale(identity_endo(chart), w_diag);
  return {std::move(g), std::move(w), lambda};
}

// Closed-form diagonal trajectory sampler on the SU(2) chart.
Trajectory sample_diag_trajectory(const Chart& chart, double t0, double t1, double dt,
                                  const std::function<double(double)>& coeff,
                                  double lambda) {
  Trajectory traj;
  traj.chart = chart;
  traj.dt = dt;
  traj.lambda = lambda;
  const int steps = static_cast<int>(std::llround((t1 - t0) / dt));
  for (int k = 0; k <= steps; ++k) {
    const double t = t0 + k * dt;
    const double c = coeff(t);
    traj.t.push_back(t);
    traj.g.push_back(to_metric_field(chart, {c, c, c}));
    // W = -(1/2) g^{-1} gdot, diagonal; analytic derivative by tiny FD here
    const double h = 1e-6;
    const double cdot = (coeff(t + h) - coeff(t - h)) / (2 * h);
    const double w = -0.5 * cdot / c;
    traj.W.push_back(to_diag_endo(chart, {w, w, w}));
  }
  traj.stop_time = t1;
  return traj;
}

}  // namespace

TEST_CASE("constraints: flat data with W=0 satisfies them") {
  ConstraintResidual cr = constraint_residual(flat_state(0.0, 0.0));
  CHECK(cr.f_sup <= 1e-14);
  CHECK(cr.omega_sup <= 1e-14);
  CHECK(cr.satisfied(1e-9));
}

TEST_CASE("constraints: round S3 with W=Id, lambda=0 (6+3-9=0)") {
  Chart chart = Chart::su2_frame();
  MetricState s = to_state(chart, {1, 1, 1}, {1, 1, 1}, 0.0);
  ConstraintResidual cr = constraint_residual(s);
  CHECK(cr.f_sup <= 1e-13);
  CHECK(cr.omega_sup <= 1e-13);
}

TEST_CASE("constraints: flat with W=Id violates (e2) by f=3") {
  ConstraintResidual cr = constraint_residual(flat_state(1.0, 0.0));
  CHECK(cr.f.at(0, 0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cr.omega_sup <= 1e-13);
}

TEST_CASE("constraint scaling equivariance: (c^2 g, W/c, lambda/c^2)") {
  // f = 3 for (delta, Id, 0); the scaled data must give f/c^2.
  const double c = 2.0;
  MetricState s = flat_state(1.0, 0.0);
  MetricState scaled{scale(s.g, c * c), scale(s.W, 1.0 / c), s.lambda / (c * c)};
  ConstraintResidual cr = constraint_residual(scaled);
  CHECK(cr.f.at(0, 0) == doctest::Approx(3.0 / (c * c)).epsilon(1e-12));
}

TEST_CASE("omega vanishes for W = alpha Id with constant alpha") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field g = random_band_limited_metric(chart, 2, 0.05, 77);
  MetricState s{g, scale(identity_endo(chart), 0.7), 0.0};
  ConstraintResidual cr = constraint_residual(s);
  CHECK(cr.omega_sup <= 1e-10);
}

TEST_CASE("umbilical_alpha values and gate") {
  CHECK(umbilical_alpha(6.0, 3, 0.0) == doctest::Approx(1.0));
  CHECK(umbilical_alpha(0.0, 3, 0.0) == doctest::Approx(0.0));
  CHECK(umbilical_alpha(6.0, 3, 3.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(umbilical_alpha(0.0, 3, 1.0), Error);
  // cross-check: alpha = 0 at lambda = 3 means (sigma, 0, 3) satisfies them
  Chart chart = Chart::su2_frame();
  ConstraintResidual cr = constraint_residual(to_state(chart, {1, 1, 1}, {0, 0, 0}, 3.0));
  CHECK(cr.f_sup <= 1e-13);
}

TEST_CASE("ambient Ricci: flat product is zero") {
  Chart chart = Chart::periodic_grid(3, 8);
  Trajectory traj;
  traj.chart = chart;
  traj.dt = 1e-3;
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(i, i, p) = 1.0;
  for (int k = 0; k <= 8; ++k) {
    traj.t.push_back(k * traj.dt);
    traj.g.push_back(g);
    traj.W.push_back(Field(chart, Rank::Endo));
  }
  AmbientRicci amb = ambient_ricci(traj, 4 * traj.dt);
  CHECK(amb.ric_nn.sup_norm() <= 1e-14);
  CHECK(amb.ric_nX.sup_norm() <= 1e-14);
  CHECK(amb.ric_tan.sup_norm() <= 1e-14);
  CHECK(amb.scal_z.sup_norm() <= 1e-14);
  CHECK(einstein_residual_at(traj, 4 * traj.dt, 0.0) <= 1e-14);
}

TEST_CASE("ambient Ricci: analytic cone samples are Ricci-flat") {
  Chart chart = Chart::su2_frame();
  Trajectory traj = sample_diag_trajectory(
      chart, 0.0, 0.6, 1e-3, [](double t) { return (1 - t) * (1 - t); }, 0.0);
  CHECK(einstein_residual_at(traj, 0.3, 0.0) <= 1e-8);
}

TEST_CASE("ambient Ricci: sphere trajectory has Ric = 3 g") {
  Chart chart = Chart::su2_frame();
  Trajectory traj = sample_diag_trajectory(
      chart, 0.0, 1.0, 1e-3, [](double t) { return std::cos(t) * std::cos(t); },
      3.0);
  AmbientRicci amb = ambient_ricci(traj, 0.5);
  CHECK(std::abs(amb.ric_nn.at(0, 0) - 3.0) <= 1e-7);
  CHECK(amb.ric_nX.sup_norm() <= 1e-7);
  const std::size_t k = traj.index_at(0.5);
  Field diff = sub(amb.ric_tan, scale(traj.g[k], 3.0));
  CHECK(diff.sup_norm() <= 1e-7);
  CHECK(einstein_residual_at(traj, 0.5, 3.0) <= 1e-7);
}

TEST_CASE("the Gauss combination Scal_Z - 2 Ric_nn is off-shell algebraic") {
  // Even for a trajectory solving nothing, Scal_Z - 2 Ric(nu,nu) must equal
  // Scal^g + tr(W^2) - tr^2 W with W built from the same time stencils.
  Chart chart = Chart::su2_frame();
  Trajectory traj = sample_diag_trajectory(
      chart, 0.0, 0.5, 1e-3,
      [](double t) { return 1.0 + 0.3 * t + 0.5 * t * t * t; }, 0.0);
  AmbientRicci amb = ambient_ricci(traj, 0.25);

  const std::size_t k = traj.index_at(0.25);
  const Field& g = traj.g[k];
  Field ginv = metric_inverse(g);

  // rebuild W from the same 4th-order stencil
  const double dt = traj.dt;
  Field gdot(chart, Rank::Sym2Cov);
  axpy(gdot, -1.0 / (12 * dt), traj.g[k + 2]);
  axpy(gdot, 8.0 / (12 * dt), traj.g[k + 1]);
  axpy(gdot, -8.0 / (12 * dt), traj.g[k - 1]);
  axpy(gdot, 1.0 / (12 * dt), traj.g[k - 2]);
  Field W = scale(raise(ginv, gdot), -0.5);
  Field trw = trace_endo(W);
  Field trw2 = contract_endo(W, W);
  Field scal = scalar_curvature(g);

  const double expect = scal.at(0, 0) + trw2.at(0, 0) -
                        trw.at(0, 0) * trw.at(0, 0);
  CHECK(std::abs(amb.gauss_combo.at(0, 0) - expect) <= 1e-9);
}

TEST_CASE("einstein_residual series on constant flat trajectory is zero") {
  Chart chart = Chart::periodic_grid(3, 8);
  Trajectory traj;
  traj.chart = chart;
  traj.dt = 1e-2;
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(i, i, p) = 1.0;
  for (int k = 0; k <= 10; ++k) {
    traj.t.push_back(k * traj.dt);
    traj.g.push_back(g);
    traj.W.push_back(Field(chart, Rank::Endo));
  }
  EinsteinSeries es = einstein_residual(traj, 0.0);
  for (double v : es.einstein_sup) CHECK(v <= 1e-14);
  for (double v : es.f_sup) CHECK(v <= 1e-14);
}
