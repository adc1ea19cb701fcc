#include "cauchylab/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace cauchylab {

namespace {

inline double eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  // parity of the permutation (i,j,k) of (0,1,2)
  return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

}  // namespace

FrameCurvature frame_curvature(const LeftInvariantMetric& m, double orientation) {
  if (!m.positive()) throw Error("frame_curvature: metric coefficients must be positive");
  const double A[3] = {m.A, m.B, m.C};
  const double s = orientation;

  FrameCurvature out;
  auto G = [&](int k, int i, int j) -> double& { return out.gamma[(k * 3 + i) * 3 + j]; };

  // Koszul with constant inner products:
  //   g(nabla_{e_i} e_j, e_l) = s eps_{ijl} (A_l - A_i + A_j)
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        G(k, i, j) = s * eps3(i, j, k) * (A[k] - A[i] + A[j]) / A[k];

  // R^l_{ijk} = Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
  //           - c^m_{ij} Gamma^l_{mk},   c^m_{ij} = 2 s eps_{ijm}
  double R[3][3][3][3] = {};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double v = 0.0;
          for (int mm = 0; mm < 3; ++mm) {
            v += G(l, i, mm) * G(mm, j, k) - G(l, j, mm) * G(mm, i, k);
            v -= 2.0 * s * eps3(i, j, mm) * G(l, mm, k);
          }
          R[l][i][j][k] = v;
        }

  for (int j = 0; j < 3; ++j) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i) r += R[i][i][j][j];
    out.ric_diag[j] = r;
  }
  out.scal = out.ric_diag[0] / A[0] + out.ric_diag[1] / A[1] + out.ric_diag[2] / A[2];

  // Orthonormal frame ebar_i = e_i / sqrt(A_i):
  //   omega_{iab} = s eps_{iab} (A_b - A_i + A_a) / sqrt(A_i A_a A_b)
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        out.omega[(i * 3 + a) * 3 + b] =
            s * eps3(i, a, b) * (A[b] - A[i] + A[a]) / std::sqrt(A[i] * A[a] * A[b]);

  return out;
}

namespace {

struct DiagRhs {
  std::array<double, 3> Adot;
  std::array<double, 3> wdot;
};

DiagRhs diag_rhs(const std::array<double, 3>& A, const std::array<double, 3>& w,
                 double lambda) {
  LeftInvariantMetric m{A[0], A[1], A[2]};
  FrameCurvature fc = frame_curvature(m);
  const double trw = w[0] + w[1] + w[2];
  DiagRhs r;
  for (int i = 0; i < 3; ++i) {
    r.Adot[i] = -2.0 * A[i] * w[i];
    r.wdot[i] = -fc.ric_diag[i] / A[i] + trw * w[i] + lambda;
  }
  return r;
}

}  // namespace

DiagTrajectory evolve_homogeneous(const LeftInvariantMetric& m0,
                                  const std::array<double, 3>& w0,
                                  double lambda, double T, double dt) {
  if (!(dt > 0.0)) throw Error("evolve_homogeneous: dt must be positive");
  if (!m0.positive())
    throw Error("evolve_homogeneous: metric coefficients must be positive");

  const double dir = T >= 0 ? 1.0 : -1.0;
  const double h = dir * dt;
  const std::size_t nsteps = static_cast<std::size_t>(std::llround(std::abs(T) / dt));

  DiagTrajectory traj;
  traj.dt = dt;
  traj.lambda = lambda;

  std::array<double, 3> A{m0.A, m0.B, m0.C};
  std::array<double, 3> w = w0;
  double t = 0.0;
  traj.t.push_back(t);
  traj.metric.push_back(A);
  traj.weingarten.push_back(w);

  // |w_i| dt is the relative metric change per step; past 0.25 the collapse
  // is unresolvable and the run stops as degenerate (same guard as evolve()).
  auto ok = [dt](const std::array<double, 3>& A, const std::array<double, 3>& w) {
    for (int i = 0; i < 3; ++i) {
      if (!std::isfinite(A[i]) || !std::isfinite(w[i])) return false;
      if (!(A[i] > 0.0) || std::abs(w[i]) > 1e12) return false;
      if (std::abs(w[i]) * dt > 0.25) return false;
    }
    return true;
  };

  for (std::size_t step = 1; step <= nsteps; ++step) {
    auto stage = [&](double c, const DiagRhs& k) {
      std::array<double, 3> As, ws;
      for (int i = 0; i < 3; ++i) {
        As[i] = A[i] + c * h * k.Adot[i];
        ws[i] = w[i] + c * h * k.wdot[i];
      }
      return std::make_pair(As, ws);
    };

    DiagRhs k1 = diag_rhs(A, w, lambda);
    auto [A2, w2] = stage(0.5, k1);
    if (!ok(A2, w2)) { traj.status = TrajectoryStatus::Degenerate; traj.stop_time = t; return traj; }
    DiagRhs k2 = diag_rhs(A2, w2, lambda);
    auto [A3, w3] = stage(0.5, k2);
    if (!ok(A3, w3)) { traj.status = TrajectoryStatus::Degenerate; traj.stop_time = t; return traj; }
    DiagRhs k3 = diag_rhs(A3, w3, lambda);
    auto [A4, w4] = stage(1.0, k3);
    if (!ok(A4, w4)) { traj.status = TrajectoryStatus::Degenerate; traj.stop_time = t; return traj; }
    DiagRhs k4 = diag_rhs(A4, w4, lambda);

    for (int i = 0; i < 3; ++i) {
      A[i] += h / 6.0 * (k1.Adot[i] + 2 * k2.Adot[i] + 2 * k3.Adot[i] + k4.Adot[i]);
      w[i] += h / 6.0 * (k1.wdot[i] + 2 * k2.wdot[i] + 2 * k3.wdot[i] + k4.wdot[i]);
    }
    t = h * static_cast<double>(step);

    bool finite = true;
    for (int i = 0; i < 3; ++i)
      if (!std::isfinite(A[i]) || !std::isfinite(w[i])) finite = false;
    if (!finite) {
      traj.status = TrajectoryStatus::BlowUp;
      traj.stop_time = t;
      return traj;
    }
    if (!ok(A, w)) {
      traj.status = TrajectoryStatus::Degenerate;
      traj.stop_time = t;
      return traj;
    }
    traj.t.push_back(t);
    traj.metric.push_back(A);
    traj.weingarten.push_back(w);
  }
  traj.stop_time = t;

  if (dir < 0) {
    std::reverse(traj.t.begin(), traj.t.end());
    std::reverse(traj.metric.begin(), traj.metric.end());
    std::reverse(traj.weingarten.begin(), traj.weingarten.end());
  }
  return traj;
}

DiagTrajectory evolve_homogeneous_symmetric(const LeftInvariantMetric& m0,
                                            const std::array<double, 3>& w0,
                                            double lambda, double t_back,
                                            double t_fwd, double dt) {
  DiagTrajectory back = evolve_homogeneous(m0, w0, lambda, -t_back, dt);
  DiagTrajectory fwd = evolve_homogeneous(m0, w0, lambda, t_fwd, dt);
  if (back.status != TrajectoryStatus::Ok) return back;
  if (fwd.status != TrajectoryStatus::Ok) return fwd;
  DiagTrajectory out = back;
  for (std::size_t k = 1; k < fwd.t.size(); ++k) {
    out.t.push_back(fwd.t[k]);
    out.metric.push_back(fwd.metric[k]);
    out.weingarten.push_back(fwd.weingarten[k]);
  }
  out.stop_time = fwd.stop_time;
  return out;
}

KillingCheck killing_spinor_check(const LeftInvariantMetric& m,
                                  FrameChirality chirality) {
  if (!m.round(1e-12))
    throw Error("killing_spinor_check: Killing check requires round metric");
  const double orientation = chirality == FrameChirality::Left ? +1.0 : -1.0;
  FrameCurvature fc = frame_curvature(m, orientation);

  using C = std::complex<double>;
  const C I(0.0, 1.0);
  // gamma_j = i sigma_j; gamma_1 gamma_2 gamma_3 = +Id
  const C gam[3][2][2] = {
      {{C(0), I}, {I, C(0)}},
      {{C(0), C(1)}, {C(-1), C(0)}},
      {{I, C(0)}, {C(0), -I}},
  };

  const C psi[2] = {C(1), C(0)};
  double residual = 0.0;
  double kappa_acc = 0.0;

  for (int i = 0; i < 3; ++i) {
    // D_i psi = (1/4) sum_{a,b} omega_{iab} gamma_a gamma_b psi
    C d[2] = {C(0), C(0)};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double oab = fc.omega[(i * 3 + a) * 3 + b];
        if (oab == 0.0) continue;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            for (int k = 0; k < 2; ++k)
              d[r] += 0.25 * oab * gam[a][r][k] * gam[b][k][c] * psi[c];
      }
    // gamma_i psi
    C gp[2] = {C(0), C(0)};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) gp[r] += gam[i][r][c] * psi[c];

    // kappa_i = Re <gamma_i psi, D_i psi> (|gamma_i psi| = 1)
    double kappa_i = 0.0;
    for (int r = 0; r < 2; ++r) kappa_i += (std::conj(gp[r]) * d[r]).real();
    kappa_acc += kappa_i / 3.0;
  }

  // Residual against the averaged constant.
  for (int i = 0; i < 3; ++i) {
    C d[2] = {C(0), C(0)};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double oab = fc.omega[(i * 3 + a) * 3 + b];
        if (oab == 0.0) continue;
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            for (int k = 0; k < 2; ++k)
              d[r] += 0.25 * oab * gam[a][r][k] * gam[b][k][c] * psi[c];
      }
    C gp[2] = {C(0), C(0)};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) gp[r] += gam[i][r][c] * psi[c];
    double norm2 = 0.0;
    for (int r = 0; r < 2; ++r) {
      const C diff = d[r] - kappa_acc * gp[r];
      norm2 += std::norm(diff);
    }
    residual = std::max(residual, std::sqrt(norm2));
  }
  return {kappa_acc, residual};
}

Field to_metric_field(const Chart& su2_chart, const LeftInvariantMetric& m) {
  if (su2_chart.is_grid() || su2_chart.dim() != 3)
    throw Error("to_metric_field: expected an SU(2) frame chart");
  Field g(su2_chart, Rank::Sym2Cov);
  g.at2(0, 0, 0) = m.A;
  g.at2(1, 1, 0) = m.B;
  g.at2(2, 2, 0) = m.C;
  return g;
}

Field to_diag_endo(const Chart& su2_chart, const std::array<double, 3>& w) {
  Field W(su2_chart, Rank::Endo);
  for (int i = 0; i < 3; ++i) W.at2(i, i, 0) = w[i];
  return W;
}

MetricState to_state(const Chart& su2_chart, const LeftInvariantMetric& m,
                     const std::array<double, 3>& w, double lambda) {
  return {to_metric_field(su2_chart, m), to_diag_endo(su2_chart, w), lambda};
}

Trajectory to_trajectory(const Chart& su2_chart, const DiagTrajectory& dtraj) {
  Trajectory out;
  out.chart = su2_chart;
  out.dt = dtraj.dt;
  out.lambda = dtraj.lambda;
  out.status = dtraj.status;
  out.stop_time = dtraj.stop_time;
  out.t = dtraj.t;
  out.g.reserve(dtraj.t.size());
  out.W.reserve(dtraj.t.size());
  for (std::size_t k = 0; k < dtraj.t.size(); ++k) {
    out.g.push_back(to_metric_field(
        su2_chart, {dtraj.metric[k][0], dtraj.metric[k][1], dtraj.metric[k][2]}));
    out.W.push_back(to_diag_endo(su2_chart, dtraj.weingarten[k]));
  }
  return out;
}

double max_deviation(const DiagTrajectory& traj,
                     const std::function<std::array<double, 3>(double)>& exact) {
  double m = 0.0;
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    const auto ex = exact(traj.t[k]);
    for (int i = 0; i < 3; ++i)
      m = std::max(m, std::abs(traj.metric[k][i] - ex[i]));
  }
  return m;
}

}  // namespace cauchylab
