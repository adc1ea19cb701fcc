#pragma once

#include <string>
#include <vector>

#include "cauchylab/field.hpp"

namespace cauchylab {

/// Cauchy data (g, W, lambda): a metric, a g-symmetric Weingarten
/// endomorphism, and the Einstein normalization Ric^Z = lambda g^Z.
struct MetricState {
  Field g;       // sym-2-cov, positive definite
  Field W;       // endomorphism, g-symmetric
  double lambda = 0.0;

  const Chart& chart() const { return g.chart(); }

  /// Throws on chart/rank mismatch or g-symmetry defect > tol.
  void validate(double tol = 1e-12) const;
};

enum class TrajectoryStatus { Ok, Degenerate, BlowUp };

std::string to_string(TrajectoryStatus s);

/// A time-indexed family (t_k, g_k, W_k) sampling dt^2 + g_t on a uniform
/// t grid. Immutable once built; samples are stored every step by default.
struct Trajectory {
  Chart chart;
  double dt = 0.0;
  double lambda = 0.0;
  int kmax = 0;  // Galerkin mode cap (grid charts; 0 = untruncated)
  std::string integrator = "rk4";
  TrajectoryStatus status = TrajectoryStatus::Ok;
  double stop_time = 0.0;  // where integration ended (== last t unless stopped)
  double f0_sup = 0.0;     // initial constraint residuals, for reports
  double omega0_sup = 0.0;
  bool constraints_ok = true;

  std::vector<double> t;
  std::vector<Field> g;
  std::vector<Field> W;

  std::size_t size() const { return t.size(); }

  /// Index of the sample nearest to time tt; throws if no sample is within
  /// half a step.
  std::size_t index_at(double tt) const;
};

}  // namespace cauchylab
