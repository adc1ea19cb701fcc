#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cauchylab/util.hpp"

namespace cauchylab {

enum class ChartKind { PeriodicGrid, LeftInvariantFrame };

/// A coordinate / model domain: either a uniform periodic n-torus grid
/// (N points per axis, N a power of two, default period 2*pi), or a
/// left-invariant frame on a Lie group given by its structure constants
/// c^k_{ij} with [e_i, e_j] = c^k_{ij} e_k. Fields on a frame chart are
/// spatially constant (one sample point).
class Chart {
public:
  static Chart periodic_grid(int n, int N, std::vector<double> periods = {});

  /// SU(2) with [e_1,e_2] = 2 e_3 (cyclic); this normalization makes the
  /// orthonormal-frame metric the unit round 3-sphere. orientation = -1
  /// gives the right-invariant frame (opposite bracket sign).
  static Chart su2_frame(double orientation = +1.0);

  static Chart frame(int n, std::vector<double> structure_constants);

  int dim() const { return n_; }
  ChartKind kind() const { return kind_; }
  bool is_grid() const { return kind_ == ChartKind::PeriodicGrid; }

  int points_per_axis() const { return N_; }
  const std::vector<double>& periods() const { return periods_; }
  std::size_t num_points() const { return npts_; }

  /// c^k_{ij}, indexed [k][i][j] flattened as (k*n + i)*n + j.
  double structure(int k, int i, int j) const {
    return c_[(static_cast<std::size_t>(k) * n_ + i) * n_ + j];
  }

  /// Coordinate of grid point index along one axis.
  double coord(int axis, int index) const {
    return periods_[axis] * static_cast<double>(index) / N_;
  }

  /// Decompose a flat row-major point index into per-axis indices.
  void point_coords(std::size_t p, std::vector<int>& idx) const;

  bool operator==(const Chart& o) const;
  bool operator!=(const Chart& o) const { return !(*this == o); }

  std::string describe() const;

  /// Default-constructed charts are empty placeholders (dim 0); every
  /// factory above produces a validated chart.
  Chart() = default;

private:
  int n_ = 0;
  ChartKind kind_ = ChartKind::PeriodicGrid;
  int N_ = 1;
  std::vector<double> periods_;
  std::vector<double> c_;  // structure constants, frame charts only
  std::size_t npts_ = 1;
};

}  // namespace cauchylab
