#include "cauchylab/chart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cauchylab {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

Chart Chart::periodic_grid(int n, int N, std::vector<double> periods) {
  if (n < 1) throw Error("Chart: dimension must be >= 1");
  if (N < 4 || !is_power_of_two(N))
    throw Error("Chart: grid N must be a power of two and >= 4, got " +
                std::to_string(N));
  if (periods.empty()) periods.assign(n, 2.0 * std::numbers::pi);
  if (static_cast<int>(periods.size()) != n)
    throw Error("Chart: periods list must have length n");
  for (double p : periods)
    if (!(p > 0.0)) throw Error("Chart: periods must be positive");

  Chart ch;
  ch.n_ = n;
  ch.kind_ = ChartKind::PeriodicGrid;
  ch.N_ = N;
  ch.periods_ = std::move(periods);
  ch.npts_ = 1;
  for (int a = 0; a < n; ++a) ch.npts_ *= static_cast<std::size_t>(N);
  return ch;
}

Chart Chart::su2_frame(double orientation) {
  std::vector<double> c(27, 0.0);
  // [e_i, e_j] = 2 * orientation * eps_{ijk} e_k
  auto set = [&](int k, int i, int j, double v) { c[(k * 3 + i) * 3 + j] = v; };
  const double s = 2.0 * orientation;
  set(2, 0, 1, s); set(2, 1, 0, -s);
  set(0, 1, 2, s); set(0, 2, 1, -s);
  set(1, 2, 0, s); set(1, 0, 2, -s);
  return frame(3, std::move(c));
}

Chart Chart::frame(int n, std::vector<double> structure_constants) {
  if (n < 1) throw Error("Chart: dimension must be >= 1");
  const std::size_t expect = static_cast<std::size_t>(n) * n * n;
  if (structure_constants.size() != expect)
    throw Error("Chart: structure constants must be an n^3 array");

  Chart ch;
  ch.n_ = n;
  ch.kind_ = ChartKind::LeftInvariantFrame;
  ch.N_ = 1;
  ch.periods_.assign(n, 2.0 * std::numbers::pi);
  ch.c_ = std::move(structure_constants);
  ch.npts_ = 1;

  // c^k_{ij} = -c^k_{ji}
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(ch.structure(k, i, j) + ch.structure(k, j, i)) > 1e-14)
          throw Error("Chart: structure constants not antisymmetric in i,j");

  // Jacobi: sum_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj} = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += ch.structure(m, i, j) * ch.structure(l, m, k) +
                 ch.structure(m, j, k) * ch.structure(l, m, i) +
                 ch.structure(m, k, i) * ch.structure(l, m, j);
          if (std::abs(s) > 1e-14)
            throw Error("Chart: structure constants violate the Jacobi identity");
        }
  return ch;
}

void Chart::point_coords(std::size_t p, std::vector<int>& idx) const {
  idx.assign(n_, 0);
  for (int a = n_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(p % N_);
    p /= N_;
  }
}

bool Chart::operator==(const Chart& o) const {
  return n_ == o.n_ && kind_ == o.kind_ && N_ == o.N_ &&
         periods_ == o.periods_ && c_ == o.c_;
}

std::string Chart::describe() const {
  std::ostringstream os;
  if (is_grid())
    os << "grid(n=" << n_ << ", N=" << N_ << ")";
  else
    os << "frame(n=" << n_ << ")";
  return os.str();
}

}  // namespace cauchylab
