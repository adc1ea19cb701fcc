#include "cauchylab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace cauchylab {

namespace {

// One cached in/out buffer pair + forward/backward plans per grid shape.
// FFTW planning is not thread-safe and plans are tied to their buffers, so
// execution copies through the cached buffers under a mutex. FFTW_ESTIMATE
// keeps plan selection deterministic run-to-run.
struct FftEntry {
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::size_t size = 0;
};

class FftCache {
public:
  static FftCache& instance() {
    static FftCache c;
    return c;
  }

  // Full-n-D transform of a real plane into the caller's complex vector
  // (forward), or back (inverse, with 1/size normalization).
  void forward(const Chart& chart, std::span<const double> in,
               std::vector<std::complex<double>>& out) {
    std::lock_guard<std::mutex> lock(mu_);
    FftEntry& e = entry(chart);
    for (std::size_t i = 0; i < e.size; ++i) {
      e.buf[i][0] = in[i];
      e.buf[i][1] = 0.0;
    }
    fftw_execute(e.fwd);
    out.resize(e.size);
    for (std::size_t i = 0; i < e.size; ++i) out[i] = {e.buf[i][0], e.buf[i][1]};
  }

  void inverse_real(const Chart& chart, std::vector<std::complex<double>>& modes,
                    std::span<double> out) {
    std::lock_guard<std::mutex> lock(mu_);
    FftEntry& e = entry(chart);
    for (std::size_t i = 0; i < e.size; ++i) {
      e.buf[i][0] = modes[i].real();
      e.buf[i][1] = modes[i].imag();
    }
    fftw_execute(e.bwd);
    const double inv = 1.0 / static_cast<double>(e.size);
    for (std::size_t i = 0; i < e.size; ++i) out[i] = e.buf[i][0] * inv;
  }

private:
  FftEntry& entry(const Chart& chart) {
    const auto key = std::make_pair(chart.dim(), chart.points_per_axis());
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;

    FftEntry e;
    e.size = chart.num_points();
    e.buf = fftw_alloc_complex(e.size);
    std::vector<int> dims(chart.dim(), chart.points_per_axis());
    e.fwd = fftw_plan_dft(chart.dim(), dims.data(), e.buf, e.buf,
                          FFTW_FORWARD, FFTW_ESTIMATE);
    e.bwd = fftw_plan_dft(chart.dim(), dims.data(), e.buf, e.buf,
                          FFTW_BACKWARD, FFTW_ESTIMATE);
    return entries_.emplace(key, e).first->second;
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, FftEntry> entries_;
};

// Signed integer wavenumber of mode index m on an axis of N points.
inline int wavenumber(int m, int N) { return m <= N / 2 ? m : m - N; }

void require_grid(const Chart& chart, const char* op) {
  if (!chart.is_grid())
    throw Error(std::string(op) +
                ": requires a periodic-grid chart (frame fields are constant "
                "in space)");
}

// Apply fn(mode_value, k_vector) over all modes of a complex spectrum.
template <typename Fn>
void for_each_mode(const Chart& chart, std::vector<std::complex<double>>& modes,
                   Fn&& fn) {
  const int n = chart.dim();
  const int N = chart.points_per_axis();
  std::vector<int> idx(n, 0);
  std::vector<int> k(n, 0);
  for (std::size_t p = 0; p < modes.size(); ++p) {
    std::size_t q = p;
    for (int a = n - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(q % N);
      q /= N;
      k[a] = wavenumber(idx[a], N);
    }
    fn(modes[p], k, idx);
  }
}

}  // namespace

void partial_derivative_plane(const Chart& chart, std::span<const double> in,
                              std::span<double> out, int axis) {
  require_grid(chart, "partial_derivative");
  if (axis < 0 || axis >= chart.dim())
    throw Error("partial_derivative: axis out of range");

  const int N = chart.points_per_axis();
  const double scale = 2.0 * std::numbers::pi / chart.periods()[axis];

  std::vector<std::complex<double>> modes;
  FftCache::instance().forward(chart, in, modes);
  for_each_mode(chart, modes, [&](std::complex<double>& v, const std::vector<int>& k,
                                  const std::vector<int>& idx) {
    // Nyquist mode has no well-defined sign for the derivative; drop it.
    if (idx[axis] == N / 2) {
      v = 0.0;
      return;
    }
    v *= std::complex<double>(0.0, k[axis] * scale);
  });
  FftCache::instance().inverse_real(chart, modes, out);
}

Field partial_derivative(const Field& f, int axis) {
  require_grid(f.chart(), "partial_derivative");
  Field out(f.chart(), f.rank());
  for (int c = 0; c < f.ncomp(); ++c)
    partial_derivative_plane(f.chart(), f.comp(c), out.comp(c), axis);
  return out;
}

namespace {

void mask_modes(Field& f, int kmax) {
  const Chart& chart = f.chart();
  std::vector<std::complex<double>> modes;
  for (int c = 0; c < f.ncomp(); ++c) {
    FftCache::instance().forward(chart, f.comp(c), modes);
    for_each_mode(chart, modes, [&](std::complex<double>& v, const std::vector<int>& k,
                                    const std::vector<int>&) {
      for (int a = 0; a < chart.dim(); ++a)
        if (std::abs(k[a]) > kmax) {
          v = 0.0;
          return;
        }
    });
    FftCache::instance().inverse_real(chart, modes, f.comp(c));
  }
}

}  // namespace

Field dealias_two_thirds(const Field& f) {
  require_grid(f.chart(), "dealias_two_thirds");
  Field out = f;
  mask_modes(out, f.chart().points_per_axis() / 3);
  return out;
}

Field galerkin_project(const Field& f, int kmax) {
  Field out = f;
  galerkin_project_in_place(out, kmax);
  return out;
}

void galerkin_project_in_place(Field& f, int kmax) {
  require_grid(f.chart(), "galerkin_project");
  if (kmax < 0) throw Error("galerkin_project: kmax must be >= 0");
  if (kmax >= f.chart().points_per_axis() / 2) return;  // nothing to remove
  mask_modes(f, kmax);
}

Field mul_scalar_dealiased(const Field& s, const Field& b, bool dealias) {
  Field out = mul_scalar(s, b);
  if (dealias && out.chart().is_grid()) out = dealias_two_thirds(out);
  return out;
}

Field random_band_limited_scalar(const Chart& chart, int mode_cap,
                                 double amplitude, std::uint64_t seed) {
  require_grid(chart, "random_band_limited_scalar");
  const int n = chart.dim();
  Field out(chart, Rank::Scalar);
  SplitMix64 rng(seed);

  // Enumerate modes in lexicographic order so the field is reproducible.
  std::vector<int> k(n, -mode_cap);
  auto advance = [&]() {
    for (int a = n - 1; a >= 0; --a) {
      if (++k[a] <= mode_cap) return true;
      k[a] = -mode_cap;
    }
    return false;
  };

  auto fc = out.comp(0);
  std::vector<int> idx(n);
  do {
    bool zero = true;
    for (int a = 0; a < n; ++a)
      if (k[a] != 0) zero = false;
    if (zero) continue;
    double k2 = 0.0;
    for (int a = 0; a < n; ++a) k2 += static_cast<double>(k[a]) * k[a];
    const double decay = amplitude / (1.0 + k2);
    const double ak = decay * rng.next_signed();
    const double bk = decay * rng.next_signed();
    for (std::size_t p = 0; p < chart.num_points(); ++p) {
      chart.point_coords(p, idx);
      double phase = 0.0;
      for (int a = 0; a < n; ++a)
        phase += k[a] * chart.coord(a, idx[a]) * 2.0 * std::numbers::pi /
                 chart.periods()[a];
      fc[p] += ak * std::cos(phase) + bk * std::sin(phase);
    }
  } while (advance());
  return out;
}

Field random_band_limited_metric(const Chart& chart, int mode_cap,
                                 double amplitude, std::uint64_t seed) {
  const int n = chart.dim();
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < n; ++i) {
    auto gc = g.comp(i * n + i);
    for (std::size_t p = 0; p < chart.num_points(); ++p) gc[p] = 1.0;
  }
  int comp = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++comp) {
      Field s = random_band_limited_scalar(chart, mode_cap, amplitude,
                                           seed + 1000 * comp);
      auto sc = s.comp(0);
      auto a = g.comp(i * n + j);
      auto b = g.comp(j * n + i);
      for (std::size_t p = 0; p < chart.num_points(); ++p) {
        a[p] += sc[p];
        if (j != i) b[p] += sc[p];
      }
    }
  // Validate positivity up front so tests fail loudly on bad amplitudes.
  (void)metric_inverse(g);
  return g;
}

Field random_band_limited_endo(const Field& g, int mode_cap, double amplitude,
                               std::uint64_t seed) {
  const Chart& chart = g.chart();
  const int n = chart.dim();
  Field h(chart, Rank::Sym2Cov);
  int comp = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j, ++comp) {
      Field s = random_band_limited_scalar(chart, mode_cap, amplitude,
                                           seed + 777 * (comp + 1));
      auto sc = s.comp(0);
      auto a = h.comp(i * n + j);
      auto b = h.comp(j * n + i);
      for (std::size_t p = 0; p < chart.num_points(); ++p) {
        a[p] += sc[p];
        if (j != i) b[p] += sc[p];
      }
    }
  return raise(metric_inverse(g), h);  // g-symmetric by construction
}

}  // namespace cauchylab
