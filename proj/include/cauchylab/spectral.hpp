#pragma once

#include <cstdint>

#include "cauchylab/field.hpp"

namespace cauchylab {

/// Spectral partial derivative along one coordinate axis of a periodic-grid
/// field: forward DFT, multiply mode k by i*k*(2*pi/period), inverse DFT,
/// imaginary residue discarded (Nyquist mode zeroed). Rejects frame charts.
Field partial_derivative(const Field& f, int axis);

/// In-place spectral derivative of a single component plane.
void partial_derivative_plane(const Chart& chart, std::span<const double> in,
                              std::span<double> out, int axis);

/// Zero all Fourier modes with |k_a| > N/3 on any axis (2/3-rule dealiasing).
Field dealias_two_thirds(const Field& f);

/// Galerkin truncation: zero all modes with |k_a| > kmax on any axis.
Field galerkin_project(const Field& f, int kmax);
void galerkin_project_in_place(Field& f, int kmax);

/// Pointwise product of two scalar-represented planes with optional 2/3
/// dealiasing of the result.
Field mul_scalar_dealiased(const Field& s, const Field& b, bool dealias);

/// Deterministic band-limited random scalar field from the named PRNG:
/// sum over integer modes 0 < |k|_inf <= mode_cap of
///   a_k cos(k.x) + b_k sin(k.x),  a,b ~ amplitude * U(-1,1) / (1+|k|^2).
Field random_band_limited_scalar(const Chart& chart, int mode_cap,
                                 double amplitude, std::uint64_t seed);

/// delta + S with S a symmetric band-limited random perturbation; SPD for
/// the amplitudes used in tests.
Field random_band_limited_metric(const Chart& chart, int mode_cap,
                                 double amplitude, std::uint64_t seed);

/// Symmetric random band-limited endomorphism, g-symmetrized against g.
Field random_band_limited_endo(const Field& g, int mode_cap, double amplitude,
                               std::uint64_t seed);

}  // namespace cauchylab
