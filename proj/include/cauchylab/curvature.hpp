#pragma once

#include <functional>

#include "cauchylab/field.hpp"

namespace cauchylab {

/// Christoffel symbols / frame connection coefficients Gamma^i_{jk} and the
/// curvature tensors derived from them. Component layout of gamma is
/// (i*n + j)*n + k point-major planes; riemann is R^l_{ijk} meaning
/// R(e_i, e_j) e_k = R^l_{ijk} e_l, layout ((l*n + i)*n + j)*n + k.
struct CurvatureBundle {
  Chart chart;
  std::vector<double> gamma;
  std::vector<double> riemann;
  Field ricci;        // Ric(e_i, e_j), sym-2-cov
  Field scal;         // scalar curvature
  Field vol_density;  // sqrt(det g)

  double gamma_at(int i, int j, int k, std::size_t p) const {
    const int n = chart.dim();
    return gamma[(static_cast<std::size_t>((i * n + j) * n + k)) * chart.num_points() + p];
  }
  double riemann_at(int l, int i, int j, int k, std::size_t p) const {
    const int n = chart.dim();
    return riemann[(static_cast<std::size_t>(((l * n + i) * n + j) * n + k)) *
                       chart.num_points() + p];
  }

  /// Max over points of |R^l_{ijk} + R^l_{jki} + R^l_{kij}| (first Bianchi).
  double first_bianchi_residual() const;
};

/// Gamma^i_{jk} = (1/2) g^{il} (d_k g_{jl} + d_j g_{lk} - d_l g_{jk}) on
/// grids; the structure-constant Koszul expression on frame charts. The
/// returned vector has the CurvatureBundle gamma layout.
std::vector<double> christoffel(const Field& g);
std::vector<double> christoffel(const Field& g, const Field& ginv);

/// Full curvature of a metric (Christoffel, Riemann, Ricci, Scal, volume).
CurvatureBundle curvature(const Field& g);

Field ricci(const Field& g);
Field scalar_curvature(const Field& g);

/// Covariant derivative of an endomorphism field:
/// (nabla_i A)^l_k = d_i A^l_k + Gamma^l_{im} A^m_k - Gamma^m_{ik} A^l_m.
/// Returned layout: ((i*n + l)*n + k) planes (direction-major).
std::vector<double> covariant_derivative_endo(const Field& g,
                                              const std::vector<double>& gamma,
                                              const Field& a);

/// Divergence of an endomorphism field (1-form):
/// delta(A)(X) = -sum_i g((nabla_{e_i} A)(e_i), X) over any g-orthonormal
/// frame; evaluated as the equivalent contraction -g^{ik} (nabla_i A)^l_k g_{lj}.
Field divergence(const Field& g, const Field& a);
Field divergence(const Field& g, const Field& ginv,
                 const std::vector<double>& gamma, const Field& a);

/// Exterior derivative of a scalar (1-form of partials; zero on frames).
Field differential(const Field& f);

/// Gradient vector: g^{ij} d_j f.
Field gradient(const Field& ginv, const Field& f);

/// delta(df): the (negative-spectrum) Laplacian contraction used by the
/// constraint-propagation system; delta on 1-forms is
/// delta(w) = -g^{ij} (d_i w_j - Gamma^k_{ij} w_k).
Field divergence_form(const Field& ginv, const std::vector<double>& gamma,
                      const Field& w);

/// One-parameter families for the variation identities.
using MetricFamily = std::function<Field(double)>;
using EndoFamily = std::function<Field(double)>;

struct VariationResidual {
  double div_variation;  // |d/dt delta^{g_t} A_t - RHS|_inf
  double volume;         // |d/dt vol_t + tr(W_t) vol_t|_inf
  double max() const { return div_variation > volume ? div_variation : volume; }
};

/// Central-difference check (step h) of the divergence-variation identity
///   d/dt (delta^{g_t} A_t)(X) = g(A(grad tr W), X) - <nabla_X W, A> +
///                               (delta^{g_t} Adot)(X),
/// with W_t = -(1/2) g_t^{-1} gdot_t, together with the volume identity
///   d/dt vol_t = -tr(W_t) vol_t.
VariationResidual divergence_variation_residual(const MetricFamily& g_of_t,
                                                const EndoFamily& a_of_t,
                                                double t0, double h);

}  // namespace cauchylab
