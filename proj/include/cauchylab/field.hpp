#pragma once

#include <span>
#include <string>
#include <vector>

#include "cauchylab/chart.hpp"

namespace cauchylab {

/// Valence of a tensor field. Two-index objects store all n^2 components
/// row-major; the Sym* ranks promise symmetry (enforced where constructed).
enum class Rank { Scalar, OneForm, Vector, Sym2Cov, Sym2Con, Endo };

int rank_ncomp(Rank r, int n);
std::string rank_tag(Rank r);
Rank rank_from_tag(const std::string& tag);

/// A tensor field on a chart. Storage is component-major: comp(c) is the
/// contiguous plane of component c over all grid points in row-major point
/// order (frame charts have a single point). Fields are plain values;
/// operations on them are pure functions.
class Field {
public:
  Field(Chart chart, Rank rank, double init = 0.0);

  const Chart& chart() const { return chart_; }
  Rank rank() const { return rank_; }
  int dim() const { return chart_.dim(); }
  int ncomp() const { return ncomp_; }
  std::size_t points() const { return chart_.num_points(); }

  double& at(int c, std::size_t p) { return data_[static_cast<std::size_t>(c) * points() + p]; }
  double at(int c, std::size_t p) const { return data_[static_cast<std::size_t>(c) * points() + p]; }

  /// Two-index accessor (Sym2Cov / Sym2Con / Endo). For Endo the first
  /// index is the raised one: at2(i, j, p) = A^i_j.
  double& at2(int i, int j, std::size_t p) { return at(i * dim() + j, p); }
  double at2(int i, int j, std::size_t p) const { return at(i * dim() + j, p); }

  std::span<double> comp(int c) { return {data_.data() + static_cast<std::size_t>(c) * points(), points()}; }
  std::span<const double> comp(int c) const { return {data_.data() + static_cast<std::size_t>(c) * points(), points()}; }

  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  double sup_norm() const;
  bool finite() const;

private:
  Chart chart_;
  Rank rank_;
  int ncomp_;
  std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Pointwise algebra. Chart and rank compatibility is checked and mismatches
// throw Error.

Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, double s);
void axpy(Field& y, double a, const Field& x);  // y += a*x

/// Pointwise product by a scalar field (any rank for b).
Field mul_scalar(const Field& s, const Field& b);

/// Endomorphism composition (A o B)^i_j = A^i_k B^k_j.
Field compose(const Field& a, const Field& b);

/// Endomorphism applied to a vector field: (A v)^i = A^i_j v^j.
Field apply_endo(const Field& a, const Field& v);

/// Trace of an endomorphism field.
Field trace_endo(const Field& a);

/// Full contraction of two endomorphism fields: tr(A o B).
Field contract_endo(const Field& a, const Field& b);

/// Metric trace of a covariant 2-tensor: g^{ij} h_{ij}.
Field trace_with_metric(const Field& ginv, const Field& h);

/// Raise one index of a sym-2-cov with g^{-1}: W^i_j = g^{ik} h_{kj}.
Field raise(const Field& ginv, const Field& h);

/// Lower the upper index of an endomorphism: h_{ij} = g_{ik} A^k_j.
Field lower(const Field& g, const Field& a);

/// 1-form with index raised: v^i = g^{ij} w_j.
Field raise_form(const Field& ginv, const Field& w);

/// g-norm field of a one-form: sqrt(g^{ij} w_i w_j) pointwise.
Field form_norm(const Field& ginv, const Field& w);

Field symmetrize(const Field& h);

/// Max over points of |h_{ij} - h_{ji}|.
double symmetry_defect(const Field& h);

/// Max over points of |g_{ik} W^k_j - g_{jk} W^k_i| (g-self-adjointness).
double g_symmetry_defect(const Field& g, const Field& w);

/// Symmetrize an endomorphism with respect to g: (W + g^{-1} W^T g)/2.
Field g_symmetrize(const Field& g, const Field& ginv, const Field& w);

Field identity_endo(const Chart& chart);
Field constant_scalar(const Chart& chart, double v);

/// Pointwise inverse of a positive-definite sym-2-cov field. Throws Error
/// naming the grid point and failing leading minor when not SPD.
Field metric_inverse(const Field& g);

/// sqrt(det g) pointwise.
Field volume_density(const Field& g);

/// Volume-weighted L2 norm: sqrt( sum w^2 vol / sum vol ) where w is the
/// pointwise magnitude (scalar: |f|; one-form: g-norm).
double l2_norm_scalar(const Field& f, const Field& vol);
double l2_norm_form(const Field& w, const Field& ginv, const Field& vol);

}  // namespace cauchylab
