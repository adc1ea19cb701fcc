#include "cauchylab/curvature.hpp"

#include <cmath>

#include "cauchylab/spectral.hpp"

namespace cauchylab {

namespace {

std::size_t g3(const Chart& c, int i, int j, int k) {
  const int n = c.dim();
  return static_cast<std::size_t>((i * n + j) * n + k) * c.num_points();
}

std::size_t g4(const Chart& c, int l, int i, int j, int k) {
  const int n = c.dim();
  return static_cast<std::size_t>(((l * n + i) * n + j) * n + k) * c.num_points();
}

}  // namespace

double CurvatureBundle::first_bianchi_residual() const {
  const int n = chart.dim();
  const std::size_t np = chart.num_points();
  double m = 0.0;
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (std::size_t p = 0; p < np; ++p) {
            const double s = riemann[g4(chart, l, i, j, k) + p] +
                             riemann[g4(chart, l, j, k, i) + p] +
                             riemann[g4(chart, l, k, i, j) + p];
            m = std::max(m, std::abs(s));
          }
  return m;
}

std::vector<double> christoffel(const Field& g) {
  return christoffel(g, metric_inverse(g));
}

std::vector<double> christoffel(const Field& g, const Field& ginv) {
  const Chart& chart = g.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();
  std::vector<double> gamma(static_cast<std::size_t>(n) * n * n * np, 0.0);

  if (chart.is_grid()) {
    // dg[a] = spectral d_a g
    std::vector<Field> dg;
    dg.reserve(n);
    for (int a = 0; a < n; ++a) dg.push_back(partial_derivative(g, a));

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double* out = gamma.data() + g3(chart, i, j, k);
          for (int l = 0; l < n; ++l) {
            auto gi = ginv.comp(i * n + l);
            auto t1 = dg[k].comp(j * n + l);
            auto t2 = dg[j].comp(l * n + k);
            auto t3 = dg[l].comp(j * n + k);
            for (std::size_t p = 0; p < np; ++p)
              out[p] += 0.5 * gi[p] * (t1[p] + t2[p] - t3[p]);
          }
        }
  } else {
    // Koszul with structure constants (inner products of invariant fields
    // are constant, so only bracket terms survive):
    // 2 g(nabla_{e_i} e_j, e_l) = c^m_{ij} g_{ml} - c^m_{jl} g_{mi}
    //                           + c^m_{li} g_{mj}
    std::vector<double> low(static_cast<std::size_t>(n) * n * n * np, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double* out = low.data() + g3(chart, i, j, l);
          for (std::size_t p = 0; p < np; ++p) {
            double s = 0.0;
            for (int m = 0; m < n; ++m)
              s += chart.structure(m, i, j) * g.at2(m, l, p) -
                   chart.structure(m, j, l) * g.at2(m, i, p) +
                   chart.structure(m, l, i) * g.at2(m, j, p);
            out[p] = 0.5 * s;
          }
        }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double* out = gamma.data() + g3(chart, k, i, j);
          for (int l = 0; l < n; ++l) {
            auto gi = ginv.comp(k * n + l);
            const double* lw = low.data() + g3(chart, i, j, l);
            for (std::size_t p = 0; p < np; ++p) out[p] += gi[p] * lw[p];
          }
        }
  }
  return gamma;
}

namespace {

// R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//           + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
//           [- c^m_{ij} Gamma^l_{mk} on frame charts]
std::vector<double> riemann_tensor(const Field& g, const std::vector<double>& gamma) {
  const Chart& chart = g.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();
  std::vector<double> R(static_cast<std::size_t>(n) * n * n * n * np, 0.0);

  std::vector<double> dgamma;  // d_a Gamma^l_{jk}, layout (a; l,j,k)
  if (chart.is_grid()) {
    dgamma.resize(static_cast<std::size_t>(n) * n * n * n * np);
    for (int a = 0; a < n; ++a)
      for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            std::span<const double> in(gamma.data() + g3(chart, l, j, k), np);
            std::span<double> out(dgamma.data() + g4(chart, a, l, j, k), np);
            partial_derivative_plane(chart, in, out, a);
          }
  }

  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double* out = R.data() + g4(chart, l, i, j, k);
          if (chart.is_grid()) {
            const double* d1 = dgamma.data() + g4(chart, i, l, j, k);
            const double* d2 = dgamma.data() + g4(chart, j, l, i, k);
            for (std::size_t p = 0; p < np; ++p) out[p] = d1[p] - d2[p];
          }
          for (int m = 0; m < n; ++m) {
            const double* a1 = gamma.data() + g3(chart, l, i, m);
            const double* b1 = gamma.data() + g3(chart, m, j, k);
            const double* a2 = gamma.data() + g3(chart, l, j, m);
            const double* b2 = gamma.data() + g3(chart, m, i, k);
            for (std::size_t p = 0; p < np; ++p)
              out[p] += a1[p] * b1[p] - a2[p] * b2[p];
          }
          if (!chart.is_grid()) {
            for (int m = 0; m < n; ++m) {
              const double cmij = chart.structure(m, i, j);
              if (cmij == 0.0) continue;
              const double* gm = gamma.data() + g3(chart, l, m, k);
              for (std::size_t p = 0; p < np; ++p) out[p] -= cmij * gm[p];
            }
          }
        }
  return R;
}

}  // namespace

CurvatureBundle curvature(const Field& g) {
  if (g.rank() != Rank::Sym2Cov) throw Error("curvature: expected sym-2-cov metric");
  const Chart& chart = g.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();

  Field ginv = metric_inverse(g);
  CurvatureBundle out{chart,
                      christoffel(g, ginv),
                      {},
                      Field(chart, Rank::Sym2Cov),
                      Field(chart, Rank::Scalar),
                      volume_density(g)};
  out.riemann = riemann_tensor(g, out.gamma);

  // Ric(e_j, e_k) = sum_i R^i_{ijk}
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      auto rc = out.ricci.comp(j * n + k);
      for (int i = 0; i < n; ++i) {
        const double* rr = out.riemann.data() + g4(chart, i, i, j, k);
        for (std::size_t p = 0; p < np; ++p) rc[p] += rr[p];
      }
    }

  out.scal = trace_with_metric(ginv, out.ricci);
  return out;
}

Field ricci(const Field& g) { return curvature(g).ricci; }

Field scalar_curvature(const Field& g) { return curvature(g).scal; }

std::vector<double> covariant_derivative_endo(const Field& g,
                                              const std::vector<double>& gamma,
                                              const Field& a) {
  if (a.rank() != Rank::Endo) throw Error("covariant_derivative_endo: expected endomorphism");
  const Chart& chart = g.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();
  std::vector<double> na(static_cast<std::size_t>(n) * n * n * np, 0.0);

  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        double* out = na.data() + g3(chart, i, l, k);
        if (chart.is_grid()) {
          std::span<double> sp(out, np);
          partial_derivative_plane(chart, a.comp(l * n + k), sp, i);
        }
        for (int m = 0; m < n; ++m) {
          const double* g1 = gamma.data() + g3(chart, l, i, m);
          auto am = a.comp(m * n + k);
          const double* g2 = gamma.data() + g3(chart, m, i, k);
          auto al = a.comp(l * n + m);
          for (std::size_t p = 0; p < np; ++p)
            out[p] += g1[p] * am[p] - g2[p] * al[p];
        }
      }
  return na;
}

Field divergence(const Field& g, const Field& a) {
  Field ginv = metric_inverse(g);
  return divergence(g, ginv, christoffel(g, ginv), a);
}

Field divergence(const Field& g, const Field& ginv,
                 const std::vector<double>& gamma, const Field& a) {
  const Chart& chart = g.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();
  std::vector<double> na = covariant_derivative_endo(g, gamma, a);

  // delta(A)_j = -g^{ik} (nabla_i A)^l_k g_{lj}; equals the orthonormal-frame
  // sum -sum_a g((nabla_{e_a} A)(e_a), X) for any orthonormalization.
  Field out(chart, Rank::OneForm);
  for (int j = 0; j < n; ++j) {
    auto oc = out.comp(j);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        auto gik = ginv.comp(i * n + k);
        for (int l = 0; l < n; ++l) {
          const double* nav = na.data() + g3(chart, i, l, k);
          auto glj = g.comp(l * n + j);
          for (std::size_t p = 0; p < np; ++p)
            oc[p] -= gik[p] * nav[p] * glj[p];
        }
      }
  }
  return out;
}

Field differential(const Field& f) {
  if (f.rank() != Rank::Scalar) throw Error("differential: expected scalar");
  const Chart& chart = f.chart();
  Field out(chart, Rank::OneForm);
  if (!chart.is_grid()) return out;  // invariant functions are constant
  for (int a = 0; a < chart.dim(); ++a)
    partial_derivative_plane(chart, f.comp(0), out.comp(a), a);
  return out;
}

Field gradient(const Field& ginv, const Field& f) {
  return raise_form(ginv, differential(f));
}

Field divergence_form(const Field& ginv, const std::vector<double>& gamma,
                      const Field& w) {
  if (w.rank() != Rank::OneForm) throw Error("divergence_form: expected 1-form");
  const Chart& chart = w.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();

  // delta(w) = -g^{ij} ( d_i w_j - Gamma^k_{ij} w_k )
  Field out(chart, Rank::Scalar);
  auto oc = out.comp(0);
  std::vector<double> dwj(np);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto gij = ginv.comp(i * n + j);
      if (chart.is_grid()) {
        std::span<double> sp(dwj.data(), np);
        partial_derivative_plane(chart, w.comp(j), sp, i);
        for (std::size_t p = 0; p < np; ++p) oc[p] -= gij[p] * dwj[p];
      }
      for (int k = 0; k < n; ++k) {
        const double* gk = gamma.data() + g3(chart, k, i, j);
        auto wk = w.comp(k);
        for (std::size_t p = 0; p < np; ++p) oc[p] += gij[p] * gk[p] * wk[p];
      }
    }
  return out;
}

VariationResidual divergence_variation_residual(const MetricFamily& g_of_t,
                                                const EndoFamily& a_of_t,
                                                double t0, double h) {
  if (!(h > 0.0)) throw Error("divergence_variation_residual: h must be positive");
  Field gm = g_of_t(t0 - h), gp = g_of_t(t0 + h), g0 = g_of_t(t0);
  Field am = a_of_t(t0 - h), ap = a_of_t(t0 + h), a0 = a_of_t(t0);

  const Chart& chart = g0.chart();
  const int n = chart.dim();
  const std::size_t np = chart.num_points();

  // LHS: centered difference of delta^{g_t} A_t.
  Field div_p = divergence(gp, ap);
  Field div_m = divergence(gm, am);
  Field lhs = scale(sub(div_p, div_m), 1.0 / (2.0 * h));

  // Families' time derivatives by the same centered stencil.
  Field gdot = scale(sub(gp, gm), 1.0 / (2.0 * h));
  Field adot = scale(sub(ap, am), 1.0 / (2.0 * h));

  Field ginv = metric_inverse(g0);
  std::vector<double> gamma = christoffel(g0, ginv);
  Field w = scale(raise(ginv, gdot), -0.5);  // W_t = -(1/2) g^{-1} gdot

  // RHS term 1: g(A(grad tr W), X)
  Field trw = trace_endo(w);
  Field grad_trw = gradient(ginv, trw);
  Field a_grad = apply_endo(a0, grad_trw);
  Field term1(chart, Rank::OneForm);
  for (int j = 0; j < n; ++j) {
    auto oc = term1.comp(j);
    for (int l = 0; l < n; ++l) {
      auto gc = g0.comp(l * n + j);
      auto vc = a_grad.comp(l);
      for (std::size_t p = 0; p < np; ++p) oc[p] += gc[p] * vc[p];
    }
  }

  // RHS term 2: -<nabla_X W, A> = -tr((nabla_X W) o A) for g-symmetric W, A.
  std::vector<double> nw = covariant_derivative_endo(g0, gamma, w);
  Field term2(chart, Rank::OneForm);
  for (int x = 0; x < n; ++x) {
    auto oc = term2.comp(x);
    for (int l = 0; l < n; ++l)
      for (int m = 0; m < n; ++m) {
        const double* nwc = nw.data() + g3(chart, x, l, m);
        auto ac = a0.comp(m * n + l);
        for (std::size_t p = 0; p < np; ++p) oc[p] -= nwc[p] * ac[p];
      }
  }

  // RHS term 3: delta^{g_0}(Adot).
  Field term3 = divergence(g0, ginv, gamma, adot);

  Field rhs = add(add(term1, term2), term3);
  const double div_res = sub(lhs, rhs).sup_norm();

  // Volume identity: d/dt vol_t = -tr(W_t) vol_t.
  Field vol_p = volume_density(gp);
  Field vol_m = volume_density(gm);
  Field vol_dot = scale(sub(vol_p, vol_m), 1.0 / (2.0 * h));
  Field vol_rhs = mul_scalar(trw, volume_density(g0));
  const double vol_res = add(vol_dot, vol_rhs).sup_norm();

  return {div_res, vol_res};
}

}  // namespace cauchylab
