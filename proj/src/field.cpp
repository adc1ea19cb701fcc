#include "cauchylab/field.hpp"

#include <cmath>

#include "cauchylab/smallmat.hpp"

namespace cauchylab {

int rank_ncomp(Rank r, int n) {
  switch (r) {
    case Rank::Scalar: return 1;
    case Rank::OneForm:
    case Rank::Vector: return n;
    case Rank::Sym2Cov:
    case Rank::Sym2Con:
    case Rank::Endo: return n * n;
  }
  throw Error("rank_ncomp: bad rank");
}

std::string rank_tag(Rank r) {
  switch (r) {
    case Rank::Scalar: return "scalar";
    case Rank::OneForm: return "1-form";
    case Rank::Vector: return "vector";
    case Rank::Sym2Cov: return "sym-2-cov";
    case Rank::Sym2Con: return "sym-2-con";
    case Rank::Endo: return "endomorphism";
  }
  throw Error("rank_tag: bad rank");
}

Rank rank_from_tag(const std::string& tag) {
  if (tag == "scalar") return Rank::Scalar;
  if (tag == "1-form") return Rank::OneForm;
  if (tag == "vector") return Rank::Vector;
  if (tag == "sym-2-cov") return Rank::Sym2Cov;
  if (tag == "sym-2-con") return Rank::Sym2Con;
  if (tag == "endomorphism") return Rank::Endo;
  throw Error("unknown rank tag: " + tag);
}

Field::Field(Chart chart, Rank rank, double init)
    : chart_(std::move(chart)),
      rank_(rank),
      ncomp_(rank_ncomp(rank, chart_.dim())),
      data_(static_cast<std::size_t>(ncomp_) * chart_.num_points(), init) {}

double Field::sup_norm() const { return sup_abs(data_); }

bool Field::finite() const { return all_finite(data_); }

namespace {

void require_same_chart(const Field& a, const Field& b, const char* op) {
  if (a.chart() != b.chart())
    throw Error(std::string(op) + ": chart mismatch (" + a.chart().describe() +
                " vs " + b.chart().describe() + ")");
}

void require_rank(const Field& a, Rank r, const char* op) {
  if (a.rank() != r)
    throw Error(std::string(op) + ": rank mismatch, got " + rank_tag(a.rank()));
}

void require_two_index(const Field& a, const char* op) {
  if (a.rank() != Rank::Sym2Cov && a.rank() != Rank::Sym2Con && a.rank() != Rank::Endo)
    throw Error(std::string(op) + ": expected a two-index field, got " + rank_tag(a.rank()));
}

}  // namespace

Field add(const Field& a, const Field& b) {
  require_same_chart(a, b, "add");
  if (a.rank() != b.rank()) throw Error("add: rank mismatch");
  Field out = a;
  auto ob = b.raw();
  auto oo = out.raw();
  for (std::size_t i = 0; i < oo.size(); ++i) oo[i] += ob[i];
  return out;
}

Field sub(const Field& a, const Field& b) {
  require_same_chart(a, b, "sub");
  if (a.rank() != b.rank()) throw Error("sub: rank mismatch");
  Field out = a;
  auto ob = b.raw();
  auto oo = out.raw();
  for (std::size_t i = 0; i < oo.size(); ++i) oo[i] -= ob[i];
  return out;
}

Field scale(const Field& a, double s) {
  Field out = a;
  for (double& x : out.raw()) x *= s;
  return out;
}

void axpy(Field& y, double a, const Field& x) {
  require_same_chart(y, x, "axpy");
  if (y.rank() != x.rank()) throw Error("axpy: rank mismatch");
  auto yy = y.raw();
  auto xx = x.raw();
  for (std::size_t i = 0; i < yy.size(); ++i) yy[i] += a * xx[i];
}

Field mul_scalar(const Field& s, const Field& b) {
  require_same_chart(s, b, "mul_scalar");
  require_rank(s, Rank::Scalar, "mul_scalar");
  Field out = b;
  const std::size_t np = b.points();
  for (int c = 0; c < b.ncomp(); ++c) {
    auto oc = out.comp(c);
    auto sc = s.comp(0);
    for (std::size_t p = 0; p < np; ++p) oc[p] *= sc[p];
  }
  return out;
}

Field compose(const Field& a, const Field& b) {
  require_same_chart(a, b, "compose");
  require_rank(a, Rank::Endo, "compose");
  require_rank(b, Rank::Endo, "compose");
  const int n = a.dim();
  const std::size_t np = a.points();
  Field out(a.chart(), Rank::Endo);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto oc = out.comp(i * n + j);
        auto ac = a.comp(i * n + k);
        auto bc = b.comp(k * n + j);
        for (std::size_t p = 0; p < np; ++p) oc[p] += ac[p] * bc[p];
      }
  return out;
}

Field apply_endo(const Field& a, const Field& v) {
  require_same_chart(a, v, "apply_endo");
  require_rank(a, Rank::Endo, "apply_endo");
  require_rank(v, Rank::Vector, "apply_endo");
  const int n = a.dim();
  const std::size_t np = a.points();
  Field out(a.chart(), Rank::Vector);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto oc = out.comp(i);
      auto ac = a.comp(i * n + j);
      auto vc = v.comp(j);
      for (std::size_t p = 0; p < np; ++p) oc[p] += ac[p] * vc[p];
    }
  return out;
}

Field trace_endo(const Field& a) {
  require_rank(a, Rank::Endo, "trace_endo");
  const int n = a.dim();
  Field out(a.chart(), Rank::Scalar);
  auto oc = out.comp(0);
  for (int i = 0; i < n; ++i) {
    auto ac = a.comp(i * n + i);
    for (std::size_t p = 0; p < a.points(); ++p) oc[p] += ac[p];
  }
  return out;
}

Field contract_endo(const Field& a, const Field& b) {
  require_same_chart(a, b, "contract_endo");
  require_rank(a, Rank::Endo, "contract_endo");
  require_rank(b, Rank::Endo, "contract_endo");
  const int n = a.dim();
  Field out(a.chart(), Rank::Scalar);
  auto oc = out.comp(0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      auto ac = a.comp(i * n + k);
      auto bc = b.comp(k * n + i);
      for (std::size_t p = 0; p < a.points(); ++p) oc[p] += ac[p] * bc[p];
    }
  return out;
}

Field trace_with_metric(const Field& ginv, const Field& h) {
  require_same_chart(ginv, h, "trace_with_metric");
  require_rank(ginv, Rank::Sym2Con, "trace_with_metric");
  require_rank(h, Rank::Sym2Cov, "trace_with_metric");
  const int n = h.dim();
  Field out(h.chart(), Rank::Scalar);
  auto oc = out.comp(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto gc = ginv.comp(i * n + j);
      auto hc = h.comp(i * n + j);
      for (std::size_t p = 0; p < h.points(); ++p) oc[p] += gc[p] * hc[p];
    }
  return out;
}

namespace {

Field contract_first(const Field& m, const Field& h, Rank out_rank, const char* op) {
  require_same_chart(m, h, op);
  require_two_index(m, op);
  require_two_index(h, op);
  const int n = m.dim();
  Field out(m.chart(), out_rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto oc = out.comp(i * n + j);
        auto mc = m.comp(i * n + k);
        auto hc = h.comp(k * n + j);
        for (std::size_t p = 0; p < m.points(); ++p) oc[p] += mc[p] * hc[p];
      }
  return out;
}

}  // namespace

Field raise(const Field& ginv, const Field& h) {
  require_rank(ginv, Rank::Sym2Con, "raise");
  require_rank(h, Rank::Sym2Cov, "raise");
  return contract_first(ginv, h, Rank::Endo, "raise");
}

Field lower(const Field& g, const Field& a) {
  require_rank(g, Rank::Sym2Cov, "lower");
  require_rank(a, Rank::Endo, "lower");
  return contract_first(g, a, Rank::Sym2Cov, "lower");
}

Field raise_form(const Field& ginv, const Field& w) {
  require_same_chart(ginv, w, "raise_form");
  require_rank(ginv, Rank::Sym2Con, "raise_form");
  require_rank(w, Rank::OneForm, "raise_form");
  const int n = w.dim();
  Field out(w.chart(), Rank::Vector);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto oc = out.comp(i);
      auto gc = ginv.comp(i * n + j);
      auto wc = w.comp(j);
      for (std::size_t p = 0; p < w.points(); ++p) oc[p] += gc[p] * wc[p];
    }
  return out;
}

Field form_norm(const Field& ginv, const Field& w) {
  require_same_chart(ginv, w, "form_norm");
  require_rank(w, Rank::OneForm, "form_norm");
  const int n = w.dim();
  Field out(w.chart(), Rank::Scalar);
  auto oc = out.comp(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto gc = ginv.comp(i * n + j);
      auto wi = w.comp(i);
      auto wj = w.comp(j);
      for (std::size_t p = 0; p < w.points(); ++p) oc[p] += gc[p] * wi[p] * wj[p];
    }
  for (std::size_t p = 0; p < w.points(); ++p) oc[p] = std::sqrt(std::max(0.0, oc[p]));
  return out;
}

Field symmetrize(const Field& h) {
  require_two_index(h, "symmetrize");
  const int n = h.dim();
  Field out = h;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto a = out.comp(i * n + j);
      auto b = out.comp(j * n + i);
      for (std::size_t p = 0; p < h.points(); ++p) {
        const double m = 0.5 * (a[p] + b[p]);
        a[p] = m;
        b[p] = m;
      }
    }
  return out;
}

double symmetry_defect(const Field& h) {
  require_two_index(h, "symmetry_defect");
  const int n = h.dim();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto a = h.comp(i * n + j);
      auto b = h.comp(j * n + i);
      for (std::size_t p = 0; p < h.points(); ++p)
        m = std::max(m, std::abs(a[p] - b[p]));
    }
  return m;
}

double g_symmetry_defect(const Field& g, const Field& w) {
  return symmetry_defect(lower(g, w));
}

Field g_symmetrize(const Field& g, const Field& ginv, const Field& w) {
  return raise(ginv, symmetrize(lower(g, w)));
}

Field identity_endo(const Chart& chart) {
  Field out(chart, Rank::Endo);
  const int n = chart.dim();
  for (int i = 0; i < n; ++i) {
    auto oc = out.comp(i * n + i);
    for (std::size_t p = 0; p < chart.num_points(); ++p) oc[p] = 1.0;
  }
  return out;
}

Field constant_scalar(const Chart& chart, double v) {
  return Field(chart, Rank::Scalar, v);
}

Field metric_inverse(const Field& g) {
  if (g.rank() != Rank::Sym2Cov)
    throw Error("metric_inverse: expected sym-2-cov, got " + rank_tag(g.rank()));
  const int n = g.dim();
  const std::size_t np = g.points();
  Field out(g.chart(), Rank::Sym2Con);
  double gp[smallmat::kMaxDim * smallmat::kMaxDim];
  double L[smallmat::kMaxDim * smallmat::kMaxDim];
  double inv[smallmat::kMaxDim * smallmat::kMaxDim];
  for (std::size_t p = 0; p < np; ++p) {
    for (int c = 0; c < n * n; ++c) gp[c] = g.at(c, p);
    const int bad = smallmat::cholesky(n, gp, L);
    if (bad != 0)
      throw Error("metric_inverse: metric not positive definite at point " +
                  std::to_string(p) + " (leading minor " + std::to_string(bad) +
                  " non-positive)");
    smallmat::spd_inverse_from_cholesky(n, L, inv);
    for (int c = 0; c < n * n; ++c) out.at(c, p) = inv[c];
  }
  return out;
}

Field volume_density(const Field& g) {
  if (g.rank() != Rank::Sym2Cov)
    throw Error("volume_density: expected sym-2-cov");
  const int n = g.dim();
  Field out(g.chart(), Rank::Scalar);
  double gp[smallmat::kMaxDim * smallmat::kMaxDim];
  double L[smallmat::kMaxDim * smallmat::kMaxDim];
  for (std::size_t p = 0; p < g.points(); ++p) {
    for (int c = 0; c < n * n; ++c) gp[c] = g.at(c, p);
    const int bad = smallmat::cholesky(n, gp, L);
    if (bad != 0)
      throw Error("volume_density: metric not positive definite at point " +
                  std::to_string(p));
    double d = 1.0;
    for (int i = 0; i < n; ++i) d *= L[i * n + i];
    out.at(0, p) = d;
  }
  return out;
}

double l2_norm_scalar(const Field& f, const Field& vol) {
  double num = 0.0, den = 0.0;
  auto fc = f.comp(0);
  auto vc = vol.comp(0);
  for (std::size_t p = 0; p < f.points(); ++p) {
    num += fc[p] * fc[p] * vc[p];
    den += vc[p];
  }
  return den > 0 ? std::sqrt(num / den) : 0.0;
}

double l2_norm_form(const Field& w, const Field& ginv, const Field& vol) {
  Field mag = form_norm(ginv, w);
  return l2_norm_scalar(mag, vol);
}

}  // namespace cauchylab
