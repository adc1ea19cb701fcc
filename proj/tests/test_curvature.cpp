#include "doctest.h"

#include <cmath>

#include "cauchylab/curvature.hpp"
#include "cauchylab/spectral.hpp"
#include "oracles.hpp"

using namespace cauchylab;

namespace {

Field conformal_flat_metric(const Chart& chart,
                            const std::function<double(const std::array<double, 3>&)>& factor) {
  Field g(chart, Rank::Sym2Cov);
  std::vector<int> idx;
  for (std::size_t p = 0; p < chart.num_points(); ++p) {
    chart.point_coords(p, idx);
    std::array<double, 3> x{chart.coord(0, idx[0]), chart.coord(1, idx[1]),
                            chart.coord(2, idx[2])};
    const double c = factor(x);
    for (int i = 0; i < 3; ++i) g.at2(i, i, p) = c;
  }
  return g;
}

Field flat_metric(const Chart& chart) {
  return conformal_flat_metric(chart, [](const auto&) { return 1.0; });
}

}  // namespace

TEST_CASE("flat metric has exactly vanishing curvature") {
  Chart chart = Chart::periodic_grid(3, 8);
  CurvatureBundle c = curvature(flat_metric(chart));
  CHECK(sup_abs(c.gamma) <= 1e-14);
  CHECK(c.ricci.sup_norm() <= 1e-14);
  CHECK(c.scal.sup_norm() <= 1e-14);
}

TEST_CASE("conformally flat Christoffel: Gamma^1_11 = d_1 phi") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field g = conformal_flat_metric(
      chart, [](const std::array<double, 3>& x) { return std::exp(0.2 * std::sin(x[0])); });
  // e^{2 phi} delta with phi = 0.1 sin x1
  std::vector<double> gamma = christoffel(g);
  double err = 0.0;
  std::vector<int> idx;
  for (std::size_t p = 0; p < chart.num_points(); ++p) {
    chart.point_coords(p, idx);
    const double dphi = 0.1 * std::cos(chart.coord(0, idx[0]));
    const double got = gamma[((0 * 3 + 0) * 3 + 0) * chart.num_points() + p];
    err = std::max(err, std::abs(got - dphi));
  }
  CHECK(err <= 1e-10);
}

TEST_CASE("christoffel is symmetric in the lower indices") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field g = random_band_limited_metric(chart, 3, 0.05, 42);
  std::vector<double> gamma = christoffel(g);
  const std::size_t np = chart.num_points();
  double defect = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (std::size_t p = 0; p < np; ++p)
          defect = std::max(defect,
                            std::abs(gamma[((i * 3 + j) * 3 + k) * np + p] -
                                     gamma[((i * 3 + k) * 3 + j) * np + p]));
  CHECK(defect <= 1e-12);
}

TEST_CASE("metric compatibility: nabla g = 0 to spectral accuracy") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field g = random_band_limited_metric(chart, 3, 0.05, 11);
  std::vector<double> gamma = christoffel(g);
  const std::size_t np = chart.num_points();
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    Field dg = partial_derivative(g, i);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        for (std::size_t p = 0; p < np; ++p) {
          double v = dg.at2(j, k, p);
          for (int l = 0; l < 3; ++l)
            v -= gamma[((l * 3 + i) * 3 + j) * np + p] * g.at2(l, k, p) +
                 gamma[((l * 3 + i) * 3 + k) * np + p] * g.at2(j, l, p);
          worst = std::max(worst, std::abs(v));
        }
      }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("round SU(2) frame connection and curvature") {
  Chart chart = Chart::su2_frame();
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i) g.at2(i, i, 0) = 1.0;

  // nabla_{e_i} e_j = eps_{ijk} e_k
  std::vector<double> gamma = christoffel(g);
  auto eps = [](int i, int j, int k) -> double {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
  };
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(gamma[(k * 3 + i) * 3 + j] == doctest::Approx(eps(i, j, k)).epsilon(1e-13));

  CurvatureBundle c = curvature(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(c.ricci.at2(i, j, 0) == doctest::Approx(i == j ? 2.0 : 0.0).epsilon(1e-12));
  CHECK(c.scal.at(0, 0) == doctest::Approx(6.0).epsilon(1e-12));

  // Independent Koszul brute-force oracle agrees.
  auto oracle = oracles::koszul_su2(1.0, 1.0, 1.0);
  for (int i = 0; i < 3; ++i)
    CHECK(c.ricci.at2(i, i, 0) == doctest::Approx(oracle.ric[i][i]).epsilon(1e-13));
}

TEST_CASE("grid Ricci matches the finite-difference oracle at random points") {
  const int N = 32;
  Chart chart = Chart::periodic_grid(3, N);
  auto factor = [](const std::array<double, 3>& x) {
    return 1.0 + 0.05 * std::sin(x[0]) * std::sin(x[1]);
  };
  Field g = conformal_flat_metric(chart, factor);
  Field ric = ricci(g);

  oracles::Metric3 gfun = [&](const std::array<double, 3>& x) {
    std::array<std::array<double, 3>, 3> m{};
    const double c = factor(x);
    for (int i = 0; i < 3; ++i) m[i][i] = c;
    return m;
  };

  SplitMix64 rng(42);
  const double h = 1.0 / N;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t p = rng.next_u64() % chart.num_points();
    std::vector<int> idx;
    chart.point_coords(p, idx);
    std::array<double, 3> x{chart.coord(0, idx[0]), chart.coord(1, idx[1]),
                            chart.coord(2, idx[2])};
    auto expected = oracles::fd_ricci(gfun, x, h);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::abs(ric.at2(i, j, p) - expected[i][j]) <= 1e-6);
  }
}

TEST_CASE("Ricci is invariant under constant metric scaling") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field g = random_band_limited_metric(chart, 2, 0.05, 3);
  Field r1 = ricci(g);
  Field r2 = ricci(scale(g, 4.0));
  CHECK(sub(r1, r2).sup_norm() <= 1e-13);
}

TEST_CASE("first Bianchi identity on a band-limited metric") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field g = random_band_limited_metric(chart, 3, 0.05, 21);
  CurvatureBundle c = curvature(g);
  CHECK(c.first_bianchi_residual() <= 1e-9);
}

TEST_CASE("divergence of the identity vanishes") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field g = random_band_limited_metric(chart, 3, 0.05, 5);
  Field d = divergence(g, identity_endo(chart));
  CHECK(d.sup_norm() <= 1e-11);
}

TEST_CASE("divergence of f*Id is -df") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field g = random_band_limited_metric(chart, 2, 0.05, 6);
  Field f = random_band_limited_scalar(chart, 3, 0.5, 9);
  Field a = mul_scalar(f, identity_endo(chart));
  Field lhs = divergence(g, a);
  Field rhs = scale(differential(f), -1.0);
  CHECK(sub(lhs, rhs).sup_norm() <= 1e-9);
}

TEST_CASE("divergence product rule (divf) for random band-limited data") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field g = random_band_limited_metric(chart, 2, 0.05, 13);
  Field ginv = metric_inverse(g);
  Field f = random_band_limited_scalar(chart, 2, 0.4, 14);
  // A need not be g-symmetric for (divf); keep it exactly band-limited.
  Field a(chart, Rank::Endo);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Field s = random_band_limited_scalar(chart, 2, 0.3, 15 + 31 * (i * 3 + j));
      auto sc = s.comp(0);
      auto ac = a.comp(i * 3 + j);
      for (std::size_t p = 0; p < chart.num_points(); ++p) ac[p] = sc[p];
    }

  // delta(f A) = f delta(A) - A(grad f)  as 1-forms
  Field lhs = divergence(g, mul_scalar(f, a));
  Field rhs = mul_scalar(f, divergence(g, a));
  Field agrad = apply_endo(a, gradient(ginv, f));
  // lower A(grad f)
  const int n = 3;
  Field agrad_form(chart, Rank::OneForm);
  for (int j = 0; j < n; ++j) {
    auto oc = agrad_form.comp(j);
    for (int l = 0; l < n; ++l) {
      auto gl = g.comp(l * n + j);
      auto vc = agrad.comp(l);
      for (std::size_t p = 0; p < chart.num_points(); ++p) oc[p] += gl[p] * vc[p];
    }
  }
  Field expect = sub(rhs, agrad_form);
  CHECK(sub(lhs, expect).sup_norm() <= 1e-9);
}

TEST_CASE("contracted Bianchi: delta(g^{-1} Ric) = -(1/2) dScal") {
  Chart chart = Chart::periodic_grid(3, 32);
  for (std::uint64_t seed : {42ull, 43ull}) {
    Field g = random_band_limited_metric(chart, 2, 0.03, seed);
    Field ginv = metric_inverse(g);
    CurvatureBundle c = curvature(g);
    Field lhs = divergence(g, raise(ginv, c.ricci));
    Field rhs = scale(differential(c.scal), -0.5);
    CHECK(sub(lhs, rhs).sup_norm() <= 1e-8);
  }
}

TEST_CASE("divergence-variation identity: static family vanishes") {
  Chart chart = Chart::periodic_grid(3, 8);
  Field g0 = random_band_limited_metric(chart, 2, 0.05, 31);
  Field a0 = random_band_limited_endo(g0, 2, 0.2, 32);
  auto gfam = [&](double) { return g0; };
  auto afam = [&](double) { return a0; };
  auto r = divergence_variation_residual(gfam, afam, 0.0, 1e-3);
  CHECK(r.div_variation <= 1e-12);
  CHECK(r.volume <= 1e-12);
}

TEST_CASE("divergence-variation identity: (1+t)^2 delta with A = Id") {
  Chart chart = Chart::periodic_grid(3, 8);
  auto gfam = [&](double t) {
    Field g(chart, Rank::Sym2Cov);
    for (int i = 0; i < 3; ++i)
      for (std::size_t p = 0; p < chart.num_points(); ++p)
        g.at2(i, i, p) = (1 + t) * (1 + t);
    return g;
  };
  auto afam = [&](double) { return identity_endo(chart); };
  const double h = 1e-2;
  auto r = divergence_variation_residual(gfam, afam, 0.0, h);
  CHECK(r.div_variation <= 1.0 * h * h);
  CHECK(r.volume <= 10.0 * h * h);
}

TEST_CASE("divergence-variation identity: analytic family converges at order 2") {
  Chart chart = Chart::periodic_grid(3, 16);
  auto gfam = [&](double t) {
    Field g(chart, Rank::Sym2Cov);
    std::vector<int> idx;
    for (std::size_t p = 0; p < chart.num_points(); ++p) {
      chart.point_coords(p, idx);
      const double c = 1.0 + 0.1 * t * std::sin(chart.coord(0, idx[0]));
      for (int i = 0; i < 3; ++i) g.at2(i, i, p) = c;
    }
    return g;
  };

  SUBCASE("A_t = (1+t) Id: identity parts cancel, volume carries the order") {
    auto afam = [&](double t) { return scale(identity_endo(chart), 1.0 + t); };
    std::vector<double> vol_res;
    for (double h : {4e-2, 2e-2, 1e-2}) {
      auto r = divergence_variation_residual(gfam, afam, 0.2, h);
      CHECK(r.div_variation <= 1e-11);
      vol_res.push_back(r.volume);
    }
    CHECK(convergence_order(vol_res) >= 1.9);
  }

  SUBCASE("A_t with anisotropic part: the identity residual itself is O(h^2)") {
    auto afam = [&](double t) {
      Field a(chart, Rank::Endo);
      for (std::size_t p = 0; p < chart.num_points(); ++p) {
        a.at2(0, 0, p) = (1 + t) * 1.0;
        a.at2(1, 1, p) = (1 + t) * 2.0;
        a.at2(2, 2, p) = (1 + t) * 3.0;
      }
      return a;
    };
    std::vector<double> res;
    for (double h : {4e-2, 2e-2, 1e-2}) {
      auto r = divergence_variation_residual(gfam, afam, 0.2, h);
      res.push_back(r.div_variation);
      CHECK(r.div_variation > 0.0);
    }
    CHECK(convergence_order(res) >= 1.9);
  }
}
