#include "doctest.h"

#include <cmath>

#include "cauchylab/chart.hpp"
#include "cauchylab/field.hpp"
#include "cauchylab/spectral.hpp"
#include "cauchylab/util.hpp"

using namespace cauchylab;

namespace {

Chart t1(int N = 32) { return Chart::periodic_grid(1, N); }
Chart t3(int N = 8) { return Chart::periodic_grid(3, N); }

Field scalar_from(const Chart& chart, double (*fn)(double)) {
  Field f(chart, Rank::Scalar);
  auto c = f.comp(0);
  for (std::size_t p = 0; p < chart.num_points(); ++p)
    c[p] = fn(chart.coord(0, static_cast<int>(p)));
  return f;
}

}  // namespace

TEST_CASE("spectral derivative of sin x is cos x") {
  Chart chart = t1();
  Field f = scalar_from(chart, [](double x) { return std::sin(x); });
  Field df = partial_derivative(f, 0);
  double err = 0.0;
  for (std::size_t p = 0; p < chart.num_points(); ++p)
    err = std::max(err, std::abs(df.at(0, p) - std::cos(chart.coord(0, static_cast<int>(p)))));
  CHECK(err <= 1e-12);
}

TEST_CASE("spectral derivative of a constant is exactly zero") {
  Chart chart = t3();
  Field f = constant_scalar(chart, 3.25);
  Field df = partial_derivative(f, 1);
  CHECK(df.sup_norm() <= 1e-15);
}

TEST_CASE("spectral derivative of sin 3x is 3 cos 3x") {
  Chart chart = t1();
  Field f = scalar_from(chart, [](double x) { return std::sin(3.0 * x); });
  Field df = partial_derivative(f, 0);
  double err = 0.0;
  for (std::size_t p = 0; p < chart.num_points(); ++p)
    err = std::max(err, std::abs(df.at(0, p) -
                                 3.0 * std::cos(3.0 * chart.coord(0, static_cast<int>(p)))));
  CHECK(err <= 1e-12);
}

TEST_CASE("partial derivatives commute on band-limited fields") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field f = random_band_limited_scalar(chart, 4, 1.0, 42);
  Field dxy = partial_derivative(partial_derivative(f, 0), 1);
  Field dyx = partial_derivative(partial_derivative(f, 1), 0);
  CHECK(sub(dxy, dyx).sup_norm() <= 1e-12);
}

TEST_CASE("spectral product rule (Leibniz) at band limit") {
  Chart chart = Chart::periodic_grid(3, 32);
  Field f = random_band_limited_scalar(chart, 5, 1.0, 7);
  Field g = random_band_limited_scalar(chart, 5, 1.0, 8);
  Field fg = mul_scalar(f, g);
  Field lhs = partial_derivative(fg, 2);
  Field rhs = add(mul_scalar(f, partial_derivative(g, 2)),
                  mul_scalar(g, partial_derivative(f, 2)));
  CHECK(sub(lhs, rhs).sup_norm() <= 1e-10);
}

TEST_CASE("partial_derivative rejects frame charts") {
  Chart chart = Chart::su2_frame();
  Field f(chart, Rank::Scalar, 1.0);
  CHECK_THROWS_AS(partial_derivative(f, 0), Error);
}

TEST_CASE("metric_inverse: identity and constant diagonal") {
  Chart chart = t3();
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(i, i, p) = 1.0;
  Field ginv = metric_inverse(g);
  CHECK(sub(ginv, Field(g.chart(), Rank::Sym2Con)).sup_norm() != 0.0);
  for (int i = 0; i < 3; ++i)
    CHECK(ginv.at2(i, i, 0) == doctest::Approx(1.0).epsilon(1e-14));

  g.at2(0, 0, 0) = 4.0;
  for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(0, 0, p) = 4.0;
  ginv = metric_inverse(g);
  CHECK(ginv.at2(0, 0, 3) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ginv.at2(1, 1, 3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("metric_inverse of conformal factor is the scalar reciprocal") {
  Chart chart = Chart::periodic_grid(3, 16);
  Field g(chart, Rank::Sym2Cov);
  std::vector<int> idx;
  for (std::size_t p = 0; p < chart.num_points(); ++p) {
    chart.point_coords(p, idx);
    const double c = 1.0 + 0.1 * std::sin(chart.coord(0, idx[0]));
    for (int i = 0; i < 3; ++i) g.at2(i, i, p) = c;
  }
  Field ginv = metric_inverse(g);
  SplitMix64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t p = rng.next_u64() % chart.num_points();
    chart.point_coords(p, idx);
    const double c = 1.0 + 0.1 * std::sin(chart.coord(0, idx[0]));
    for (int i = 0; i < 3; ++i)
      CHECK(ginv.at2(i, i, p) == doctest::Approx(1.0 / c).epsilon(1e-12));
  }
  // g . g^{-1} = Id pointwise
  Field prod = raise(ginv, g);
  Field id = identity_endo(chart);
  CHECK(sub(prod, id).sup_norm() <= 1e-12);
}

TEST_CASE("metric_inverse reports the failing point and leading minor") {
  Chart chart = t3();
  Field g(chart, Rank::Sym2Cov);
  for (int i = 0; i < 3; ++i)
    for (std::size_t p = 0; p < chart.num_points(); ++p) g.at2(i, i, p) = 1.0;
  g.at2(1, 1, 5) = -2.0;  // break SPD at point 5, second minor
  try {
    (void)metric_inverse(g);
    FAIL("expected Error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("point 5") != std::string::npos);
    CHECK(msg.find("minor 2") != std::string::npos);
  }
}

TEST_CASE("pointwise algebra: traces and contractions") {
  Chart chart = t3();
  Field id = identity_endo(chart);
  CHECK(trace_endo(id).at(0, 0) == doctest::Approx(3.0));

  Field w(chart, Rank::Endo);
  for (std::size_t p = 0; p < chart.num_points(); ++p) {
    w.at2(0, 0, p) = 1.0;
    w.at2(1, 1, p) = 2.0;
    w.at2(2, 2, p) = 3.0;
  }
  // tr(W o W) = 1 + 4 + 9
  CHECK(contract_endo(w, w).at(0, 0) == doctest::Approx(14.0));
}

TEST_CASE("raise and lower are mutually inverse for random SPD metrics") {
  Chart chart = Chart::periodic_grid(3, 8);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Field g = random_band_limited_metric(chart, 2, 0.05, seed);
    Field ginv = metric_inverse(g);
    // an arbitrary (not necessarily SPD) symmetric 2-cov field
    Field h = lower(g, random_band_limited_endo(g, 2, 0.4, seed + 50));
    Field back = lower(g, raise(ginv, h));
    CHECK(sub(back, h).sup_norm() <= 1e-12);
  }
}

TEST_CASE("chart invariants") {
  CHECK_THROWS_AS(Chart::periodic_grid(3, 12), Error);  // not a power of two
  CHECK_THROWS_AS(Chart::periodic_grid(3, 2), Error);   // too small
  CHECK_NOTHROW(Chart::su2_frame(+1.0));
  CHECK_NOTHROW(Chart::su2_frame(-1.0));
  // Broken Jacobi identity must be rejected:
  // [e0,e1] = e2 and [e0,e2] = e0 give [[e2,e0],e1] = -e2 as the only
  // surviving cyclic term.
  std::vector<double> c(27, 0.0);
  c[(2 * 3 + 0) * 3 + 1] = 1.0;
  c[(2 * 3 + 1) * 3 + 0] = -1.0;
  c[(0 * 3 + 0) * 3 + 2] = 1.0;
  c[(0 * 3 + 2) * 3 + 0] = -1.0;
  CHECK_THROWS_AS(Chart::frame(3, c), Error);
}

TEST_CASE("sha256 matches NIST vectors") {
  CHECK(sha256_hex(std::string("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex(std::string("")) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("dealiasing and Galerkin projection preserve retained modes") {
  Chart chart = Chart::periodic_grid(1, 32);
  Field f = scalar_from(chart, [](double x) { return std::sin(2.0 * x); });
  Field g = galerkin_project(f, 8);
  CHECK(sub(f, g).sup_norm() <= 1e-13);  // mode 2 kept
  Field h = galerkin_project(f, 1);
  CHECK(h.sup_norm() <= 1e-13);  // mode 2 removed
  Field d = dealias_two_thirds(f);
  CHECK(sub(f, d).sup_norm() <= 1e-13);
}
