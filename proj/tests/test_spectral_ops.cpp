#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "support.hpp"
#include "vspc/errors.hpp"
#include "vspc/spectral_ops.hpp"

using namespace vspc;
using namespace vspc::testing;
using std::numbers::pi;

namespace {

ScalarField sample(const GridSpec& g, double (*f)(double, double)) { return ScalarField::sample(g, f); }

}  // namespace

TEST_CASE("gradient") {
  const GridSpec g(32);
  const auto grad = gradient(sample(g, [](double x1, double) { return std::sin(x1); }));
  CHECK(max_diff(grad[0], sample(g, [](double x1, double) { return std::cos(x1); })) < 1e-13);
  CHECK(max_abs(grad[1]) < 1e-13);
  CHECK(grad[0].is_physical());

  const auto zero = gradient(ScalarField::constant(g, 4.0));
  CHECK(max_abs(zero[0]) < 1e-15);
  CHECK(max_abs(zero[1]) < 1e-15);

  const auto f = sample(g, [](double x1, double x2) { return std::sin(x1) * std::sin(x2); });
  CHECK(max_diff(divergence(gradient(f)), laplacian(f)) < 1e-12);
}

TEST_CASE("divergence") {
  const GridSpec g(32);
  const VectorField v(sample(g, [](double, double x2) { return std::sin(x2); }),
                      sample(g, [](double x1, double) { return std::sin(x1); }));
  CHECK(max_abs(divergence(v)) < 1e-13);
  const auto f = random_band_limited(g, 6, 3);
  CHECK(max_diff(divergence(gradient(f)), laplacian(f)) < 1e-10 * max_abs(laplacian(f)));
  const VectorField c(ScalarField::constant(g, 2.0), ScalarField::constant(g, -1.0));
  CHECK(max_abs(divergence(c)) < 1e-15);
}

TEST_CASE("laplacian") {
  const GridSpec g(32);
  CHECK(max_diff(laplacian(sample(g, [](double x1, double) { return std::cos(x1); })),
                 sample(g, [](double x1, double) { return -std::cos(x1); })) < 1e-13);
  CHECK(max_abs(laplacian(ScalarField::constant(g, 7.0))) < 1e-15);
  CHECK(max_diff(laplacian(sample(g, [](double, double x2) { return std::cos(2 * x2); })),
                 sample(g, [](double, double x2) { return -4 * std::cos(2 * x2); })) < 1e-12);
}

TEST_CASE("Nyquist mode stays real under odd derivatives") {
  const GridSpec g(16);
  const auto f = sample(g, [](double x1, double) { return std::cos(8 * x1); });
  CHECK(max_abs(partial(f, 0)) < 1e-13);
  CHECK_NOTHROW(to_physical(partial(to_spectral(random_band_limited(g, 8, 2)), 1)));
}

TEST_CASE("Leray projection") {
  const GridSpec g(32);
  const auto phi = random_band_limited(g, 8, 21);
  const auto phi0 = phi - ScalarField::constant(g, as_spectral(phi).coefficients()(0, 0).real());
  const auto pg = leray_project(gradient(phi0));
  CHECK(max_abs(pg[0]) < 1e-12 * max_abs(phi));
  CHECK(max_abs(pg[1]) < 1e-12 * max_abs(phi));

  const auto w = random_solenoidal(g, 8, 22);
  CHECK(max_diff(leray_project(w), w) < 1e-12 * max_abs(w[0]));

  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const VectorField v(random_band_limited(g, 12, seed), random_band_limited(g, 12, seed + 7));
    const VectorField y(random_band_limited(g, 12, seed + 50), random_band_limited(g, 12, seed + 57));
    const auto pv = leray_project(v);
    CHECK(max_abs(as_physical(divergence(pv))) <= 1e-12 * max_abs(v[0]));
    CHECK(max_diff(leray_project(pv), pv) < 1e-12 * max_abs(v[0]));
    const double a = inner(pv, y), b = inner(v, leray_project(y));
    CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    CHECK(max_diff(pv + gradient_part(v), v) < 1e-12 * max_abs(v[0]));
  }
}

TEST_CASE("pressure gradient") {
  const GridSpec g(32);
  SUBCASE("vanishes without flow and with constant F") {
    const VectorField u = VectorField::zeros(g, Representation::physical);
    TensorField F = TensorField::identity(g);
    F.entry(0, 1) = ScalarField::constant(g, 0.3);
    const auto gp = pressure_gradient(u, F);
    CHECK(max_abs(as_physical(gp[0])) < 1e-15);
    CHECK(max_abs(as_physical(gp[1])) < 1e-15);
  }
  SUBCASE("Taylor-Green against the closed form") {
    // u.grad u = (sin 2x1, sin 2x2) / 2 is itself a gradient, so grad p = -u.grad u.
    const auto gp = pressure_gradient(taylor_green(g), TensorField::identity(g));
    const VectorField expected(sample(g, [](double x1, double) { return -0.5 * std::sin(2 * x1); }),
                               sample(g, [](double, double x2) { return -0.5 * std::sin(2 * x2); }));
    CHECK(max_diff(gp, expected) < 1e-10);
    CHECK(max_abs(as_physical(curl(gp))) < 1e-10);
  }
  SUBCASE("matches a Poisson solve on random data") {
    const VectorField u = random_solenoidal(g, 4, 41);
    const TensorField F(random_solenoidal(g, 4, 42), random_solenoidal(g, 4, 43));
    // S = F_.i.grad F_.i - u.grad u in physical space, band 8 < n/3 so unaliased.
    auto advect = [&](const VectorField& a, const VectorField& b) {
      std::vector<ScalarField> out;
      for (int j = 0; j < 2; ++j) {
        ScalarField acc = ScalarField::zeros(g, Representation::physical);
        for (int m = 0; m < 2; ++m)
          acc += pointwise_product(as_physical(a[m]), as_physical(partial(as_physical(b[j]), m)));
        out.push_back(acc);
      }
      return VectorField(out[0], out[1]);
    };
    const VectorField S = advect(F.column(0), F.column(0)) + advect(F.column(1), F.column(1)) - advect(u, u);
    // Delta p = div S, solved mode by mode.
    ComplexGrid p = as_spectral(divergence(S)).coefficients();
    for (int i1 = 0; i1 < g.n(); ++i1)
      for (int i2 = 0; i2 < g.n(); ++i2) {
        const double kk = std::pow(g.wavenumber(i1), 2) + std::pow(g.wavenumber(i2), 2);
        p(i1, i2) = kk == 0.0 ? 0.0 : -p(i1, i2) / kk;
      }
    const auto expected = gradient(ScalarField::spectral(g, p));
    const auto gp = pressure_gradient(u, F);
    CHECK(max_diff(gp, expected) < 1e-10 * std::max(1.0, max_abs(as_physical(expected[0]))));
    CHECK(max_abs(as_physical(curl(gp))) < 1e-10 * std::max(1.0, max_abs(as_physical(expected[0]))));
  }
}

TEST_CASE("lambda_s") {
  const GridSpec g(32);
  const auto f = random_band_limited(g, 8, 51);
  const double mean = as_spectral(f).coefficients()(0, 0).real();
  const auto f0 = f - ScalarField::constant(g, mean);
  CHECK(max_diff(lambda_s(f0, SobolevOrder(0.0)), f0) < 1e-12 * max_abs(f0));

  const auto c = sample(g, [](double x1, double) { return std::cos(x1); });
  CHECK(max_diff(lambda_s(c, SobolevOrder(2.0)), c) < 1e-13);
  CHECK(max_diff(lambda_s(f, SobolevOrder(2.0)), -1.0 * laplacian(f)) < 1e-11 * max_abs(laplacian(f)));
  CHECK(max_diff(lambda_s(lambda_s(f, SobolevOrder(1.0)), SobolevOrder(1.0)), lambda_s(f, SobolevOrder(2.0))) <
        1e-12 * max_abs(laplacian(f)));
  CHECK_THROWS_AS(SobolevOrder(-1.0), UsageError);
  CHECK_THROWS_AS(SobolevOrder(std::nan("")), UsageError);
}

TEST_CASE("sobolev_norm") {
  const GridSpec g(32);
  const auto f = random_band_limited(g, 8, 61);
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));

  // ||cos x1||_{H^1}^2 = ||f||^2 + ||grad f||^2 = 2 pi^2 + 2 pi^2; the grid
  // trapezoid rule is exact for these trigonometric polynomials.
  const auto c = sample(g, [](double x1, double) { return std::cos(x1); });
  const auto grad = gradient(c);
  const double quad = (c.values().square().sum() + grad[0].values().square().sum() + grad[1].values().square().sum()) *
                      g.cell_area();
  CHECK(sobolev_norm(c, 1.0) == doctest::Approx(std::sqrt(quad)).epsilon(1e-12));
  CHECK(sobolev_norm(c, 1.0) == doctest::Approx(2 * pi).epsilon(1e-12));

  double prev = 0.0;
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double v = sobolev_norm(f, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("commutator: constants and the two-mode example") {
  const GridSpec g(32);
  const auto r0 = commutator_check(SobolevOrder(2.0), ScalarField::constant(g, 2.5), random_band_limited(g, 4, 71));
  CHECK(r0.lhs == 0.0);

  // Lambda^2(cos^2 x1) - cos x1 Lambda^2 cos x1 = (3/2) cos 2x1 - 1/2 by hand.
  const auto c = sample(g, [](double x1, double) { return std::cos(x1); });
  const auto r = commutator_check(SobolevOrder(2.0), c, c);
  const double lhs = 2 * pi * std::sqrt(11.0 / 8.0);
  const double rhs = 2 * pi * std::sqrt(2.0);
  CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-12));
  CHECK(r.lhs == doctest::Approx(7.367687846671537).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(0.82915619758885).epsilon(1e-12));

  const auto zero = commutator_check(SobolevOrder(2.0), c, ScalarField::zeros(g, Representation::physical));
  CHECK(zero.lhs == 0.0);
  CHECK(zero.ratio == 0.0);
}

TEST_CASE("commutator agrees with the physical-space route on band-limited pairs") {
  const GridSpec g(64);
  for (double s : {1.5, 2.0, 3.0})
    for (std::uint64_t seed : {81u, 82u, 83u}) {
      const auto f = random_band_limited(g, 8, seed);
      const auto h = random_band_limited(g, 8, seed + 1000);
      const SobolevOrder order(s);
      const auto direct = lambda_s(pointwise_product(f, h), order) - pointwise_product(f, lambda_s(h, order));
      const auto rep = commutator_check(order, f, h);
      CHECK(rep.lhs == doctest::Approx(l2_norm(direct)).epsilon(1e-10));
      CHECK(rep.ratio > 0.0);
      CHECK(std::isfinite(rep.ratio));
    }
}

TEST_CASE("commutator rejects inputs beyond the dealiasing band") {
  const GridSpec g(32);
  const auto high = sample(g, [](double x1, double) { return std::cos(14 * x1); });
  CHECK_THROWS_AS(commutator_check(SobolevOrder(2.0), high, high), UsageError);
}
