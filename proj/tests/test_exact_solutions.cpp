#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/LU>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "support.hpp"
#include "vspc/errors.hpp"
#include "vspc/exact_solutions.hpp"
#include "vspc/manufactured.hpp"
#include "vspc/spectral_ops.hpp"

using namespace vspc;
using namespace vspc::testing;
using Eigen::Matrix2d;
using Eigen::Vector2d;

TEST_CASE("family parameters") {
  const BlowupParams p(2.0, 1.0, 1.0);
  CHECK(p.c() == 3.0);
  CHECK(p.blows_up());
  CHECK(p.t_star() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.a(0.0) == 1.0);
  CHECK(p.a(0.3) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK_THROWS_AS(BlowupParams(1.0, 1.0, 1.0), UsageError);
  CHECK_THROWS_AS(BlowupParams(1.0, -1.0, 1.0), UsageError);
  CHECK_THROWS_AS(BlowupParams(2.0, 1.0, 0.0), UsageError);
  CHECK(!BlowupParams(2.0, 1.0, -1.0).blows_up());
}

TEST_CASE("fields at t = 0.3") {
  const auto f = blowup_fields(BlowupParams(2.0, 1.0, 1.0), 0.3);
  CHECK(f.F(0, 0) == doctest::Approx(2.1544346900318834).epsilon(1e-12));
  CHECK(f.F(1, 1) == doctest::Approx(0.4641588833612779).epsilon(1e-12));
  CHECK(f.F(0, 1) == 0.0);
  CHECK(f.F.determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.grad_u.trace() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(f.grad_u(0, 0) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("pole") {
  const BlowupParams p(2.0, 1.0, 1.0);
  CHECK_THROWS_AS(blowup_fields(p, p.t_star()), PoleError);
  CHECK_THROWS_AS(blowup_fields(p, 0.5), PoleError);
  CHECK_NOTHROW(blowup_fields(p, p.t_star() - 1e-6));
}

TEST_CASE("corrected family solves the system on random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(0.2, 3.0), frac(0.0, 0.95), xs(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    double alpha = coef(rng), beta = coef(rng);
    if (std::abs(alpha - beta) < 0.05) beta += 0.1;
    const BlowupParams p(alpha, beta, coef(rng));
    const double t = p.blows_up() ? frac(rng) * p.t_star() : frac(rng);
    const Vector2d x(xs(rng), xs(rng));
    const auto r = blowup_residual(p, t, x);
    const double worst = std::max({r.momentum.cwiseAbs().maxCoeff(), r.deformation.cwiseAbs().maxCoeff(), std::abs(r.div_u)});
    CHECK(worst <= 1e-12 * r.scale);
    CHECK(blowup_fields(p, t).F.determinant() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("printed family is not divergence-free") {
  const BlowupParams p(2.0, 1.0, 1.0);
  const auto r = blowup_residual(p, 0.1, Vector2d(0.3, -0.7), Fidelity::printed);
  CHECK(r.div_u == doctest::Approx(2 * p.a(0.1)).epsilon(1e-12));
}

TEST_CASE("BKM integral against quadrature") {
  const BlowupParams p(2.0, 1.0, 1.0);
  for (double T : {0.05, 0.2, 0.3, 0.33}) {
    const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double s) { return std::abs(p.a(s)); }, 0.0, T, 15, 1e-14);
    CHECK(blowup_bkm_integral(p, T) == doctest::Approx(q).epsilon(1e-8));
  }
  CHECK(blowup_bkm_integral(p, 0.0) == 0.0);
  CHECK(std::isinf(blowup_bkm_integral(p, p.t_star())));
  CHECK_THROWS_AS(blowup_bkm_integral(p, -0.1), UsageError);

  // increasing and convex on [0, t*)
  double prev = 0.0, prev_slope = 0.0;
  for (int i = 1; i < 30; ++i) {
    const double T = i * p.t_star() / 30;
    const double v = blowup_bkm_integral(p, T);
    const double slope = v - prev;
    CHECK(v > prev);
    CHECK(slope > prev_slope);
    prev = v;
    prev_slope = slope;
  }

  const BlowupParams neg(1.0, 2.0, -1.0);  // c < 0, f0 < 0: blows up, integral positive
  CHECK(neg.blows_up());
  CHECK(blowup_bkm_integral(neg, 0.5 * neg.t_star()) > 0.0);
}

TEST_CASE("ODE reduction") {
  SUBCASE("constant stretching") {
    const auto s = ode_reduce_integrate(LinearProfileState{}, [](double) { return 1.0; }, 1.0, 10000);
    CHECK(std::abs(s.F(0, 0) - std::exp(1.0)) < 1e-10);
    CHECK(std::abs(s.F(1, 1) - std::exp(-1.0)) < 1e-10);
    CHECK(std::abs(s.F(0, 1)) < 1e-15);
    CHECK(s.t == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("explicit family up to near the pole") {
    const BlowupParams p(2.0, 1.0, 1.0);
    const double T = p.t_star() - 0.05;
    const int steps = static_cast<int>(std::ceil(T / 1e-4));
    const auto s = ode_reduce_integrate(LinearProfileState{}, [&](double t) { return p.a(t); }, T, steps);
    const Matrix2d expected = blowup_fields(p, T).F;
    CHECK((s.F - expected).cwiseAbs().maxCoeff() <= 1e-8 * expected.cwiseAbs().maxCoeff());
  }
  SUBCASE("trace check") {
    const MatrixFunction bad = [](double) { return Matrix2d::Identity().eval(); };
    CHECK_THROWS_AS(ode_reduce_step(LinearProfileState{}, bad, 0.01), UsageError);
  }
  SUBCASE("shear") {
    // A = [[0, 1], [0, 0]] gives F = [[1, t], [0, 1]], reproduced exactly by RK4
    const MatrixFunction shear = [](double) {
      Matrix2d A;
      A << 0, 1, 0, 0;
      return A;
    };
    LinearProfileState s;
    for (int i = 0; i < 10; ++i) s = ode_reduce_step(s, shear, 0.1);
    CHECK(s.F(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.F(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("manufactured forcing") {
  const GridSpec g(32);
  SUBCASE("steady") {
    const auto m = manufactured(ManufacturedKind::steady, g, 0.05);
    CHECK(max_abs(as_physical(m.forcing.g_u(0.2)[1])) < 1e-14);
    CHECK(max_abs(as_physical(m.forcing.g_F(0.2).entry(0, 0))) < 1e-14);
    CHECK(max_diff(m.analytic(0.7).u, m.initial.u) < 1e-15);
  }
  SUBCASE("Taylor-Green") {
    const double nu = 0.05, t = 0.4;
    const auto m = manufactured(ManufacturedKind::taylor_green, g, nu);
    const auto gu = m.forcing.g_u(t);
    CHECK(max_abs(as_physical(gu[0])) < 1e-10);
    CHECK(max_abs(as_physical(gu[1])) < 1e-10);
    const auto u = m.analytic(t).u;
    const auto gF = m.forcing.g_F(t);
    for (int k = 0; k < 2; ++k) {
      const VectorField expected = -1.0 * VectorField(partial(u[0], k), partial(u[1], k));
      CHECK(max_diff(gF.column(k), expected) < 1e-10);
    }
    CHECK(max_diff(u, std::exp(-2 * nu * t) * taylor_green(g)) < 1e-13);
  }
  SUBCASE("banded forcing is divergence-free") {
    // band-limited, so sampling onto the solver grid does not alias
    const auto m = manufactured(ManufacturedKind::banded, g, 0.01);
    const auto gu = m.forcing.g_u(0.25);
    CHECK(max_abs(as_physical(divergence(gu))) < 1e-9);
    CHECK(max_abs(as_physical(divergence(m.initial.u))) < 1e-11);
    CHECK(max_diff(m.analytic(0.0).u, m.initial.u) == 0.0);
  }
}
