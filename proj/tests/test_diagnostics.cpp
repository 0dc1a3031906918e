#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "vspc/diagnostics.hpp"
#include "vspc/diagnostics_io.hpp"
#include "vspc/errors.hpp"
#include "vspc/exact_solutions.hpp"
#include "vspc/solver.hpp"
#include "vspc/spectral_ops.hpp"

using namespace vspc;
using namespace vspc::testing;
using std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

namespace {

std::vector<DiagnosticsRecord> blowup_history(double step, double t_end) {
  const BlowupParams p(2.0, 1.0, 1.0);
  std::vector<DiagnosticsRecord> h;
  const int count = static_cast<int>(std::lround(t_end / step));
  for (int i = 0; i <= count; ++i) {
    const double t = i * step;
    const auto f = blowup_fields(p, t);
    h.push_back(linear_profile_record(t, f.grad_u, f.F, h.empty() ? nullptr : &h.back()));
  }
  return h;
}

RunResult short_run(const State& init, double nu, double t_end, int n = 32) {
  SolverConfig cfg;
  cfg.grid = GridSpec(n);
  cfg.nu = nu;
  cfg.t_end = t_end;
  return simulate(cfg, init);
}

}  // namespace

TEST_CASE("record norms") {
  const GridSpec g(32);
  SUBCASE("zero state") {
    const State z{0.0, VectorField::zeros(g, Representation::physical), TensorField::zeros(g, Representation::physical)};
    const auto r = record(z, 0.0);
    CHECK(r.l2_u == 0.0);
    CHECK(r.l2_F == 0.0);
    CHECK(r.h2_F == 0.0);
    CHECK(r.lp_F_inf == 0.0);
    CHECK(r.linf_gradu == 0.0);
    CHECK(r.energy_residual == 0.0);
  }
  SUBCASE("Taylor-Green with F = I") {
    const auto r = record(taylor_green_state(g), 0.0);
    CHECK(r.l2_u == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.l2_F == doctest::Approx(2 * pi * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.lp_F_2 == doctest::Approx(r.l2_F).epsilon(1e-10));
    CHECK(r.lp_F_inf == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(r.lp_F1_inf == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.linf_gradu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.linf_u == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.lp_F(4) == r.lp_F_4);
    CHECK(r.lp_column(1, 6) == r.lp_F2_6);
    CHECK_THROWS_AS((void)r.lp_F(3), UsageError);
  }
  SUBCASE("consistency on random data") {
    State s = perturbed_identity_state(g, 1.0, 0.3);
    s.F.entry(0, 1) = random_band_limited(g, 6, 5);
    const auto r = record(s, 0.0);
    CHECK(r.lp_F_2 == doctest::Approx(r.l2_F).epsilon(1e-10));
    double grid_max = 0.0;
    const auto F = as_physical(s.F);
    for (int j1 = 0; j1 < g.n(); ++j1)
      for (int j2 = 0; j2 < g.n(); ++j2) {
        double sq = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int k = 0; k < 2; ++k) sq += std::pow(F.entry(i, k).values()(j1, j2), 2);
        grid_max = std::max(grid_max, std::sqrt(sq));
      }
    CHECK(r.lp_F_inf == doctest::Approx(grid_max).epsilon(1e-14));
    // Hölder ordering once normalized by the torus measure
    const double mu = 4 * pi * pi;
    CHECK(r.lp_F_2 / std::pow(mu, 0.5) <= r.lp_F_4 / std::pow(mu, 0.25) * (1 + 1e-12));
    CHECK(r.lp_F_4 / std::pow(mu, 0.25) <= r.lp_F_6 / std::pow(mu, 1.0 / 6) * (1 + 1e-12));
    CHECK(r.lp_F_6 / std::pow(mu, 1.0 / 6) <= r.lp_F_inf * (1 + 1e-12));
  }
}

TEST_CASE("curl report") {
  const GridSpec g(32);
  State s = steady_identity_state(g);
  s.u = VectorField(ScalarField::sample(g, [](double, double x2) { return -std::sin(x2); }),
                    ScalarField::sample(g, [](double x1, double) { return std::sin(x1); }));
  const auto c = curl_report(s);
  CHECK(c.linf_curl_u == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.linf_curl_F == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  s.u = gradient(random_band_limited(g, 5, 3));
  CHECK(curl_report(s).linf_curl_u < 1e-11);
}

TEST_CASE("bkm report") {
  SUBCASE("constant gradient over [0, 2]") {
    std::vector<double> t, v;
    for (int i = 0; i <= 20; ++i) {
      t.push_back(0.1 * i);
      v.push_back(1.0);
    }
    const auto rep = bkm_report(gradient_history(t, v));
    CHECK(rep.integral == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(!rep.extrapolated_t_star);
  }
  SUBCASE("explicit family at step 0.01") {
    // The trapezoid rule overshoots the exact ln(10)/3 by about 2.5e-3 at this step.
    const auto rep = bkm_report(blowup_history(0.01, 0.3));
    CHECK(rep.integral == doctest::Approx(0.7699817518).epsilon(1e-9));
    REQUIRE(rep.extrapolated_t_star);
    CHECK(*rep.extrapolated_t_star == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  }
  SUBCASE("explicit family at step 0.001") {
    const auto rep = bkm_report(blowup_history(0.001, 0.3));
    CHECK(std::abs(rep.integral - std::log(10.0) / 3) <= 1e-3);
    REQUIRE(rep.extrapolated_t_star);
    CHECK(std::abs(*rep.extrapolated_t_star - 1.0 / 3.0) <= 1e-2);
  }
  SUBCASE("decaying viscous run") {
    const auto r = short_run(taylor_green_state(GridSpec(16)), 0.1, 0.3, 16);
    const auto rep = bkm_report(r.history);
    CHECK(!rep.extrapolated_t_star);
    CHECK(rep.integral > 0.0);
  }
  SUBCASE("too few records") {
    const std::vector<double> t{0.0, 0.1}, v{1.0, 2.0};
    CHECK_THROWS_AS(bkm_report(gradient_history(t, v)), UsageError);
  }
}

TEST_CASE("energy certificate") {
  const auto r = short_run(perturbed_identity_state(GridSpec(32)), 0.0, 0.3);
  const auto single = energy_certificate(std::span(r.history).first(1), false);
  CHECK(single.value == 0.0);
  CHECK(single.satisfied);
  const auto full = energy_certificate(r.history, false);
  CHECK(full.satisfied);
  CHECK(full.value <= 1e-6);
  CHECK(full.margin == doctest::Approx(kDefaultEnergyTolerance - full.value));
  CHECK(!energy_certificate(r.history, true).applicable);
  CHECK(!energy_certificate(r.history, false, 1e-300).satisfied);
}

TEST_CASE("Lp certificate") {
  SUBCASE("no flow: equality") {
    // constant F exerts no stress, so u stays 0 and F is not transported
    State s = steady_identity_state(GridSpec(16));
    s.F.entry(0, 1) = ScalarField::constant(GridSpec(16), 0.7);
    const auto r = short_run(s, 0.0, 0.1, 16);
    for (double p : {2.0, 4.0, 6.0, kInf}) {
      const auto rep = lp_growth_certificate(r.history, p);
      CHECK(rep.satisfied);
      CHECK(std::abs(rep.margin) <= 1e-12);
    }
  }
  SUBCASE("Taylor-Green run") {
    const auto r = short_run(perturbed_identity_state(GridSpec(32)), 0.0, 0.5);
    for (double p : {4.0, kInf}) {
      const auto rep = lp_growth_certificate(r.history, p);
      CHECK(rep.satisfied);
      CHECK(rep.margin > 0.0);
    }
  }
  SUBCASE("saturated on the explicit family") {
    const auto h = blowup_history(0.001, 0.3);
    const auto rep = lp_growth_certificate(h, kInf);
    CHECK(rep.satisfied);
    CHECK(std::abs(rep.margin) <= 1e-6);
  }
  SUBCASE("trapezoid error of the accumulator is budgeted") {
    // ||grad u||_inf = 1 - t^2 is concave, so the trapezoid bkm falls short of
    // the exact integral t - t^3/3 that a saturated column follows.
    std::vector<double> t, v;
    for (int i = 0; i <= 50; ++i) {
      t.push_back(0.01 * i);
      v.push_back(1.0 - t.back() * t.back());
    }
    auto h = gradient_history(t, v);
    for (auto& r : h)
      for (double* c : {&r.lp_F1_4, &r.lp_F2_4}) *c = std::exp(r.t - r.t * r.t * r.t / 3);
    const auto rep = lp_growth_certificate(h, 4.0);
    CHECK(rep.margin < -kLpSlack);  // the raw margin is negative ...
    CHECK(rep.satisfied);           // ... but within the quadrature estimate
    for (auto& r : h) r.lp_F1_4 *= std::exp(1e-3 * r.t);
    CHECK(!lp_growth_certificate(h, 4.0).satisfied);
  }
  SUBCASE("violation is reported") {
    auto h = blowup_history(0.01, 0.1);
    h.back().lp_F1_4 *= 10.0;
    CHECK(!lp_growth_certificate(h, 4.0).satisfied);
    CHECK_THROWS_AS(lp_growth_certificate(h, 3.0), UsageError);
  }
}

TEST_CASE("H1 certificate") {
  const auto steady = short_run(steady_identity_state(GridSpec(16)), 0.0, 0.1, 16);
  const auto rep = h1_growth_certificate(steady.history);
  CHECK(rep.value == 0.0);
  CHECK(rep.satisfied);

  const auto tg = short_run(perturbed_identity_state(GridSpec(32)), 0.0, 0.5);
  const auto rep2 = h1_growth_certificate(tg.history);
  CHECK(rep2.satisfied);
  CHECK(std::isfinite(rep2.value));
  CHECK(rep2.value > 0.0);
}

TEST_CASE("accumulators are non-decreasing and divergence stays small") {
  const auto r = short_run(perturbed_identity_state(GridSpec(32)), 0.02, 0.3);
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    CHECK(r.history[i].bkm >= r.history[i - 1].bkm);
    CHECK(r.history[i].visc >= r.history[i - 1].visc);
    CHECK(r.history[i].curl_int >= r.history[i - 1].curl_int);
    CHECK(r.history[i].hs2_gradu_int >= r.history[i - 1].hs2_gradu_int);
  }
  CHECK(divergence_certificate(r.history).satisfied);
  CHECK(r.history.back().l2_ut > 0.0);
  CHECK(r.history.front().l2_ut == 0.0);
}

TEST_CASE("diagnostics CSV round trip") {
  const auto r = short_run(perturbed_identity_state(GridSpec(16)), 0.01, 0.1, 16);
  DiagnosticsTable table{r.history, 0.01, false, 1e-5};
  std::stringstream out;
  write_diagnostics_csv(out, table);
  const std::string text = out.str();
  std::istringstream in(text);
  const auto back = read_diagnostics_csv(in);
  CHECK(back.nu == 0.01);
  CHECK(!back.forced);
  REQUIRE(back.history.size() == r.history.size());
  std::stringstream again;
  write_diagnostics_csv(again, back);
  CHECK(again.str() == text);
  CHECK(back.history.back().energy_residual == r.history.back().energy_residual);
  CHECK(criterion_report(back) == criterion_report(table));
}

TEST_CASE("synthetic CSV without bkm") {
  std::ostringstream csv;
  csv << "t,linf_gradu\n";
  for (int i = 0; i <= 20; ++i) csv << 0.1 * i << ",1\n";
  std::istringstream in(csv.str());
  const auto table = read_diagnostics_csv(in);
  CHECK(table.history.back().bkm == doctest::Approx(2.0).epsilon(1e-14));
  const auto rep = criterion_report(table);
  CHECK(rep["records"] == 21);
  CHECK(rep["bkm"]["integral"].get<double>() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("malformed CSV") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_diagnostics_csv(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("linf_gradu\n1\n"), ParseError);
  CHECK_THROWS_AS(parse("t,linf_gradu\n0,abc\n"), ParseError);
  CHECK_THROWS_AS(parse("t,linf_gradu\n0,1,2\n"), ParseError);
  CHECK_THROWS_AS(parse("t,linf_gradu\n0.1,1\n0.1,1\n"), ParseError);
  CHECK_THROWS_AS(read_diagnostics_csv(std::string("/nonexistent/diagnostics.csv")), ParseError);
  CHECK_NOTHROW(parse("t,unknown_column\n0,5\n1,5\n"));
}
