#include "vspc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vspc/diagnostics_io.hpp"
#include "vspc/errors.hpp"
#include "vspc/exact_solutions.hpp"
#include "vspc/manufactured.hpp"
#include "vspc/parallel.hpp"
#include "vspc/run_config.hpp"
#include "vspc/snapshot.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace fs = std::filesystem;

namespace {

constexpr double kResidualTolerance = 1e-12;

struct Check {
  std::string name;
  bool passed = false;
  bool expected_fail = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks) {
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %-14s %s\n", "check", "verdict", "detail");
  out << line;
  for (const auto& c : checks) {
    const char* verdict = c.expected_fail ? (c.passed ? "expected-fail" : "UNEXPECTED") : (c.passed ? "pass" : "FAIL");
    std::snprintf(line, sizeof line, "%-36s %-14s %s\n", c.name.c_str(), verdict, c.detail.c_str());
    out << line;
  }
}

double relative_residual(const BlowupResidual& r) {
  return std::max({r.momentum.cwiseAbs().maxCoeff(), r.deformation.cwiseAbs().maxCoeff(), std::abs(r.div_u)}) /
         r.scale;
}

// Random blowing-up family with t in [0, 0.95 t*) and x in [-2, 2]^2.
struct Sample {
  BlowupParams p;
  double t;
  Eigen::Vector2d x;
};

std::vector<Sample> draw_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), amp(-2.0, 2.0), unit(0.0, 1.0), pos(-2.0, 2.0);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const double a = coef(rng), b = coef(rng), f0 = amp(rng);
    if (std::abs(a + b) < 0.1 || std::abs(a - b) < 0.1 || std::abs(f0) < 0.1) continue;
    const BlowupParams p(a, b, f0);
    if (!p.blows_up()) continue;
    const double t = 0.95 * p.t_star() * unit(rng);
    out.push_back({p, t, Eigen::Vector2d(pos(rng), pos(rng))});
  }
  return out;
}

Check corrected_sweep(const std::vector<Sample>& samples) {
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, relative_residual(blowup_residual(s.p, s.t, s.x)));
  return {"residual sweep (corrected)", worst <= kResidualTolerance, false,
          std::to_string(samples.size()) + " samples, max relative residual " + fmt("%.3e", worst)};
}

Check printed_sweep(const std::vector<Sample>& samples) {
  int nonzero_div = 0;
  double worst = 0.0, min_div = INFINITY;
  for (const auto& s : samples) {
    const BlowupResidual r = blowup_residual(s.p, s.t, s.x, Fidelity::printed);
    worst = std::max(worst, relative_residual(r));
    min_div = std::min(min_div, std::abs(r.div_u));
    // The printed form breaks incompressibility by div u = 2a; judged against |a|, not the largest term.
    if (std::abs(r.div_u - 2.0 * s.p.a(s.t)) <= kResidualTolerance * std::abs(s.p.a(s.t)) && r.div_u != 0.0)
      ++nonzero_div;
  }
  return {"residual sweep (printed)", nonzero_div == static_cast<int>(samples.size()), true,
          "div u = 2a != 0 on " + std::to_string(nonzero_div) + "/" + std::to_string(samples.size()) +
              " samples (min |div u| " + fmt("%.3e", min_div) + "), max relative residual " + fmt("%.3e", worst)};
}

}  // namespace

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const std::exception& e) {
    err << "vspc run: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    if (cfg.snapshot_interval > 0) fs::create_directories(dir / "snapshots");
    RunSetup setup = make_run_setup(cfg);
    const bool forced = setup.solver.forcing.has_value();

    std::ofstream csv(dir / "diagnostics.csv");
    if (!csv) throw UsageError("cannot write " + (dir / "diagnostics.csv").string());
    write_diagnostics_header(csv, cfg.nu, forced, cfg.energy_tolerance);

    int snapshot_index = 0;
    RunCallbacks callbacks;
    callbacks.on_record = [&](const DiagnosticsRecord& r) { write_diagnostics_row(csv, r); };
    callbacks.on_snapshot = [&](const State& s) {
      char name[32];
      std::snprintf(name, sizeof name, "step_%06d.vspc", snapshot_index++);
      write_state_snapshot(dir / "snapshots" / name, s);
    };

    const RunResult result = simulate(setup.solver, setup.initial, callbacks);
    csv.close();
    write_state_snapshot(dir / "final.vspc", result.final_state);

    nlohmann::json certs;
    certs["certificates"] = nlohmann::json::array();
    for (const auto& c : evaluate_certificates(result.history, forced, cfg.energy_tolerance))
      certs["certificates"].push_back(to_json(c));
    certs["bkm"] = result.history.size() >= 3 ? to_json(bkm_report(result.history)) : nlohmann::json(nullptr);
    std::ofstream(dir / "certificates.json") << certs.dump(2) << '\n';

    const nlohmann::json meta{{"config", to_json(cfg)},
                              {"threads", thread_count()},
                              {"termination", to_string(result.reason)},
                              {"message", result.message},
                              {"steps", result.steps},
                              {"records", result.history.size()},
                              {"t_final", result.final_state.t}};
    std::ofstream(dir / "metadata.json") << meta.dump(2) << '\n';

    out << "termination: " << to_string(result.reason) << " after " << result.steps << " steps at t = "
        << result.final_state.t << '\n';
    for (const auto& c : certs["certificates"])
      out << "  " << c["name"].get<std::string>() << ": "
          << (!c["applicable"].get<bool>() ? "n/a" : c["satisfied"].get<bool>() ? "satisfied" : "VIOLATED") << '\n';
    switch (result.reason) {
      case Termination::completed: return kExitOk;
      case Termination::blowup_detected:
        err << "vspc run: " << result.message << '\n';
        return kExitBlowup;
      case Termination::certificate_violation:
        err << "vspc run: " << result.message << '\n';
        return kExitCertificate;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "vspc run: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_verify_exact(const VerifyExactOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.fidelity != "both" && opts.fidelity != "corrected" && opts.fidelity != "printed") {
    err << "vspc verify-exact: fidelity must be corrected, printed or both\n";
    return kExitUsage;
  }
  if (opts.samples <= 0) {
    err << "vspc verify-exact: sample count must be positive\n";
    return kExitUsage;
  }
  std::optional<BlowupParams> params;
  try {
    params.emplace(opts.alpha, opts.beta, opts.f0);
  } catch (const UsageError& e) {
    err << "vspc verify-exact: " << e.what() << '\n';
    return kExitUsage;
  }
  const BlowupParams& p = *params;

  std::vector<Check> checks;
  const auto samples = draw_samples(opts.samples, opts.seed);
  if (opts.fidelity != "printed") checks.push_back(corrected_sweep(samples));
  if (opts.fidelity != "corrected") checks.push_back(printed_sweep(samples));

  const double horizon = p.blows_up() ? 0.9 * p.t_star() : 1.0;
  out << "family alpha = " << p.alpha() << ", beta = " << p.beta() << ", f0 = " << p.f0() << ", c = " << p.c();
  if (p.blows_up()) out << ", t* = " << p.t_star();
  out << "; checks on [0, " << horizon << "]\n";

  if (opts.fidelity != "printed") {
    double worst = 0.0;
    for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (const Eigen::Vector2d& x : {Eigen::Vector2d(0.7, -0.3), Eigen::Vector2d(-1.5, 2.0)})
        worst = std::max(worst, relative_residual(blowup_residual(p, frac * horizon, x)));
    checks.push_back({"residual at given parameters", worst <= kResidualTolerance, false,
                      "max relative residual " + fmt("%.3e", worst)});

    const auto a_of_t = [&p](double t) { return p.a(t); };
    const LinearProfileState end = ode_reduce_integrate(LinearProfileState{}, a_of_t, horizon, 4000);
    const Eigen::Matrix2d closed = blowup_fields(p, horizon).F;
    const double rel = (end.F - closed).norm() / closed.norm();
    checks.push_back({"linear-profile ODE vs closed form", rel <= 1e-8, false,
                      "relative Frobenius error " + fmt("%.3e", rel) + " after 4000 RK4 steps"});
  }

  const double closed = blowup_bkm_integral(p, horizon);
  double quad_error = 0.0;
  const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&p](double s) { return std::abs(p.a(s)); }, 0.0, horizon, 15, 1e-14, &quad_error);
  const double quad_rel = std::abs(quad - closed) / closed;
  checks.push_back({"BKM integral closed form vs quadrature", quad_rel <= 1e-10, false,
                    fmt("closed %.12f", closed) + fmt(", quadrature %.12f", quad) + fmt(", rel diff %.2e", quad_rel)});

  const int intervals = std::max(3, static_cast<int>(std::lround(horizon / opts.history_step)));
  std::vector<DiagnosticsRecord> history;
  for (int i = 0; i <= intervals; ++i) {
    const double t = horizon * i / intervals;
    const BlowupFields f = blowup_fields(p, t);
    history.push_back(linear_profile_record(t, f.grad_u, f.F, history.empty() ? nullptr : &history.back()));
  }
  const BkmReport bkm = bkm_report(history);
  const double integral_err = std::abs(bkm.integral - closed);
  checks.push_back({"BKM trapezoid on synthetic history", integral_err <= 1e-3, false,
                    fmt("integral %.6f", bkm.integral) + fmt(" (step %.4g)", horizon / intervals) +
                        fmt(", |error| %.2e", integral_err)});
  if (p.blows_up()) {
    const bool ok = bkm.extrapolated_t_star && std::abs(*bkm.extrapolated_t_star - p.t_star()) <= 1e-2;
    checks.push_back({"blowup-time extrapolation", ok, false,
                      bkm.extrapolated_t_star ? fmt("estimate %.6f", *bkm.extrapolated_t_star) +
                                                    fmt(" vs t* %.6f", p.t_star())
                                              : std::string("no estimate")});
  }
  const CertificateReport lp = lp_growth_certificate(history, INFINITY);
  checks.push_back({"L^inf growth bound on linear profile", lp.satisfied && std::abs(lp.margin) <= 1e-6, false,
                    "satisfied with margin " + fmt("%.3e", lp.margin) + " (saturated)"});

  if (opts.history_csv) {
    std::ofstream csv(*opts.history_csv);
    if (!csv) {
      err << "vspc verify-exact: cannot write " << *opts.history_csv << '\n';
      return kExitUsage;
    }
    // The energy identity does not apply to a profile that is unbounded in space.
    write_diagnostics_csv(csv, {history, 0.0, true, kDefaultEnergyTolerance});
  }

  print_checks(out, checks);
  for (const auto& c : checks)
    if (!c.passed) {
      err << "vspc verify-exact: oracle disagreement in '" << c.name << "': " << c.detail << '\n';
      return kExitCertificate;
    }
  return kExitOk;
}

namespace {

double max_state_error(const State& a, const State& b) {
  double e = 0.0;
  for (int i = 0; i < 2; ++i) e = std::max(e, max_abs(as_physical(a.u[i]) - as_physical(b.u[i])));
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      e = std::max(e, max_abs(as_physical(a.F.entry(i, k)) - as_physical(b.F.entry(i, k))));
  return e;
}

int spatial_convergence(std::ostream& out, std::ostream& err) {
  constexpr double kT = 0.5, kDt = 2e-3, kNu = 0.01;
  out << "manufactured smooth solution, nu = " << kNu << ", t = " << kT << ", dt = " << kDt << '\n';
  out << "     n   max error      ratio\n";
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const GridSpec grid(n);
    ManufacturedProblem mp = manufactured(ManufacturedKind::smooth, grid, kNu);
    SolverConfig cfg;
    cfg.grid = grid;
    cfg.nu = kNu;
    cfg.t_end = kT;
    cfg.fixed_dt = kDt;
    cfg.diagnostics_interval = 1000000;
    cfg.forcing = mp.forcing;
    const RunResult r = simulate(cfg, mp.initial);
    if (r.reason != Termination::completed) {
      err << "vspc convergence: run at n = " << n << " ended with " << to_string(r.reason) << '\n';
      return kExitCertificate;
    }
    errors.push_back(max_state_error(r.final_state, mp.analytic(r.final_state.t)));
    char line[96];
    if (errors.size() == 1)
      std::snprintf(line, sizeof line, "%6d   %.3e\n", n, errors.back());
    else
      std::snprintf(line, sizeof line, "%6d   %.3e   %.3e\n", n, errors.back(),
                    errors[errors.size() - 2] / errors.back());
    out << line;
  }
  const double ratio = errors[0] / errors[1];
  out << "error(32)/error(64) = " << ratio << " (threshold 100)\n";
  if (!(ratio >= 100.0)) {
    err << "vspc convergence: spatial ratio " << ratio << " below 100\n";
    return kExitCertificate;
  }
  return kExitOk;
}

int temporal_convergence(std::ostream& out, std::ostream& err) {
  constexpr double kT = 1.0;
  const Eigen::Matrix2d exact{{std::exp(kT), 0.0}, {0.0, std::exp(-kT)}};
  out << "dF/dt = diag(1, -1) F, F(0) = I, t = " << kT << "; error against the matrix exponential\n";
  out << "      dt   error      order\n";
  std::vector<double> errors;
  const std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
  double worst_order = 0.0, best_order = INFINITY;
  for (double dt : steps) {
    const int count = static_cast<int>(std::lround(kT / dt));
    const LinearProfileState s = ode_reduce_integrate({}, [](double) { return 1.0; }, kT, count);
    errors.push_back((s.F - exact).norm());
    char line[96];
    if (errors.size() == 1) {
      std::snprintf(line, sizeof line, "%8.4g   %.3e\n", dt, errors.back());
    } else {
      const double order = std::log2(errors[errors.size() - 2] / errors.back());
      worst_order = std::max(worst_order, order);
      best_order = std::min(best_order, order);
      std::snprintf(line, sizeof line, "%8.4g   %.3e   %.4f\n", dt, errors.back(), order);
    }
    out << line;
  }
  const bool ok = best_order >= 3.7 && worst_order <= 4.1;
  out << "observed orders in [" << best_order << ", " << worst_order << "] (accepted [3.7, 4.1])\n";
  if (!ok) {
    err << "vspc convergence: temporal order outside [3.7, 4.1]\n";
    return kExitCertificate;
  }
  return kExitOk;
}

}  // namespace

int cmd_convergence(const std::string& mode, std::ostream& out, std::ostream& err) {
  try {
    if (mode == "spatial") return spatial_convergence(out, err);
    if (mode == "temporal") return temporal_convergence(out, err);
  } catch (const std::exception& e) {
    err << "vspc convergence: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "vspc convergence: unknown mode '" << mode << "' (expected spatial or temporal)\n";
  return kExitUsage;
}

int cmd_criterion_report(const std::string& csv_path, std::ostream& out, std::ostream& err) {
  DiagnosticsTable table;
  try {
    table = read_diagnostics_csv(csv_path);
  } catch (const std::exception& e) {
    err << "vspc criterion-report: " << e.what() << '\n';
    return kExitUsage;
  }
  if (table.history.size() < 3) {
    err << "vspc criterion-report: " << csv_path << " holds " << table.history.size()
        << " records; at least 3 are needed\n";
    return kExitUsage;
  }
  out << criterion_report(table).dump(2) << '\n';
  return kExitOk;
}

}  // namespace vspc
