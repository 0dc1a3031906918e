#include "vspc/solver.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "vspc/errors.hpp"
#include "vspc/spectral_ops.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

constexpr double kSpeedFloor = 1e-10;

// Spectral coefficients in the order u1, u2, F11, F21, F12, F22.
using Coeffs = std::array<ComplexGrid, 6>;

Coeffs pack(const State& s) {
  const VectorField u = as_spectral(s.u);
  const TensorField F = as_spectral(s.F);
  return {u[0].coefficients(), u[1].coefficients(), F.entry(0, 0).coefficients(),
          F.entry(1, 0).coefficients(), F.entry(0, 1).coefficients(), F.entry(1, 1).coefficients()};
}

State unpack(const GridSpec& g, double t, const Coeffs& c) {
  auto f = [&](int i) { return ScalarField::spectral(g, c[i]); };
  return State{t, VectorField(f(0), f(1)), TensorField(VectorField(f(2), f(3)), VectorField(f(4), f(5)))};
}

constexpr int u_slot(int j) { return j; }
constexpr int F_slot(int i, int k) { return 2 + 2 * k + i; }

bool all_finite(const Coeffs& c) {
  for (const auto& a : c)
    if (!a.allFinite()) return false;
  return true;
}

void project_pair(ComplexGrid& c0, ComplexGrid& c1, const GridSpec& g) {
  VectorField v(ScalarField::spectral(g, std::move(c0)), ScalarField::spectral(g, std::move(c1)));
  VectorField p = leray_project(v);
  c0 = std::move(p[0].coefficients());
  c1 = std::move(p[1].coefficients());
}

// Nonlinear and forcing terms; the viscous term is left to the caller.
Coeffs nonlinear_terms(const GridSpec& g, double t, const Coeffs& state, const SolverConfig& cfg) {
  if (!all_finite(state)) throw BlowupDetected(t, std::nullopt, "non-finite field at t = " + std::to_string(t));

  std::array<RealGrid, 6> val;
  std::array<std::array<RealGrid, 2>, 6> grad;  // grad[slot][m] = d_m field
  for (int s = 0; s < 6; ++s) {
    const ScalarField spec = dealias(ScalarField::spectral(g, state[s]));
    val[s] = to_physical(spec).values();
    for (int m = 0; m < 2; ++m) grad[s][m] = to_physical(partial(spec, m)).values();
  }

  std::array<RealGrid, 6> out;
  for (int j = 0; j < 2; ++j) {
    // -u . grad u_j + sum_i F_.i . grad F_ji
    RealGrid acc = g.zeros_real();
    for (int m = 0; m < 2; ++m) {
      acc -= val[u_slot(m)] * grad[u_slot(j)][m];
      for (int i = 0; i < 2; ++i) acc += val[F_slot(m, i)] * grad[F_slot(j, i)][m];
    }
    out[u_slot(j)] = std::move(acc);
  }
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) {
      // -u . grad F_jk + F_.k . grad u_j
      RealGrid acc = g.zeros_real();
      for (int m = 0; m < 2; ++m) {
        acc -= val[u_slot(m)] * grad[F_slot(j, k)][m];
        acc += val[F_slot(m, k)] * grad[u_slot(j)][m];
      }
      out[F_slot(j, k)] = std::move(acc);
    }

  Coeffs result;
  for (int s = 0; s < 6; ++s) {
    result[s] = to_spectral(ScalarField::physical(g, std::move(out[s]))).coefficients();
    dealias_in_place(result[s], g);
  }
  if (cfg.forcing) {
    const VectorField gu = as_spectral(cfg.forcing->g_u(t));
    const TensorField gF = as_spectral(cfg.forcing->g_F(t));
    for (int j = 0; j < 2; ++j) result[u_slot(j)] += gu[j].coefficients();
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) result[F_slot(j, k)] += gF.entry(j, k).coefficients();
  }
  project_pair(result[0], result[1], g);
  if (!all_finite(result)) throw BlowupDetected(t, std::nullopt, "non-finite tendency at t = " + std::to_string(t));
  return result;
}

// exp(-nu |k|^2 tau) per mode.
RealGrid viscous_factor(const GridSpec& g, double nu, double tau) {
  RealGrid e(g.n(), g.n());
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
      e(i1, i2) = std::exp(-nu * (k1 * k1 + k2 * k2) * tau);
    }
  return e;
}

double removed_norm(const ComplexGrid& before0, const ComplexGrid& before1, const ComplexGrid& after0,
                    const ComplexGrid& after1) {
  const double sum = (before0 - after0).abs2().sum() + (before1 - after1).abs2().sum();
  return GridSpec::length() * std::sqrt(sum);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw UsageError("nu must be finite and >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw UsageError("dt_max must be positive");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw UsageError("fixed dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw UsageError("t_end must be finite and >= 0");
  if (snapshot_interval < 0) throw UsageError("snapshot_interval must be >= 0");
  if (diagnostics_interval < 1) throw UsageError("diagnostics_interval must be >= 1");
  if (!(gradu_ceiling > 0.0)) throw UsageError("gradu_ceiling must be positive");
  if (!(energy_tolerance > 0.0)) throw UsageError("energy tolerance must be positive");
}

StateDerivative rhs(const State& state, const SolverConfig& cfg) {
  const GridSpec& g = state.grid();
  Coeffs d = nonlinear_terms(g, state.t, pack(state), cfg);
  if (cfg.nu > 0.0) {
    const VectorField lap = laplacian(as_spectral(state.u));
    for (int j = 0; j < 2; ++j) d[j] += cfg.nu * lap[j].coefficients();
  }
  State packed = unpack(g, state.t, d);
  return {std::move(packed.u), std::move(packed.F)};
}

State step(const State& state, double dt, const SolverConfig& cfg, StepInfo* info) {
  if (!(dt > 0.0)) throw UsageError("step: dt must be positive");
  const GridSpec& g = state.grid();
  const double t = state.t;
  const Coeffs y = pack(state);

  const RealGrid half = viscous_factor(g, cfg.nu, 0.5 * dt);
  const RealGrid full = viscous_factor(g, cfg.nu, dt);
  // Integrating factor acts on the two velocity slots only.
  auto scale = [&](const Coeffs& c, const RealGrid& e) {
    Coeffs out = c;
    for (int j = 0; j < 2; ++j) out[j] = out[j] * e.cast<std::complex<double>>();
    return out;
  };
  auto axpy = [](const Coeffs& base, double a, const Coeffs& x) {
    Coeffs out = base;
    for (int s = 0; s < 6; ++s) out[s] += a * x[s];
    return out;
  };

  const Coeffs k1 = nonlinear_terms(g, t, y, cfg);
  const Coeffs y2 = scale(axpy(y, 0.5 * dt, k1), half);
  const Coeffs k2 = nonlinear_terms(g, t + 0.5 * dt, y2, cfg);
  const Coeffs y3 = axpy(scale(y, half), 0.5 * dt, k2);
  const Coeffs k3 = nonlinear_terms(g, t + 0.5 * dt, y3, cfg);
  const Coeffs y4 = axpy(scale(y, full), dt, scale(k3, half));
  const Coeffs k4 = nonlinear_terms(g, t + dt, y4, cfg);

  Coeffs next = scale(y, full);
  const Coeffs k1e = scale(k1, full);
  const Coeffs k23e = scale(axpy(k2, 1.0, k3), half);
  for (int s = 0; s < 6; ++s) next[s] += (dt / 6.0) * (k1e[s] + 2.0 * k23e[s] + k4[s]);

  const Coeffs before = next;
  project_pair(next[0], next[1], g);
  project_pair(next[2], next[3], g);
  project_pair(next[4], next[5], g);
  if (info != nullptr) {
    info->projection_u = removed_norm(before[0], before[1], next[0], next[1]);
    info->projection_F = std::hypot(removed_norm(before[2], before[3], next[2], next[3]),
                                    removed_norm(before[4], before[5], next[4], next[5]));
  }
  if (!all_finite(next)) throw BlowupDetected(t + dt, std::nullopt, "non-finite state at t = " + std::to_string(t + dt));
  return unpack(g, t + dt, next);
}

double adaptive_dt(double u_inf, double F_inf, const SolverConfig& cfg) {
  return std::min(cfg.dt_max, cfg.cfl * cfg.grid.dx() / (u_inf + F_inf + kSpeedFloor));
}

double adaptive_dt(const State& state, const SolverConfig& cfg) {
  const VectorField u = as_physical(state.u);
  const TensorField F = as_physical(state.F);
  const double u_inf = (u[0].values().square() + u[1].values().square()).sqrt().maxCoeff();
  RealGrid frob = state.grid().zeros_real();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) frob += F.entry(i, k).values().square();
  return adaptive_dt(u_inf, frob.sqrt().maxCoeff(), cfg);
}

State prepare_initial_state(const State& initial) {
  State s{initial.t, leray_project(dealias(as_spectral(initial.u))), as_spectral(initial.F)};
  for (int k = 0; k < 2; ++k) s.F.column(k) = leray_project(dealias(s.F.column(k)));
  return s;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::blowup_detected: return "blowup-detected";
    case Termination::certificate_violation: return "certificate-violation-halt";
  }
  return "unknown";
}

RunResult simulate(const SolverConfig& cfg, const State& initial, const RunCallbacks& callbacks) {
  cfg.validate();
  if (!(initial.grid() == cfg.grid)) throw UsageError("initial state grid does not match the configuration");
  const bool forced = cfg.forcing.has_value();
  const double t_end = initial.t + cfg.t_end;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));

  State s = prepare_initial_state(initial);
  RunResult result{s, {}, Termination::completed, {}, 0};
  if (callbacks.on_step) callbacks.on_step(s);
  if (callbacks.on_snapshot && cfg.snapshot_interval > 0) callbacks.on_snapshot(s);

  auto push_record = [&](const State& state, const State* prior_state, double projection_F) {
    const DiagnosticsRecord* prior = result.history.empty() ? nullptr : &result.history.back();
    result.history.push_back(record(state, cfg.nu, prior, prior_state, projection_F));
    if (callbacks.on_record) callbacks.on_record(result.history.back());
    return result.history.back();
  };
  auto check = [&](const DiagnosticsRecord& rec) -> bool {
    if (!std::isfinite(rec.linf_gradu) || rec.linf_gradu > cfg.gradu_ceiling) {
      std::ostringstream msg;
      msg << "||grad u||_inf = " << rec.linf_gradu << " exceeds ceiling " << cfg.gradu_ceiling << " at t = " << rec.t;
      result.reason = Termination::blowup_detected;
      result.message = msg.str();
      return false;
    }
    if (cfg.strict) {
      if (auto v = record_violation(result.history, forced, cfg.energy_tolerance)) {
        result.reason = Termination::certificate_violation;
        result.message = *v;
        return false;
      }
    }
    return true;
  };

  State recorded = s;
  bool running = check(push_record(s, nullptr, 0.0));
  while (running && s.t < t_end - eps) {
    double dt = cfg.fixed_dt ? *cfg.fixed_dt : adaptive_dt(s, cfg);
    dt = std::min(dt, t_end - s.t);
    StepInfo info;
    try {
      s = step(s, dt, cfg, &info);
    } catch (const BlowupDetected& e) {
      result.reason = Termination::blowup_detected;
      result.message = e.what();
      break;
    }
    ++result.steps;
    if (callbacks.on_step) callbacks.on_step(s);
    if (callbacks.on_snapshot && cfg.snapshot_interval > 0 && result.steps % cfg.snapshot_interval == 0)
      callbacks.on_snapshot(s);
    const bool last = s.t >= t_end - eps;
    if (last || result.steps % cfg.diagnostics_interval == 0) {
      running = check(push_record(s, &recorded, info.projection_F));
      recorded = s;
    }
  }
  result.final_state = std::move(s);
  return result;
}

}  // namespace vspc
