#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vspc/diagnostics.hpp"
#include "vspc/state.hpp"

namespace vspc {

/// Time-dependent sources added to the momentum and deformation equations.
/// Both callables return spectral fields on the solver grid.
struct ForcingSpec {
  std::function<VectorField(double)> g_u;
  std::function<TensorField(double)> g_F;
};

struct SolverConfig {
  GridSpec grid{64};
  double nu = 0.0;
  double cfl = 0.5;
  double t_end = 1.0;
  double dt_max = 0.01;
  /// When set, every step uses this dt (clipped at t_end) instead of the CFL rule.
  std::optional<double> fixed_dt;
  std::optional<ForcingSpec> forcing;
  int snapshot_interval = 0;     // steps between snapshots; 0 disables
  int diagnostics_interval = 1;  // steps between diagnostics records
  double gradu_ceiling = 1e6;    // ||grad u||_inf above this counts as blowup
  bool strict = false;           // halt on the first certificate violation
  double energy_tolerance = kDefaultEnergyTolerance;

  /// Throws UsageError for nu < 0, cfl outside (0, 1], non-positive dt caps
  /// or intervals, or a negative t_end.
  void validate() const;
};

struct StateDerivative {
  VectorField du;
  TensorField dF;
};

/// Thrown when a field turns non-finite or ||grad u||_inf passes the ceiling.
class BlowupDetected : public std::runtime_error {
 public:
  BlowupDetected(double time, std::optional<DiagnosticsRecord> last, const std::string& what)
      : std::runtime_error(what), time_(time), last_(std::move(last)) {}
  double time() const { return time_; }
  const std::optional<DiagnosticsRecord>& last_record() const { return last_; }

 private:
  double time_;
  std::optional<DiagnosticsRecord> last_;
};

/// du/dt = P[-u.grad u + F_.i.grad F_.i] + nu Delta u + P g_u and
/// dF_.k/dt = -u.grad F_.k + F_.k.grad u + g_F,k, with every quadratic product
/// formed in physical space from dealiased inputs and dealiased afterwards.
/// Returned fields are spectral.
StateDerivative rhs(const State& state, const SolverConfig& cfg);

struct StepInfo {
  double projection_u = 0.0;  // L2 size of the post-step re-projection
  double projection_F = 0.0;
};

/// One integrating-factor RK4 step (exact exp(-nu |k|^2 tau) on the viscous
/// term of u), followed by re-projection of u and of both F columns onto
/// divergence-free fields. Returns a spectral state at t + dt.
State step(const State& state, double dt, const SolverConfig& cfg, StepInfo* info = nullptr);

/// min(dt_max, cfl dx / (||u||_inf + ||F||_inf + 1e-10)), dx = 2 pi / n, with
/// ||u||_inf the largest pointwise |u| and ||F||_inf the largest pointwise
/// Frobenius norm.
double adaptive_dt(const State& state, const SolverConfig& cfg);
double adaptive_dt(double u_inf, double F_inf, const SolverConfig& cfg);

/// Initial data as the stepper sees it: spectral, dealiased, with u and the F
/// columns projected onto divergence-free fields.
State prepare_initial_state(const State& initial);

enum class Termination { completed, blowup_detected, certificate_violation };
std::string to_string(Termination t);

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRecord> history;
  Termination reason = Termination::completed;
  std::string message;
  int steps = 0;
};

struct RunCallbacks {
  /// Called with the prepared initial state and after every step.
  std::function<void(const State&)> on_step;
  /// Called at t = 0 and every snapshot_interval steps (when enabled).
  std::function<void(const State&)> on_snapshot;
  std::function<void(const DiagnosticsRecord&)> on_record;
};

/// Advances to t_end, or until blowup or (in strict mode) a certificate
/// violation. Always records diagnostics at the initial and final times.
RunResult simulate(const SolverConfig& cfg, const State& initial, const RunCallbacks& callbacks = {});

}  // namespace vspc
