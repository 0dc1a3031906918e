#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace vspc {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitCertificate = 3;

/// Runs the simulation a config file describes. Writes into the output
/// directory: metadata.json (config echo, thread count, termination),
/// diagnostics.csv, certificates.json, snapshots/step_<k>.vspc when enabled
/// and final.vspc.
int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);

struct VerifyExactOptions {
  std::string fidelity = "both";  // corrected | printed | both
  double alpha = 2.0, beta = 1.0, f0 = 1.0;
  int samples = 100;
  std::uint64_t seed = 20240531;
  /// When set, the synthetic gradient history of (alpha, beta, f0) sampled on
  /// [0, 0.9 t*] is written there as a diagnostics CSV.
  std::optional<std::string> history_csv;
  double history_step = 0.001;
};

/// Explicit-family checks: residual sweep, linear-profile ODE against the
/// closed form, BKM integral closed form against adaptive quadrature and the
/// extrapolator on a synthetic history.
int cmd_verify_exact(const VerifyExactOptions& opts, std::ostream& out, std::ostream& err);

/// mode = "spatial" or "temporal".
int cmd_convergence(const std::string& mode, std::ostream& out, std::ostream& err);

/// Recomputes the BKM report and the certificates from a diagnostics CSV and
/// prints them as JSON.
int cmd_criterion_report(const std::string& csv_path, std::ostream& out, std::ostream& err);

}  // namespace vspc
