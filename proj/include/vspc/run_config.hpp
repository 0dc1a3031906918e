#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "vspc/manufactured.hpp"
#include "vspc/solver.hpp"

namespace vspc {

enum class InitialKind { taylor_green, steady_identity, perturbed_identity, manufactured, from_snapshot };

/// Everything a `run` needs. The file form is INI-like:
///
///   [solver]        n, nu, cfl, t_end, dt_max, fixed_dt, gradu_ceiling
///   [initial]       type = taylor-green | steady-identity | perturbed-identity
///                          | manufactured | from-snapshot
///                   amplitude, perturbation, manufactured (steady | taylor-green
///                   | banded | smooth), path
///   [output]        dir, snapshot_interval, diagnostics_interval
///   [certificates]  strict, energy_tol
///
/// Every key is optional; defaults are those of the struct.
struct RunConfig {
  int n = 64;
  double nu = 0.0;
  double cfl = 0.5;
  double t_end = 1.0;
  double dt_max = 0.01;
  double fixed_dt = 0.0;  // 0 = adaptive
  double gradu_ceiling = 1e6;

  InitialKind initial = InitialKind::taylor_green;
  double amplitude = 1.0;
  double perturbation = 0.1;
  ManufacturedKind manufactured = ManufacturedKind::banded;
  std::string snapshot_path;

  std::string output_dir = "vspc-out";
  int snapshot_interval = 0;
  int diagnostics_interval = 1;

  bool strict = false;
  double energy_tolerance = kDefaultEnergyTolerance;

  /// Throws UsageError for values that no run could use.
  void validate() const;
};

/// Throws UsageError for unreadable files, unknown sections or keys and
/// malformed values.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

/// The config as JSON with the same section/key layout as the file.
nlohmann::json to_json(const RunConfig& cfg);

std::string to_string(InitialKind kind);
std::string to_string(ManufacturedKind kind);

/// Solver settings and initial state described by the config. For a
/// manufactured run the forcing is attached to the returned solver config.
struct RunSetup {
  SolverConfig solver;
  State initial;
};
RunSetup make_run_setup(const RunConfig& cfg);

}  // namespace vspc
