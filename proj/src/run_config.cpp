#include "vspc/run_config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vspc/errors.hpp"
#include "vspc/initial_conditions.hpp"
#include "vspc/snapshot.hpp"

namespace vspc {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"solver", {"n", "nu", "cfl", "t_end", "dt_max", "fixed_dt", "gradu_ceiling"}},
      {"initial", {"type", "amplitude", "perturbation", "manufactured", "path"}},
      {"output", {"dir", "snapshot_interval", "diagnostics_interval"}},
      {"certificates", {"strict", "energy_tol"}},
  };
  return s;
}

template <class T>
void read(const pt::ptree& tree, const std::string& key, T& target) {
  const auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'));
  if (!node) return;
  const auto value = node->get_value_optional<T>();
  if (!value) throw UsageError("config key " + key + ": cannot parse '" + node->data() + "'");
  target = *value;
}

void read_bool(const pt::ptree& tree, const std::string& key, bool& target) {
  const auto text = tree.get_optional<std::string>(key);
  if (!text) return;
  if (*text == "true" || *text == "1" || *text == "yes") target = true;
  else if (*text == "false" || *text == "0" || *text == "no") target = false;
  else throw UsageError("config key " + key + ": expected true or false, got '" + *text + "'");
}

InitialKind parse_initial(const std::string& s) {
  if (s == "taylor-green") return InitialKind::taylor_green;
  if (s == "steady-identity") return InitialKind::steady_identity;
  if (s == "perturbed-identity") return InitialKind::perturbed_identity;
  if (s == "manufactured") return InitialKind::manufactured;
  if (s == "from-snapshot") return InitialKind::from_snapshot;
  throw UsageError("unknown initial type '" + s + "'");
}

ManufacturedKind parse_manufactured(const std::string& s) {
  if (s == "steady") return ManufacturedKind::steady;
  if (s == "taylor-green") return ManufacturedKind::taylor_green;
  if (s == "banded") return ManufacturedKind::banded;
  if (s == "smooth") return ManufacturedKind::smooth;
  throw UsageError("unknown manufactured solution '" + s + "'");
}

}  // namespace

void RunConfig::validate() const {
  (void)GridSpec(n);
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw UsageError("nu must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw UsageError("cfl must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw UsageError("t_end must be >= 0");
  if (!(dt_max > 0.0)) throw UsageError("dt_max must be > 0");
  if (!(fixed_dt >= 0.0)) throw UsageError("fixed_dt must be >= 0 (0 selects adaptive steps)");
  if (!(gradu_ceiling > 0.0)) throw UsageError("gradu_ceiling must be > 0");
  if (snapshot_interval < 0) throw UsageError("snapshot_interval must be >= 0");
  if (diagnostics_interval < 1) throw UsageError("diagnostics_interval must be >= 1");
  if (!(energy_tolerance > 0.0)) throw UsageError("energy_tol must be > 0");
  if (initial == InitialKind::from_snapshot && snapshot_path.empty())
    throw UsageError("initial type from-snapshot needs a path");
  if (output_dir.empty()) throw UsageError("output dir must not be empty");
}

RunConfig parse_run_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw UsageError("config: unknown section [" + section + "]");
    if (!body.data().empty()) throw UsageError("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw UsageError("config: unknown key " + section + "." + key);
  }

  RunConfig cfg;
  read(tree, "solver.n", cfg.n);
  read(tree, "solver.nu", cfg.nu);
  read(tree, "solver.cfl", cfg.cfl);
  read(tree, "solver.t_end", cfg.t_end);
  read(tree, "solver.dt_max", cfg.dt_max);
  read(tree, "solver.fixed_dt", cfg.fixed_dt);
  read(tree, "solver.gradu_ceiling", cfg.gradu_ceiling);
  if (auto s = tree.get_optional<std::string>("initial.type")) cfg.initial = parse_initial(*s);
  read(tree, "initial.amplitude", cfg.amplitude);
  read(tree, "initial.perturbation", cfg.perturbation);
  if (auto s = tree.get_optional<std::string>("initial.manufactured")) cfg.manufactured = parse_manufactured(*s);
  read(tree, "initial.path", cfg.snapshot_path);
  read(tree, "output.dir", cfg.output_dir);
  read(tree, "output.snapshot_interval", cfg.snapshot_interval);
  read(tree, "output.diagnostics_interval", cfg.diagnostics_interval);
  read_bool(tree, "certificates.strict", cfg.strict);
  read(tree, "certificates.energy_tol", cfg.energy_tolerance);
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path.string());
  return parse_run_config(in);
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::taylor_green: return "taylor-green";
    case InitialKind::steady_identity: return "steady-identity";
    case InitialKind::perturbed_identity: return "perturbed-identity";
    case InitialKind::manufactured: return "manufactured";
    case InitialKind::from_snapshot: return "from-snapshot";
  }
  return "?";
}

std::string to_string(ManufacturedKind kind) {
  switch (kind) {
    case ManufacturedKind::steady: return "steady";
    case ManufacturedKind::taylor_green: return "taylor-green";
    case ManufacturedKind::banded: return "banded";
    case ManufacturedKind::smooth: return "smooth";
  }
  return "?";
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"solver",
           {{"n", cfg.n},
            {"nu", cfg.nu},
            {"cfl", cfg.cfl},
            {"t_end", cfg.t_end},
            {"dt_max", cfg.dt_max},
            {"fixed_dt", cfg.fixed_dt},
            {"gradu_ceiling", cfg.gradu_ceiling}}},
          {"initial",
           {{"type", to_string(cfg.initial)},
            {"amplitude", cfg.amplitude},
            {"perturbation", cfg.perturbation},
            {"manufactured", to_string(cfg.manufactured)},
            {"path", cfg.snapshot_path}}},
          {"output",
           {{"dir", cfg.output_dir},
            {"snapshot_interval", cfg.snapshot_interval},
            {"diagnostics_interval", cfg.diagnostics_interval}}},
          {"certificates", {{"strict", cfg.strict}, {"energy_tol", cfg.energy_tolerance}}}};
}

RunSetup make_run_setup(const RunConfig& cfg) {
  cfg.validate();
  const GridSpec grid(cfg.n);
  SolverConfig sc;
  sc.grid = grid;
  sc.nu = cfg.nu;
  sc.cfl = cfg.cfl;
  sc.t_end = cfg.t_end;
  sc.dt_max = cfg.dt_max;
  if (cfg.fixed_dt > 0.0) sc.fixed_dt = cfg.fixed_dt;
  sc.gradu_ceiling = cfg.gradu_ceiling;
  sc.snapshot_interval = cfg.snapshot_interval;
  sc.diagnostics_interval = cfg.diagnostics_interval;
  sc.strict = cfg.strict;
  sc.energy_tolerance = cfg.energy_tolerance;

  switch (cfg.initial) {
    case InitialKind::taylor_green:
      return {sc, taylor_green_state(grid, cfg.amplitude)};
    case InitialKind::steady_identity:
      return {sc, steady_identity_state(grid)};
    case InitialKind::perturbed_identity:
      return {sc, perturbed_identity_state(grid, cfg.amplitude, cfg.perturbation)};
    case InitialKind::manufactured: {
      ManufacturedProblem mp = manufactured(cfg.manufactured, grid, cfg.nu);
      sc.forcing = std::move(mp.forcing);
      return {sc, std::move(mp.initial)};
    }
    case InitialKind::from_snapshot: {
      State s = read_state_snapshot(cfg.snapshot_path);
      if (!(s.grid() == grid))
        throw UsageError("snapshot grid n = " + std::to_string(s.grid().n()) + " differs from solver.n = " +
                         std::to_string(cfg.n));
      return {sc, std::move(s)};
    }
  }
  throw UsageError("unhandled initial type");
}

}  // namespace vspc
