#include <iostream>

#include <CLI11.hpp>

#include "vspc/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Oldroyd solver with regularity-criterion monitoring"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "run the simulation described by a config file");
  run->add_option("config", config, "INI config file")->required();

  vspc::VerifyExactOptions verify;
  auto* exact = app.add_subcommand("verify-exact", "check the explicit blowup family against its oracles");
  exact->add_option("--fidelity", verify.fidelity, "corrected | printed | both")->capture_default_str();
  exact->add_option("--alpha", verify.alpha)->capture_default_str();
  exact->add_option("--beta", verify.beta)->capture_default_str();
  exact->add_option("--f0", verify.f0)->capture_default_str();
  exact->add_option("--samples", verify.samples, "random residual samples")->capture_default_str();
  exact->add_option("--seed", verify.seed)->capture_default_str();
  exact->add_option("--history-step", verify.history_step, "sampling step of the synthetic history")
      ->capture_default_str();
  std::string history_csv;
  auto* history_opt = exact->add_option("--write-history", history_csv, "write the synthetic history as CSV");

  std::string mode;
  auto* conv = app.add_subcommand("convergence", "spatial or temporal convergence study");
  conv->add_option("--mode", mode, "spatial | temporal")->required();

  std::string csv;
  auto* report = app.add_subcommand("criterion-report", "certificates and BKM report from a diagnostics CSV");
  report->add_option("csv", csv, "diagnostics CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vspc::kExitUsage;
  }

  if (*run) return vspc::cmd_run(config, std::cout, std::cerr);
  if (*exact) {
    if (*history_opt) verify.history_csv = history_csv;
    return vspc::cmd_verify_exact(verify, std::cout, std::cerr);
  }
  if (*conv) return vspc::cmd_convergence(mode, std::cout, std::cerr);
  return vspc::cmd_criterion_report(csv, std::cout, std::cerr);
}
