#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "alcs/checks.hpp"
#include "alcs/config.hpp"
#include "alcs/experiments.hpp"
#include "alcs/snapshot.hpp"

namespace {

// Loads a config file (or the defaults when path is empty) and applies key=value overrides.
alcs::RunConfig load_with_overrides(const std::string& path, const std::vector<std::string>& sets) {
  alcs::RunConfig cfg = path.empty() ? alcs::RunConfig{} : alcs::load_config(path);
  std::vector<std::string> problems;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      problems.push_back("--set " + kv + ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    try {
      alcs::set_config_value(cfg, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    } catch (const alcs::ConfigError& e) {
      for (const auto& p : e.problems()) problems.push_back("--set " + kv + ": " + p);
    }
  }
  if (!problems.empty()) throw alcs::ConfigError(problems);
  alcs::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active liquid-crystal pseudo-spectral solver"};
  app.require_subcommand(1);

  std::string config, config_b, snapshot;
  std::vector<std::string> sets;
  double s_exp = 1.0;

  auto* run = app.add_subcommand("run", "Integrate one configuration");
  run->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", sets, "Override key=value (repeatable)");

  alcs::CheckOptions copt;
  std::string fault;
  auto* check = app.add_subcommand("check", "Run the invariant suite and print a pass/fail table");
  check->add_option("config", config, "Config file (grid N, L are used)")->check(CLI::ExistingFile);
  check->add_option("--set", sets, "Override key=value (repeatable)");
  check->add_option("--seed", copt.seed, "Seed for the random ensembles");
  check->add_option("--inject-fault", fault, "Mutation hook")
      ->check(CLI::IsMember({"stress-sign"}))
      ->group("");

  auto* twin = app.add_subcommand("twin", "Run two configurations from shared initial data");
  twin->add_option("config_a", config, "Reference config")->required()->check(CLI::ExistingFile);
  twin->add_option("config_b", config_b, "Comparison config")->required()->check(CLI::ExistingFile);

  std::string axis;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "Batch of runs varying one axis");
  sweep->add_option("config", config, "Base config")->required()->check(CLI::ExistingFile);
  sweep->add_option("--axis", axis, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"kappa", "n_trunc", "eps"}));
  sweep->add_option("--values", values, "Axis values")->required()->delimiter(',');
  sweep->add_option("--set", sets, "Override key=value (repeatable)");

  auto* lp = app.add_subcommand("lp-norm", "Dyadic H^s norms of a snapshot");
  lp->add_option("snapshot", snapshot, "Snapshot file")->required();
  lp->add_option("-s,--s", s_exp, "Sobolev exponent");

  auto* info = app.add_subcommand("info", "Print a snapshot header and field ranges");
  info->add_option("snapshot", snapshot, "Snapshot file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return alcs::cmd_run(load_with_overrides(config, sets), std::cout);
    if (*check) {
      if (fault == "stress-sign") copt.stress_sign = -1.0;
      return alcs::cmd_check(load_with_overrides(config, sets), copt, std::cout);
    }
    if (*twin) return alcs::cmd_twin(alcs::load_config(config), alcs::load_config(config_b), std::cout);
    if (*sweep) return alcs::cmd_sweep(load_with_overrides(config, sets), axis, values, std::cout);
    if (*lp) return alcs::cmd_lp_norm(snapshot, s_exp, std::cout);
    if (*info) return alcs::cmd_info(snapshot, std::cout);
  } catch (const alcs::ConfigError& e) {
    for (const auto& p : e.problems()) std::cerr << "config error: " << p << "\n";
    return alcs::kExitFailure;
  } catch (const alcs::SnapshotError& e) {
    std::cerr << "snapshot error: " << e.what() << "\n";
    return alcs::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return alcs::kExitFailure;
  }
  return alcs::kExitFailure;
}
