// swarmauth_cli: run scenarios, sweeps and attack drills.
//
//   swarmauth_cli run --config scenario.yaml
//   swarmauth_cli sweep --variable threshold --from 2 --to 20 --out fig.csv
//   swarmauth_cli attack --mode replay --config scenario.yaml
//
// Exit status: 0 success, 1 usage or config error, 2 protocol rejection or
// attack not thwarted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "swarmauth/error.hpp"
#include "swarmauth/simnet.hpp"
#include "swarmauth/sweep.hpp"

namespace sim = swarmauth::sim;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kRejected = 2;

sim::ScenarioConfig base_config(const std::string& path, std::optional<std::uint64_t> seed) {
  sim::ScenarioConfig cfg = path.empty() ? sim::ScenarioConfig{} : sim::load_config(path);
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed,
            const std::string& transcript_path) {
  auto cfg = base_config(path, seed);
  auto result = sim::run_scenario(cfg);
  for (const auto& r : result.reports) std::cout << r.to_line() << '\n';
  if (cfg.scenario == sim::ScenarioKind::kInclusion || cfg.scenario == sim::ScenarioKind::kNr5g) {
    std::cout << sim::crossover(cfg.latency).describe() << '\n';
  }
  if (!transcript_path.empty()) {
    std::ofstream out(transcript_path);
    if (!out) throw swarmauth::Error(swarmauth::Errc::kIoError, "cannot write " + transcript_path);
    for (const auto& line : result.transcript) out << line << '\n';
  }
  if (cfg.adversary != sim::AdversaryMode::kNone) {
    auto attack = sim::inject_adversary(cfg, cfg.adversary);
    for (const auto& c : attack.checks) std::cout << "  " << c << '\n';
    std::cout << "attack=" << sim::to_string(attack.mode)
              << " thwarted=" << (attack.thwarted ? "yes" : "no") << '\n';
    if (!attack.thwarted) return kRejected;
  }
  return result.outcome.accepted ? kOk : kRejected;
}

int cmd_sweep(const std::string& path, std::optional<std::uint64_t> seed,
              const std::string& variable, std::size_t from, std::size_t to, std::size_t step,
              const std::string& out_path) {
  sim::SweepSpec spec;
  spec.variable = sim::parse_sweep_variable(variable);
  spec.from = from;
  spec.to = to;
  spec.step = step;
  spec.base = base_config(path, seed);
  spec.validate();
  auto result = sim::run_sweep(spec);
  if (out_path.empty()) {
    sim::write_csv(std::cout, result);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw swarmauth::Error(swarmauth::Errc::kIoError, "cannot write " + out_path);
    sim::write_csv(out, result);
    if (!out.flush()) throw swarmauth::Error(swarmauth::Errc::kIoError, "write failed: " + out_path);
  }
  if (result.crossover) std::cerr << result.crossover->describe() << '\n';
  return kOk;
}

int cmd_attack(const std::string& path, std::optional<std::uint64_t> seed,
               const std::string& mode_name) {
  sim::AdversaryMode mode;
  if (mode_name == "replay") mode = sim::AdversaryMode::kReplay;
  else if (mode_name == "eavesdrop") mode = sim::AdversaryMode::kEavesdrop;
  else if (mode_name == "mitm") mode = sim::AdversaryMode::kMitm;
  else {
    std::cerr << "error: unknown attack mode '" << mode_name
              << "' (expected replay, eavesdrop or mitm)\n";
    return kUsage;
  }
  auto report = sim::inject_adversary(base_config(path, seed), mode);
  for (const auto& c : report.checks) std::cout << c << '\n';
  std::cout << "attack=" << sim::to_string(mode)
            << " thwarted=" << (report.thwarted ? "yes" : "no") << '\n';
  if (!report.thwarted) {
    std::cerr << "error: attack " << mode_name << " was not thwarted\n";
    return kRejected;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold group authentication for drone swarms"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;

  auto* run = app.add_subcommand("run", "Run one scenario and print its timing report");
  run->add_option("--config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_path, "Write the message transcript here");

  std::string variable;
  std::size_t from = 0, to = 0, step = 1;
  auto* sweep = app.add_subcommand("sweep", "Sweep threshold or n_drones and emit CSV");
  sweep->add_option("--config", config_path, "Base scenario file")->check(CLI::ExistingFile);
  sweep->add_option("--seed", seed, "Override the scenario seed");
  sweep->add_option("--variable", variable, "threshold | n_drones")->required();
  sweep->add_option("--from", from, "First value (inclusive)")->required();
  sweep->add_option("--to", to, "Last value (inclusive)")->required();
  sweep->add_option("--step", step, "Increment")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV destination (default: stdout)");

  std::string mode;
  auto* attack = app.add_subcommand("attack", "Run an attack drill; exit 0 when it is thwarted");
  attack->add_option("--mode", mode, "replay | eavesdrop | mitm")->required();
  attack->add_option("--config", config_path, "Scenario file")->check(CLI::ExistingFile);
  attack->add_option("--seed", seed, "Override the scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(config_path, seed, out_path);
    if (*sweep) return cmd_sweep(config_path, seed, variable, from, to, step, out_path);
    if (*attack) return cmd_attack(config_path, seed, mode);
  } catch (const swarmauth::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
