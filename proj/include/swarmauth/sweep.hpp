#pragma once

// Parameter sweeps over the simulator, emitted as CSV.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmauth/simnet.hpp"

namespace swarmauth::sim {

enum class SweepVariable { kThreshold, kNDrones };

struct SweepSpec {
  SweepVariable variable = SweepVariable::kThreshold;
  std::size_t from = 2;
  std::size_t to = 20;
  std::size_t step = 1;
  ScenarioConfig base;

  /// Throws Error{kConfigError} for an empty range or a zero step.
  void validate() const;
};

/// Accepts "threshold" (or "t") and "n_drones".
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepRow {
  std::string scenario;
  Method method = Method::kGroupAuth;
  std::size_t t = 0;
  std::size_t n_drones = 0;
  Nanos time{0};
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Present for threshold sweeps.
  std::optional<CrossoverReport> crossover;
};

/// Threshold sweeps time inclusion against the baseline; n_drones sweeps
/// time bulk admission. Points run concurrently; rows keep sweep order.
SweepResult run_sweep(const SweepSpec& spec);

inline constexpr std::string_view kCsvHeader = "scenario,method,t,n_drones,time_ms";
void write_csv(std::ostream& out, const SweepResult& result);

}  // namespace swarmauth::sim
