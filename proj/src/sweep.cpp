#include "swarmauth/sweep.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <ostream>

#include "swarmauth/error.hpp"

namespace swarmauth::sim {
namespace {

SweepRow row_of(const TimingReport& r) {
  return {r.scenario, r.method, r.t, r.n_drones, r.total};
}

std::vector<SweepRow> sweep_point(const SweepSpec& spec, std::size_t value) {
  auto cfg = spec.base;
  std::vector<SweepRow> rows;
  if (spec.variable == SweepVariable::kThreshold) {
    cfg.threshold = value;
    cfg.guards.reset();
    cfg.n_drones.reset();
    cfg.scenario = ScenarioKind::kInclusion;
    auto inclusion = run_scenario(cfg);
    if (!inclusion.outcome.accepted) {
      throw Error(Errc::kConfigError, "sweep point t=" + std::to_string(value) + " was " +
                                          inclusion.outcome.describe());
    }
    rows.push_back(row_of(inclusion.reports.front()));
    cfg.scenario = ScenarioKind::kNr5g;
    cfg.n_drones = 1;
    rows.push_back(row_of(run_scenario(cfg).reports.front()));
    rows.back().t = value;
  } else {
    cfg.n_drones = value;
    cfg.scenario = ScenarioKind::kBulk;
    for (const auto& r : run_scenario(cfg).reports) rows.push_back(row_of(r));
  }
  return rows;
}

}  // namespace

void SweepSpec::validate() const {
  if (step == 0) throw Error(Errc::kConfigError, "sweep step must be >= 1");
  if (from > to) throw Error(Errc::kConfigError, "sweep range is empty");
  if (variable == SweepVariable::kThreshold && from < 2) {
    throw Error(Errc::kConfigError, "threshold sweep must start at t >= 2");
  }
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "threshold" || name == "t") return SweepVariable::kThreshold;
  if (name == "n_drones") return SweepVariable::kNDrones;
  throw Error(Errc::kConfigError, "unknown sweep variable '" + std::string(name) + "'");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::size_t> values;
  for (std::size_t v = spec.from; v <= spec.to; v += spec.step) {
    values.push_back(v);
    if (spec.to - v < spec.step) break;
  }
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  SweepResult result;
  for (std::size_t first = 0; first < values.size(); first += width) {
    std::vector<std::future<std::vector<SweepRow>>> jobs;
    for (std::size_t i = first; i < std::min(values.size(), first + width); ++i) {
      jobs.push_back(std::async(std::launch::async, sweep_point, std::cref(spec), values[i]));
    }
    for (auto& j : jobs) {
      auto rows = j.get();
      result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
  }
  if (spec.variable == SweepVariable::kThreshold) result.crossover = crossover(spec.base.latency);
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << kCsvHeader << '\n';
  for (const auto& r : result.rows) {
    out << r.scenario << ',' << to_string(r.method) << ',' << r.t << ',' << r.n_drones << ','
        << format_ms(r.time) << '\n';
  }
}

}  // namespace swarmauth::sim
