#pragma once

// Deterministic discrete-event simulation of the authentication flows.
//
// Time is integer nanoseconds. Drone-to-drone transmissions share one radio
// medium and are serialized; drone/UE-to-core links have a fixed one-way
// latency of half the configured round trip. Each node computes serially.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "swarmauth/message.hpp"
#include "swarmauth/network.hpp"

namespace swarmauth::sim {

using Nanos = std::chrono::nanoseconds;
using namespace std::chrono_literals;

struct LatencyModel {
  Nanos ue_core_round_trip = 10ms;
  Nanos asym_encrypt = 100us;
  Nanos asym_decrypt = 1500us;
  Nanos hash_op = 0us;
  Nanos drone_to_drone = 600us;
  Nanos ec_point_mul = 612us;
  // Drone broadcasts do not contend for the medium, and a node's next
  // transmission waits only for the first message that woke it.
  bool concurrent_broadcast = false;

  /// Throws Error{kConfigError} if any duration is negative.
  void validate() const;
  Nanos cost(const Work& w) const;

  static LatencyModel zero() { return {0ns, 0ns, 0ns, 0ns, 0ns, 0ns, false}; }
};

/// Field names accepted in config files, in declaration order.
const std::vector<std::string>& latency_field_names();
/// Member pointer for a field name; nullptr when unknown.
Nanos LatencyModel::*latency_field(std::string_view name);

// Closed forms the simulator must reproduce.
Nanos time_nr5g(const LatencyModel& m);
/// t * (drone_to_drone + ec_point_mul); throws ThresholdTooSmall for t < 2.
Nanos time_group_auth(std::size_t t, const LatencyModel& m);

struct BulkTimes {
  Nanos group{0};
  Nanos nr5g{0};
};
BulkTimes time_bulk_admission(std::size_t n, std::size_t t, const LatencyModel& m);

struct CrossoverReport {
  // First threshold at which group authentication is slower than the baseline.
  std::size_t crossover_t = 0;
  // Advertised bound below which group authentication is preferable.
  std::size_t claimed_bound = 10;
  bool claim_conservative = false;
  std::string describe() const;
};
CrossoverReport crossover(const LatencyModel& m, std::size_t t_max = 100000);

/// "21.600"
std::string format_ms(Nanos d);

// ---------------------------------------------------------------- event loop

class EventLoop {
 public:
  void schedule(Nanos at, std::function<void()> action);
  /// Fires events in (time, insertion) order until the queue is empty.
  void run();
  Nanos now() const noexcept { return now_; }
  std::uint64_t fired() const noexcept { return fired_; }

 private:
  struct Event {
    Nanos at;
    std::uint64_t seq;
    std::function<void()> action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  Nanos now_{0};
  std::uint64_t seq_ = 0;
  std::uint64_t fired_ = 0;
};

struct Phase {
  std::string name;
  Nanos duration{0};
  bool critical = true;
};

class SimNetwork final : public Network {
 public:
  explicit SimNetwork(LatencyModel model) : model_(model) {}

  std::vector<Delivery> transmit(const ProtocolMessage& msg,
                                 std::span<const DroneId> receivers) override;
  void compute(const DroneId& node, const Work& work) override;
  void mark(std::string_view phase) override;
  void alias(const DroneId& as, const DroneId& node) override;

  /// Moves one opaque packet from `from` to `to`; returns the arrival time.
  Nanos send_packet(const DroneId& from, const DroneId& to);

  Nanos horizon() const;
  Nanos ready(const DroneId& node) const;
  const std::vector<Phase>& phases() const noexcept { return phases_; }
  const LatencyModel& model() const noexcept { return model_; }
  EventLoop& loop() noexcept { return loop_; }

 private:
  Nanos latency(const DroneId& from, const DroneId& to) const;
  const DroneId& resolve(const DroneId& node) const;
  Nanos& clock(const DroneId& node) { return ready_[resolve(node)]; }
  void receive(const DroneId& node, Nanos at);
  void acted(const DroneId& node) { woken_.erase(resolve(node)); }

  LatencyModel model_;
  EventLoop loop_;
  std::map<DroneId, Nanos> ready_;
  std::map<DroneId, DroneId> aliases_;
  // Concurrent mode: latest arrival per node, and nodes already woken since
  // their last action.
  std::map<DroneId, Nanos> heard_;
  std::set<DroneId> woken_;
  Nanos channel_free_{0};
  Nanos last_mark_{0};
  std::vector<Phase> phases_;
};

// -------------------------------------------------------------- scenarios

enum class ScenarioKind { kInclusion, kUnification, kNr5g, kBulk };
enum class Method { kNr5g, kGroupAuth };
enum class AdversaryMode { kNone, kReplay, kEavesdrop, kMitm };
enum class GroupChoice { kRistretto255, kToy };

std::string_view to_string(ScenarioKind k);
std::string_view to_string(Method m);
std::string_view to_string(AdversaryMode m);

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::kInclusion;
  std::size_t threshold = 5;
  // inclusion/unification: drones per swarm; nr5g: UEs; bulk: new arrivals.
  std::optional<std::size_t> n_drones;
  // Guards per swarm; defaults to threshold - 1.
  std::optional<std::size_t> guards;
  std::uint64_t seed = 1;
  AdversaryMode adversary = AdversaryMode::kNone;
  GroupChoice group = GroupChoice::kRistretto255;
  std::uint64_t toy_order = (1ull << 61) - 1;
  bool mutual = false;
  std::size_t supi_length = 15;
  LatencyModel latency;

  std::size_t guard_count() const { return guards.value_or(threshold - 1); }
  std::size_t drone_count() const {
    if (n_drones) return *n_drones;
    switch (scenario) {
      case ScenarioKind::kNr5g: return 1;
      case ScenarioKind::kBulk: return 100;
      default: return guard_count();
    }
  }
  /// Cross-field checks; throws Error{kConfigError}.
  void validate() const;
};

/// Parses the YAML scenario format; throws Error{kConfigError} naming the field.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

struct TimingReport {
  std::string scenario;
  Method method = Method::kGroupAuth;
  std::size_t t = 0;
  std::size_t n_drones = 0;
  Nanos total{0};
  std::vector<Phase> phases;
  Outcome outcome;

  /// key=value line with phase breakdown.
  std::string to_line() const;
};

struct ScenarioResult {
  std::vector<TimingReport> reports;
  std::vector<std::string> transcript;
  Outcome outcome;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

// ------------------------------------------------------------- adversary

struct AttackReport {
  AdversaryMode mode = AdversaryMode::kNone;
  bool thwarted = false;
  std::vector<std::string> checks;  // one "ok|FAIL: ..." line per assertion
};

/// Runs the attack named by `mode` against the scenario described by `config`.
AttackReport inject_adversary(const ScenarioConfig& config, AdversaryMode mode);

}  // namespace swarmauth::sim
