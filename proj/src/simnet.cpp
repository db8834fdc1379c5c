#include "swarmauth/simnet.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "swarmauth/error.hpp"

namespace swarmauth::sim {

namespace {

struct FieldEntry {
  const char* name;
  Nanos LatencyModel::*member;
};

constexpr FieldEntry kFields[] = {
    {"ue_core_round_trip", &LatencyModel::ue_core_round_trip},
    {"asym_encrypt", &LatencyModel::asym_encrypt},
    {"asym_decrypt", &LatencyModel::asym_decrypt},
    {"hash_op", &LatencyModel::hash_op},
    {"drone_to_drone", &LatencyModel::drone_to_drone},
    {"ec_point_mul", &LatencyModel::ec_point_mul},
};

bool is_core(const DroneId& id) { return id.swarm == kCoreSwarm; }

}  // namespace

void LatencyModel::validate() const {
  for (const auto& f : kFields) {
    if ((this->*f.member).count() < 0) {
      throw Error(Errc::kConfigError, std::string("latency.") + f.name + " must be >= 0");
    }
  }
}

Nanos LatencyModel::cost(const Work& w) const {
  return ec_point_mul * w.point_muls + asym_encrypt * w.asym_encrypts +
         asym_decrypt * w.asym_decrypts + hash_op * w.hashes;
}

const std::vector<std::string>& latency_field_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : kFields) v.emplace_back(f.name);
    return v;
  }();
  return names;
}

Nanos LatencyModel::*latency_field(std::string_view name) {
  for (const auto& f : kFields) {
    if (name == f.name) return f.member;
  }
  return nullptr;
}

Nanos time_nr5g(const LatencyModel& m) {
  return 2 * m.ue_core_round_trip + m.asym_encrypt + m.asym_decrypt + 2 * m.hash_op;
}

Nanos time_group_auth(std::size_t t, const LatencyModel& m) {
  if (t < 2) throw Error(Errc::kThresholdTooSmall, "need t >= 2");
  return static_cast<Nanos::rep>(t) * (m.drone_to_drone + m.ec_point_mul);
}

BulkTimes time_bulk_admission(std::size_t n, std::size_t t, const LatencyModel& m) {
  if (n == 0) return {};
  const auto count = static_cast<Nanos::rep>(n);
  return {count * m.drone_to_drone + time_group_auth(t, m), count * time_nr5g(m)};
}

CrossoverReport crossover(const LatencyModel& m, std::size_t t_max) {
  CrossoverReport r;
  const auto baseline = time_nr5g(m);
  for (std::size_t t = 2; t <= t_max; ++t) {
    if (time_group_auth(t, m) > baseline) {
      r.crossover_t = t;
      break;
    }
  }
  // Zero means group auth never became slower within t_max.
  r.claim_conservative = r.crossover_t == 0 || r.crossover_t > r.claimed_bound;
  return r;
}

std::string CrossoverReport::describe() const {
  std::ostringstream s;
  if (crossover_t == 0) {
    s << "crossover_t=none";
  } else {
    s << "crossover_t=" << crossover_t;
  }
  s << " claimed_bound=" << claimed_bound;
  if (claim_conservative) {
    s << " note=advertised bound t<" << claimed_bound
      << " is conservative under this latency model";
  } else {
    s << " note=advertised bound t<" << claimed_bound
      << " exceeds the crossover of this latency model";
  }
  return s.str();
}

std::string format_ms(Nanos d) {
  const bool neg = d.count() < 0;
  const auto abs_ns = neg ? -d.count() : d.count();
  const auto micros = (abs_ns + 500) / 1000;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%03lld", neg ? "-" : "",
                static_cast<long long>(micros / 1000), static_cast<long long>(micros % 1000));
  return buf;
}

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::kInclusion: return "inclusion";
    case ScenarioKind::kUnification: return "unification";
    case ScenarioKind::kNr5g: return "nr5g";
    case ScenarioKind::kBulk: return "bulk";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  return m == Method::kNr5g ? "nr-5g" : "group-auth";
}

std::string_view to_string(AdversaryMode m) {
  switch (m) {
    case AdversaryMode::kNone: return "none";
    case AdversaryMode::kReplay: return "replay";
    case AdversaryMode::kEavesdrop: return "eavesdrop";
    case AdversaryMode::kMitm: return "mitm";
  }
  return "unknown";
}

std::string TimingReport::to_line() const {
  std::ostringstream s;
  s << "scenario=" << scenario << " method=" << to_string(method) << " t=" << t
    << " n_drones=" << n_drones << " total_ms=" << format_ms(total)
    << " outcome=" << outcome.describe() << " phases=";
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (i) s << ',';
    s << phases[i].name << ':' << format_ms(phases[i].duration);
    if (!phases[i].critical) s << '*';
  }
  return s.str();
}

// ---------------------------------------------------------------- EventLoop

void EventLoop::schedule(Nanos at, std::function<void()> action) {
  queue_.push({at, seq_++, std::move(action)});
}

void EventLoop::run() {
  while (!queue_.empty()) {
    auto ev = queue_.top();
    queue_.pop();
    now_ = std::max(now_, ev.at);
    ++fired_;
    ev.action();
  }
}

// --------------------------------------------------------------- SimNetwork

Nanos SimNetwork::latency(const DroneId& from, const DroneId& to) const {
  const auto rtt = model_.ue_core_round_trip;
  if (is_core(to)) return rtt / 2;
  if (is_core(from)) return rtt - rtt / 2;
  return model_.drone_to_drone;
}

std::vector<Delivery> SimNetwork::transmit(const ProtocolMessage& msg,
                                           std::span<const DroneId> receivers) {
  const auto from = msg.sender;
  Nanos start = clock(from);
  const bool on_medium = std::any_of(receivers.begin(), receivers.end(),
                                     [&](const DroneId& r) { return !is_core(r) && !is_core(from); });
  if (on_medium && !model_.concurrent_broadcast) {
    start = std::max(start, channel_free_);
    channel_free_ = start + model_.drone_to_drone;
  }
  if (on_medium) clock(from) = start + model_.drone_to_drone;
  acted(from);

  std::vector<Delivery> out;
  for (const auto& to : receivers) {
    const auto arrival = start + latency(from, to);
    for (auto& m : on_wire(to, msg)) {
      loop_.schedule(arrival, [this, &out, to, arrival, m = std::move(m)]() mutable {
        receive(to, arrival);
        out.push_back({arrival.count(), to, std::move(m)});
      });
    }
  }
  loop_.run();
  return out;
}

Nanos SimNetwork::send_packet(const DroneId& from, const DroneId& to) {
  Nanos start = clock(from);
  const bool on_medium = !is_core(from) && !is_core(to);
  if (on_medium && !model_.concurrent_broadcast) {
    start = std::max(start, channel_free_);
    channel_free_ = start + model_.drone_to_drone;
  }
  acted(from);
  const auto arrival = start + latency(from, to);
  loop_.schedule(arrival, [this, to, arrival] { receive(to, arrival); });
  loop_.run();
  return arrival;
}

void SimNetwork::receive(const DroneId& node, Nanos at) {
  const auto& id = resolve(node);
  if (!model_.concurrent_broadcast) {
    clock(id) = std::max(clock(id), at);
    return;
  }
  auto& h = heard_[id];
  h = std::max(h, at);
  if (woken_.insert(id).second) clock(id) = std::max(clock(id), at);
}

void SimNetwork::compute(const DroneId& node, const Work& work) {
  auto& c = clock(node);
  if (auto it = heard_.find(resolve(node)); it != heard_.end()) c = std::max(c, it->second);
  c += model_.cost(work);
  acted(node);
  loop_.schedule(c, [] {});
  loop_.run();
}

void SimNetwork::alias(const DroneId& as, const DroneId& node) {
  const auto& target = resolve(node);
  if (as == target) return;
  auto own = ready_.find(as);
  if (own != ready_.end()) {
    clock(target) = std::max(clock(target), own->second);
    ready_.erase(own);
  }
  if (auto h = heard_.find(as); h != heard_.end()) {
    heard_[target] = std::max(heard_[target], h->second);
    heard_.erase(h);
  }
  aliases_[as] = target;
}

const DroneId& SimNetwork::resolve(const DroneId& node) const {
  auto it = aliases_.find(node);
  return it == aliases_.end() ? node : it->second;
}

Nanos SimNetwork::ready(const DroneId& node) const {
  auto it = ready_.find(resolve(node));
  return it == ready_.end() ? Nanos{0} : it->second;
}

Nanos SimNetwork::horizon() const {
  Nanos h = loop_.now();
  for (const auto& [_, t] : ready_) h = std::max(h, t);
  for (const auto& [_, t] : heard_) h = std::max(h, t);
  return h;
}

void SimNetwork::mark(std::string_view phase) {
  const auto h = horizon();
  phases_.push_back({std::string(phase), h - last_mark_, true});
  last_mark_ = h;
}

}  // namespace swarmauth::sim
