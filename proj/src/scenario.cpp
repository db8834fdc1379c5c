#include <algorithm>
#include <set>
#include <sstream>

#include "swarmauth/baseline5g.hpp"
#include "swarmauth/error.hpp"
#include "swarmauth/protocol.hpp"
#include "swarmauth/simnet.hpp"

namespace swarmauth::sim {
namespace {

constexpr SwarmId kSwarmA = 1;
constexpr SwarmId kSwarmB = 2;

bool is_critical(std::string_view phase) {
  return phase != "key_delivery" && phase != "verdict";
}

TimingReport make_report(const ScenarioConfig& cfg, Method method, std::size_t n,
                         std::vector<Phase> phases, Outcome outcome) {
  TimingReport r;
  r.scenario = std::string(to_string(cfg.scenario));
  r.method = method;
  r.t = cfg.threshold;
  r.n_drones = n;
  r.phases = std::move(phases);
  for (const auto& p : r.phases) {
    if (p.critical) r.total += p.duration;
  }
  r.outcome = std::move(outcome);
  return r;
}

std::vector<Phase> classify(std::vector<Phase> phases, bool all_critical) {
  for (auto& p : phases) p.critical = all_critical || is_critical(p.name);
  return phases;
}

// ----------------------------------------------------------------- scenarios

template <PrimeOrderGroup G>
ScenarioResult run_inclusion_scenario(const G& g, const ScenarioConfig& cfg) {
  Rng rng(cfg.seed);
  CoreNetwork<G> core(g, rng.fork());
  auto swarm = core.provision_swarm(kSwarmA, cfg.threshold, cfg.drone_count(), cfg.guard_count());
  auto candidate = core.enroll(kSwarmA);
  SimNetwork net(cfg.latency);
  auto run = run_inclusion(g, swarm, candidate, net, rng);

  ScenarioResult out;
  out.outcome = run.outcome;
  out.transcript = run.transcript.lines();
  out.reports.push_back(make_report(cfg, Method::kGroupAuth, cfg.drone_count(),
                                    classify(net.phases(), false), run.outcome));
  return out;
}

template <PrimeOrderGroup G>
ScenarioResult run_unification_scenario(const G& g, const ScenarioConfig& cfg) {
  Rng rng(cfg.seed);
  CoreNetwork<G> core(g, rng.fork());
  const auto n = cfg.drone_count();
  auto a = core.provision_swarm(kSwarmA, cfg.threshold, n, cfg.guard_count());
  auto b = core.provision_swarm(kSwarmB, cfg.threshold, n, cfg.guard_count());
  SimNetwork net(cfg.latency);
  auto run = run_unification(g, a, b, core, net, rng, UnificationOptions{cfg.mutual});

  ScenarioResult out;
  out.outcome = run.outcome;
  out.transcript = run.transcript.lines();
  out.reports.push_back(
      make_report(cfg, Method::kGroupAuth, n, classify(net.phases(), true), run.outcome));
  return out;
}

std::string digest_prefix(ByteView payload) {
  auto d = sha256(payload);
  return to_hex(ByteView(d).first(8));
}

ScenarioResult run_nr5g_scenario(const ScenarioConfig& cfg) {
  Ristretto255 g;
  Rng rng(cfg.seed);
  auto keys = nr5g::generate_network_keys(g, rng);
  const auto n = cfg.drone_count();

  std::vector<Phase> totals;
  ScenarioResult out;
  out.outcome = Outcome::accept();
  Nanos offset{0};
  const auto core = core_endpoint();

  for (std::size_t i = 0; i < n; ++i) {
    const DroneId ue{kSwarmA, i + 1};
    auto supi = nr5g::random_supi(rng, cfg.supi_length);

    // Real exchange for correctness; its operation counts drive the clock.
    nr5g::Counters counters;
    auto suci = nr5g::compute_suci(g, supi, keys.public_key, rng, &counters);
    auto state = nr5g::udm_challenge(g, suci, keys, rng, &counters);
    auto hxres = nr5g::ausf_hxres(state, &counters);
    auto res = nr5g::ue_response(suci, state.rand);
    const bool seaf_ok = nr5g::seaf_check(res, hxres, &counters);
    auto released = seaf_ok ? nr5g::ausf_confirm(res, state) : std::nullopt;
    if (!released || !(*released == supi)) {
      out.outcome = Outcome::reject("nr5g-authentication-failed");
    }

    SimNetwork net(cfg.latency);
    auto log = [&](Nanos at, std::string_view kind, const DroneId& from, const DroneId& to,
                   ByteView payload) {
      std::ostringstream s;
      s << (offset + at).count() << ' ' << kind << ' ' << to_string(from) << ' '
        << to_string(to) << ' ' << digest_prefix(payload);
      out.transcript.push_back(s.str());
    };

    net.compute(ue, Work{0, counters.asym_encrypts, 0, 0});
    net.mark("ue_encrypt");
    log(net.send_packet(ue, core), "Suci", ue, core, suci.ciphertext);
    net.mark("uplink_1");
    net.compute(core, Work{0, 0, counters.asym_decrypts, 0});
    net.mark("udm_decrypt");
    net.compute(core, Work{0, 0, 0, counters.hashes / 2});
    net.mark("ausf_hash");
    log(net.send_packet(core, ue), "Challenge", core, ue, state.rand);
    net.mark("downlink_1");
    log(net.send_packet(ue, core), "Res", ue, core, res);
    net.mark("uplink_2");
    net.compute(core, Work{0, 0, 0, counters.hashes - counters.hashes / 2});
    net.mark("seaf_hash");
    Bytes verdict{static_cast<std::uint8_t>(released ? 1 : 0)};
    log(net.send_packet(core, ue), "Confirm", core, ue, verdict);
    net.mark("downlink_2");

    if (totals.empty()) {
      totals = net.phases();
    } else {
      for (std::size_t k = 0; k < totals.size(); ++k) totals[k].duration += net.phases()[k].duration;
    }
    offset += net.horizon();
  }
  out.reports.push_back(make_report(cfg, Method::kNr5g, n, std::move(totals), out.outcome));
  return out;
}

template <PrimeOrderGroup G>
ScenarioResult run_bulk_scenario(const G& g, const ScenarioConfig& cfg) {
  const auto n = cfg.drone_count();
  ScenarioResult out;
  out.outcome = Outcome::accept();

  auto baseline = time_bulk_admission(n, cfg.threshold, cfg.latency).nr5g;
  auto nr = make_report(cfg, Method::kNr5g, n, {{"sequential_nr5g", baseline, true}},
                        Outcome::accept());
  if (n == 0) {
    out.reports.push_back(make_report(cfg, Method::kGroupAuth, 0, {}, Outcome::accept()));
    out.reports.push_back(std::move(nr));
    return out;
  }

  Rng rng(cfg.seed);
  CoreNetwork<G> core(g, rng.fork());
  auto swarm = core.provision_swarm(kSwarmA, cfg.threshold, cfg.guard_count(), cfg.guard_count());
  std::vector<Drone<G>> arrivals;
  for (std::size_t i = 0; i < n; ++i) arrivals.push_back(core.enroll(kSwarmA));

  SimNetwork net(cfg.latency);
  auto guards = swarm.lowest_guards(cfg.threshold - 1);
  std::vector<DroneId> guard_ids;
  for (auto* d : guards) guard_ids.push_back(d->id);

  // Every arrival puts its public share on the air once.
  std::vector<PublicShare<G>> heard;
  for (auto* d : guards) heard.push_back(public_share(g, d->share));
  for (auto& a : arrivals) {
    ProtocolMessage m{MessageKind::kSharePublish, a.id, rng.nonce(),
                      encode(g, public_share(g, a.share))};
    for (const auto& d : net.transmit(m, guard_ids)) {
      if (d.receiver == guard_ids.front()) heard.push_back(decode_public_share(g, d.message.payload));
    }
  }
  net.mark("share_broadcast");

  // One threshold round admits the first arrival and anchors the batch.
  auto run = run_inclusion(g, swarm, arrivals.front(), net, rng);
  out.transcript = run.transcript.lines();
  Outcome outcome = run.outcome;

  if (outcome.accepted && !verify_group_batch<G>(g, heard, swarm.commitment, cfg.threshold)) {
    outcome = Outcome::reject("batch-verification-failed");
  }
  if (outcome.accepted) {
    // Inclusion grew the swarm, so earlier guard pointers may dangle.
    auto& guard = *swarm.lowest_guards(1).front();
    const auto guard_public = public_share(g, guard.share).Y;
    for (std::size_t i = 1; i < arrivals.size(); ++i) {
      auto& a = arrivals[i];
      net.compute(guard.id, Work{1, 0, 0, 0});
      auto msg = deliver_group_key(g, guard, a.id, public_share(g, a.share), rng.nonce());
      for (const auto& d : net.transmit_one(msg, a.id)) {
        net.compute(a.id, Work{1, 0, 0, 0});
        if (accept_group_key(g, a, guard_public, d.message) != Receipt::kAccepted) {
          outcome = Outcome::reject("key-delivery-failed");
        }
      }
    }
    net.mark("key_delivery");
  }

  // Consecutive key_delivery marks (inclusion and batch) stay separate entries.
  out.outcome = outcome;
  out.reports.push_back(
      make_report(cfg, Method::kGroupAuth, n, classify(net.phases(), false), outcome));
  out.reports.push_back(std::move(nr));
  return out;
}

template <PrimeOrderGroup G>
ScenarioResult dispatch(const G& g, const ScenarioConfig& cfg) {
  switch (cfg.scenario) {
    case ScenarioKind::kInclusion: return run_inclusion_scenario(g, cfg);
    case ScenarioKind::kUnification: return run_unification_scenario(g, cfg);
    case ScenarioKind::kBulk: return run_bulk_scenario(g, cfg);
    case ScenarioKind::kNr5g: return run_nr5g_scenario(cfg);
  }
  throw Error(Errc::kConfigError, "unknown scenario");
}

// ------------------------------------------------------------------ adversary

class Checklist {
 public:
  void check(bool ok, std::string what) {
    all_ = all_ && ok;
    lines_.push_back((ok ? "ok: " : "FAIL: ") + std::move(what));
  }
  bool all() const { return all_; }
  std::vector<std::string> take() { return std::move(lines_); }

 private:
  bool all_ = true;
  std::vector<std::string> lines_;
};

struct Captured {
  DroneId to;
  ProtocolMessage msg;
};

// Passive tap; optionally delivers everything twice.
class Recorder final : public Interceptor {
 public:
  explicit Recorder(bool duplicate = false) : duplicate_(duplicate) {}
  std::vector<ProtocolMessage> intercept(const DroneId& to, const ProtocolMessage& msg) override {
    seen.push_back({to, msg});
    if (duplicate_) return {msg, msg};
    return {msg};
  }
  std::vector<Captured> seen;

 private:
  bool duplicate_;
};

// Rewrites messages matching a predicate.
class Rewriter final : public Interceptor {
 public:
  using Match = std::function<bool(const DroneId&, const ProtocolMessage&)>;
  using Edit = std::function<void(ProtocolMessage&)>;
  Rewriter(Match match, Edit edit) : match_(std::move(match)), edit_(std::move(edit)) {}
  std::vector<ProtocolMessage> intercept(const DroneId& to, const ProtocolMessage& msg) override {
    auto copy = msg;
    if (match_(to, copy)) {
      edit_(copy);
      ++hits;
    }
    return {copy};
  }
  std::size_t hits = 0;

 private:
  Match match_;
  Edit edit_;
};

template <PrimeOrderGroup G>
struct Fixture {
  Rng rng;
  CoreNetwork<G> core;
  Swarm<G> a;
  Swarm<G> b;

  Fixture(const G& g, const ScenarioConfig& cfg)
      : rng(cfg.seed), core(g, rng.fork()) {
    const auto n = std::max(cfg.drone_count(), cfg.guard_count());
    a = core.provision_swarm(kSwarmA, cfg.threshold, n, cfg.guard_count());
    b = core.provision_swarm(kSwarmB, cfg.threshold, n, cfg.guard_count());
  }
};

template <PrimeOrderGroup G>
void replay_attack(const G& g, const ScenarioConfig& cfg, Checklist& c) {
  Fixture<G> f(g, cfg);
  auto pristine = f.a;
  auto candidate = f.core.enroll(kSwarmA);
  const auto before = candidate;

  // Every delivery arrives twice; nonce caches must absorb the copies.
  Recorder dup(true);
  SimNetwork net(cfg.latency);
  net.set_interceptor(&dup);
  auto run = run_inclusion(g, f.a, candidate, net, f.rng);
  c.check(run.outcome.accepted && candidate.group_key == f.a.drones.front().group_key,
          "duplicated deliveries do not disturb inclusion");

  // Verbatim replay of the captured key delivery.
  const Captured* key_msg = nullptr;
  for (const auto& cap : dup.seen) {
    if (cap.msg.kind == MessageKind::kEncryptedGroupKey) key_msg = &cap;
  }
  if (key_msg) {
    auto* guard = f.a.find(key_msg->msg.sender.x);
    auto receipt =
        accept_group_key(g, candidate, public_share(g, guard->share).Y, key_msg->msg);
    c.check(receipt == Receipt::kReplay, "replayed EncryptedGroupKey dropped by nonce cache");
  } else {
    c.check(false, "EncryptedGroupKey captured");
  }

  // Verbatim replay of a captured SharePublish into a guard.
  const Captured* publish = nullptr;
  for (const auto& cap : dup.seen) {
    if (cap.msg.kind == MessageKind::kSharePublish && cap.msg.sender == candidate.id) {
      publish = &cap;
      break;
    }
  }
  if (publish) {
    auto* guard = f.a.find(publish->to.x);
    c.check(guard && !guard->nonces.admit(publish->msg),
            "replayed SharePublish dropped by guard nonce cache");

    // Impersonation: an impostor re-publishes the captured share under a fresh
    // nonce. Verification passes but the key is sealed to the real share.
    auto impostor = before;
    impostor.share.y = g.random_scalar(f.rng);
    impostor.nonces = {};
    SimNetwork net2(cfg.latency);
    auto captured = decode_public_share(g, publish->msg.payload);
    auto run2 = run_inclusion(g, pristine, impostor, captured, net2, f.rng);
    c.check(!run2.outcome.accepted && !impostor.group_key,
            "re-published share yields no group key (" + run2.outcome.describe() + ")");
  } else {
    c.check(false, "SharePublish captured");
  }

  // Replayed cross-issue request to the core.
  Recorder rec;
  SimNetwork net3(cfg.latency);
  net3.set_interceptor(&rec);
  auto uni = run_unification(g, f.a, f.b, f.core, net3, f.rng);
  c.check(uni.outcome.accepted, "unification under observation succeeds");
  auto request = std::find_if(rec.seen.begin(), rec.seen.end(), [](const Captured& cap) {
    return cap.msg.kind == MessageKind::kCrossIssueRequest;
  });
  c.check(request != rec.seen.end() && !f.core.nonces().admit(request->msg),
          "replayed CrossIssueRequest dropped by core");

  // Baseline: a stale RES does not answer a fresh challenge.
  Ristretto255 rg;
  Rng r5(cfg.seed ^ 0x5a5a);
  auto keys = nr5g::generate_network_keys(rg, r5);
  auto supi = nr5g::random_supi(r5, cfg.supi_length);
  auto suci = nr5g::compute_suci(rg, supi, keys.public_key, r5);
  auto first = nr5g::udm_challenge(rg, suci, keys, r5);
  auto stale = nr5g::ue_response(suci, first.rand);
  auto second = nr5g::udm_challenge(rg, suci, keys, r5);
  c.check(!nr5g::seaf_check(stale, nr5g::ausf_hxres(second)) &&
              !nr5g::ausf_confirm(stale, second),
          "stale nr5g RES rejected against a fresh challenge");
}

template <PrimeOrderGroup G>
void substitute_point(const G& g, ProtocolMessage& m, Rng& rng) {
  auto share = decode_public_share(g, m.payload);
  share.Y = g.random_point(rng);
  m.payload = encode(g, share);
}

template <PrimeOrderGroup G>
void mitm_attack(const G& g, const ScenarioConfig& cfg, Checklist& c) {
  {
    Fixture<G> f(g, cfg);
    auto candidate = f.core.enroll(kSwarmA);
    Rng evil(cfg.seed + 17);
    Rewriter rw(
        [&](const DroneId&, const ProtocolMessage& m) {
          return m.kind == MessageKind::kSharePublish && m.sender == candidate.id;
        },
        [&](ProtocolMessage& m) { substitute_point(g, m, evil); });
    SimNetwork net(cfg.latency);
    net.set_interceptor(&rw);
    auto run = run_inclusion(g, f.a, candidate, net, f.rng);
    c.check(rw.hits > 0 && !run.outcome.accepted && !candidate.group_key,
            "substituted candidate share rejected (" + run.outcome.describe() + ")");
  }
  {
    Fixture<G> f(g, cfg);
    auto candidate = f.core.enroll(kSwarmA);
    Rng evil(cfg.seed + 18);
    const auto victim = f.a.lowest_guards(1).front()->id;
    Rewriter rw(
        [&](const DroneId&, const ProtocolMessage& m) {
          return m.kind == MessageKind::kSharePublish && m.sender == victim;
        },
        [&](ProtocolMessage& m) { substitute_point(g, m, evil); });
    SimNetwork net(cfg.latency);
    net.set_interceptor(&rw);
    auto run = run_inclusion(g, f.a, candidate, net, f.rng);
    c.check(rw.hits > 0 && !run.outcome.accepted && !candidate.group_key,
            "substituted guard share rejected (" + run.outcome.describe() + ")");
  }
  {
    Fixture<G> f(g, cfg);
    auto candidate = f.core.enroll(kSwarmA);
    Rewriter rw(
        [](const DroneId&, const ProtocolMessage& m) {
          return m.kind == MessageKind::kEncryptedGroupKey;
        },
        [](ProtocolMessage& m) { m.payload.front() ^= 0x01; });
    SimNetwork net(cfg.latency);
    net.set_interceptor(&rw);
    auto run = run_inclusion(g, f.a, candidate, net, f.rng);
    c.check(rw.hits > 0 && !run.outcome.accepted && !candidate.group_key,
            "tampered EncryptedGroupKey rejected (" + run.outcome.describe() + ")");
  }
  {
    Fixture<G> f(g, cfg);
    Rng evil(cfg.seed + 19);
    const auto designated = f.a.lowest_guards(1).front()->id;
    Rewriter rw(
        [&](const DroneId& to, const ProtocolMessage& m) {
          return m.kind == MessageKind::kSharePublish && m.sender.swarm == kSwarmB &&
                 to.swarm == kSwarmB && f.b.find(m.sender.x) == nullptr;
        },
        [&](ProtocolMessage& m) { substitute_point(g, m, evil); });
    SimNetwork net(cfg.latency);
    net.set_interceptor(&rw);
    auto run = run_unification(g, f.a, f.b, f.core, net, f.rng);
    const auto b_key = f.core.dealer(kSwarmB).polynomial().group_key();
    bool leaked = false;
    for (const auto& d : f.a.drones) leaked = leaked || (d.group_key && *d.group_key == b_key);
    c.check(rw.hits > 0 && !run.outcome.accepted && !leaked,
            "substituted share of " + to_string(designated) + " rejected in unification (" +
                run.outcome.describe() + ")");
  }
  {
    Fixture<G> f(g, cfg);
    Rewriter rw(
        [](const DroneId&, const ProtocolMessage& m) {
          return m.kind == MessageKind::kCrossIssueResponse;
        },
        [](ProtocolMessage& m) { m.payload.back() ^= 0x80; });
    SimNetwork net(cfg.latency);
    net.set_interceptor(&rw);
    auto run = run_unification(g, f.a, f.b, f.core, net, f.rng);
    c.check(rw.hits > 0 && !run.outcome.accepted,
            "tampered CrossIssueResponse rejected (" + run.outcome.describe() + ")");
  }

  Ristretto255 rg;
  Rng r5(cfg.seed ^ 0xa5a5);
  auto keys = nr5g::generate_network_keys(rg, r5);
  for (auto [tamper, name] : {std::pair{nr5g::Tamper::kSuci, "suci"},
                              std::pair{nr5g::Tamper::kRand, "rand"},
                              std::pair{nr5g::Tamper::kHxres, "hxres"},
                              std::pair{nr5g::Tamper::kRes, "res"},
                              std::pair{nr5g::Tamper::kResAfterSeaf, "res-after-seaf"}}) {
    auto supi = nr5g::random_supi(r5, cfg.supi_length);
    auto flow = nr5g::run_flow(rg, supi, keys, r5, tamper);
    c.check(!flow.supi && !flow.rejected_at.empty(),
            std::string("nr5g tampered ") + name + " rejected at " + flow.rejected_at);
  }
}

bool contains(const Bytes& hay, const Bytes& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

template <PrimeOrderGroup G>
void eavesdrop_attack(const G& g, const ScenarioConfig& cfg, Checklist& c) {
  Fixture<G> f(g, cfg);
  auto candidate = f.core.enroll(kSwarmA);
  Recorder rec;
  SimNetwork net(cfg.latency);
  net.set_interceptor(&rec);
  auto inc = run_inclusion(g, f.a, candidate, net, f.rng);
  auto uni = run_unification(g, f.a, f.b, f.core, net, f.rng, UnificationOptions{cfg.mutual});
  c.check(inc.outcome.accepted && uni.outcome.accepted, "observed runs complete");

  std::vector<Bytes> wire;
  for (const auto& cap : rec.seen) wire.push_back(encode_message(cap.msg));

  // Secrets that must never appear in clear.
  std::vector<Bytes> secrets;
  secrets.push_back(g.encode_scalar(f.core.dealer(kSwarmA).polynomial().group_key()));
  secrets.push_back(g.encode_scalar(f.core.dealer(kSwarmB).polynomial().group_key()));
  for (const auto* s : {&f.a, &f.b}) {
    for (const auto& d : s->drones) {
      secrets.push_back(g.encode_scalar(d.share.y));
      if (d.cross_share) secrets.push_back(g.encode_scalar(d.cross_share->y));
    }
  }
  secrets.push_back(g.encode_scalar(candidate.share.y));
  bool clear = true;
  for (const auto& w : wire) {
    for (const auto& s : secrets) clear = clear && !contains(w, s);
  }
  c.check(clear, "no private share or group key appears on the wire (" +
                     std::to_string(wire.size()) + " messages, " +
                     std::to_string(secrets.size()) + " secrets)");

  // Try every key an observer can build from public material.
  std::vector<PointOf<G>> points{f.a.commitment.Q, f.b.commitment.Q, f.core.public_key()};
  for (const auto& cap : rec.seen) {
    if (cap.msg.kind != MessageKind::kSharePublish) continue;
    try {
      points.push_back(decode_public_share(g, cap.msg.payload).Y);
    } catch (const Error&) {
    }
  }
  const std::size_t singles = points.size();
  for (std::size_t i = 0; i < singles; ++i) {
    for (std::size_t j = i + 1; j < singles; ++j) points.push_back(g.point_add(points[i], points[j]));
  }
  std::vector<SymmetricKey> guesses;
  for (const auto& p : points) guesses.push_back(kdf(g.encode_point(p)));

  std::size_t sealed = 0;
  bool opened = false;
  for (const auto& cap : rec.seen) {
    const auto kind = cap.msg.kind;
    if (kind != MessageKind::kEncryptedGroupKey && kind != MessageKind::kCrossIssueResponse &&
        kind != MessageKind::kUnifiedKeyBroadcast) {
      continue;
    }
    ++sealed;
    const Bytes aads[] = {associated_data(cap.msg.sender, cap.to, cap.msg.nonce),
                          associated_data(cap.msg.sender, swarm_broadcast(cap.to.swarm),
                                          cap.msg.nonce)};
    for (const auto& k : guesses) {
      for (const auto& aad : aads) {
        opened = opened || aead_open(k, cap.msg.nonce, aad, cap.msg.payload).has_value();
      }
    }
  }
  c.check(sealed > 0 && !opened, "no ciphertext opens under " + std::to_string(guesses.size()) +
                                     " keys derived from public points (" +
                                     std::to_string(sealed) + " ciphertexts)");
}

template <PrimeOrderGroup G>
AttackReport attack_with(const G& g, const ScenarioConfig& cfg, AdversaryMode mode) {
  AttackReport report;
  report.mode = mode;
  Checklist c;
  switch (mode) {
    case AdversaryMode::kReplay: replay_attack(g, cfg, c); break;
    case AdversaryMode::kMitm: mitm_attack(g, cfg, c); break;
    case AdversaryMode::kEavesdrop: eavesdrop_attack(g, cfg, c); break;
    case AdversaryMode::kNone: c.check(true, "no adversary"); break;
  }
  report.thwarted = c.all();
  report.checks = c.take();
  return report;
}

// Attacks need a swarm with t-1 guards regardless of the scenario under test.
ScenarioConfig attack_config(ScenarioConfig cfg) {
  if (cfg.guard_count() + 1 < cfg.threshold) cfg.guards = cfg.threshold - 1;
  if (cfg.scenario == ScenarioKind::kNr5g || cfg.scenario == ScenarioKind::kBulk) {
    cfg.scenario = ScenarioKind::kInclusion;
    cfg.n_drones.reset();
  }
  return cfg;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  ensure_sodium();
  if (config.group == GroupChoice::kToy) return dispatch(ToyGroup(config.toy_order), config);
  return dispatch(Ristretto255{}, config);
}

AttackReport inject_adversary(const ScenarioConfig& config, AdversaryMode mode) {
  config.validate();
  ensure_sodium();
  auto cfg = attack_config(config);
  if (mode == AdversaryMode::kEavesdrop && cfg.group == GroupChoice::kToy) {
    // Z_q with generator 1 publishes y itself as y*P; secrecy needs a real group.
    auto report = attack_with(Ristretto255{}, cfg, mode);
    report.checks.insert(report.checks.begin(),
                         "ok: toy group has no discrete-log hardness; ran on ristretto255");
    return report;
  }
  if (cfg.group == GroupChoice::kToy) return attack_with(ToyGroup(cfg.toy_order), cfg, mode);
  return attack_with(Ristretto255{}, cfg, mode);
}

}  // namespace swarmauth::sim
