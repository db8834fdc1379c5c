#pragma once

// Guard-drone group authentication.
//
// Inclusion: a new drone publishes (x, f(x)P); t-1 guards publish theirs;
// every guard checks that the Lagrange-weighted sum of the t points equals
// the swarm commitment Q. On unanimous acceptance one guard sends f(0)
// under an ECDH-derived key.
//
// Unification: a designated guard of swarm A obtains a share of B's
// polynomial from the core, is verified by B's guards in the same way,
// receives g(0), and rebroadcasts it to swarm A under f(0).

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "swarmauth/algebra.hpp"
#include "swarmauth/message.hpp"
#include "swarmauth/network.hpp"
#include "swarmauth/shares.hpp"

namespace swarmauth {

enum class Role { kGuard, kMember, kNewArrival };

template <PrimeOrderGroup G>
struct Drone {
  DroneId id;
  Role role = Role::kMember;
  PrivateShare<G> share;
  GroupCommitment<G> commitment;
  std::optional<ScalarOf<G>> group_key;
  // Share under another swarm's polynomial, held after a cross issue.
  std::optional<PrivateShare<G>> cross_share;
  NonceCache nonces;
};

template <PrimeOrderGroup G>
struct Swarm {
  SwarmId id = 0;
  std::size_t threshold = 0;
  GroupCommitment<G> commitment;
  std::vector<Drone<G>> drones;

  Drone<G>* find(std::uint64_t x) {
    for (auto& d : drones) {
      if (d.id.x == x) return &d;
    }
    return nullptr;
  }

  std::size_t guard_count() const {
    return static_cast<std::size_t>(std::count_if(
        drones.begin(), drones.end(), [](const auto& d) { return d.role == Role::kGuard; }));
  }

  /// The `count` guards with the lowest identifiers, ascending.
  std::vector<Drone<G>*> lowest_guards(std::size_t count) {
    std::vector<Drone<G>*> guards;
    for (auto& d : drones) {
      if (d.role == Role::kGuard) guards.push_back(&d);
    }
    if (guards.size() < count) {
      throw Error(Errc::kNotEnoughGuards, "swarm " + std::to_string(id) + " has " +
                                              std::to_string(guards.size()) + " guards, need " +
                                              std::to_string(count));
    }
    std::sort(guards.begin(), guards.end(),
              [](const auto* a, const auto* b) { return a->id.x < b->id.x; });
    guards.resize(count);
    return guards;
  }
};

// ------------------------------------------------------------ key agreement

template <PrimeOrderGroup G>
SymmetricKey derive_pairwise_key(const G& g, const ScalarOf<G>& mine,
                                 const PointOf<G>& theirs) {
  return kdf(g.encode_point(g.point_mul(mine, theirs)));
}

/// KDF(encode(y_mine * Y_theirs)); symmetric in the two parties.
template <PrimeOrderGroup G>
SymmetricKey derive_pairwise_key(const G& g, const PrivateShare<G>& mine,
                                 const PublicShare<G>& theirs) {
  return derive_pairwise_key(g, mine.y, theirs.Y);
}

/// Symmetric key from a swarm group key, for swarm-wide broadcasts.
template <PrimeOrderGroup G>
SymmetricKey group_channel_key(const G& g, const ScalarOf<G>& group_key) {
  return kdf(g.encode_scalar(group_key));
}

/// EncryptedGroupKey carrying f(0) to `recipient`.
template <PrimeOrderGroup G>
ProtocolMessage deliver_group_key(const G& g, const Drone<G>& guard, const DroneId& recipient,
                                  const PublicShare<G>& recipient_public, const Nonce& nonce) {
  if (!guard.group_key) throw Error(Errc::kMissingGroupKey, to_string(guard.id));
  ProtocolMessage msg{MessageKind::kEncryptedGroupKey, guard.id, nonce, {}};
  auto key = derive_pairwise_key(g, guard.share, recipient_public);
  msg.payload = aead_seal(key, nonce, associated_data(guard.id, recipient, nonce),
                          g.encode_scalar(*guard.group_key));
  return msg;
}

enum class Receipt { kAccepted, kReplay, kAuthFailure, kMalformed };

inline std::string_view to_string(Receipt r) {
  switch (r) {
    case Receipt::kAccepted: return "accepted";
    case Receipt::kReplay: return "replay";
    case Receipt::kAuthFailure: return "aead-failure";
    case Receipt::kMalformed: return "malformed";
  }
  return "unknown";
}

/// Opens an EncryptedGroupKey addressed to `as`. `own` is the share the
/// sender encrypted to (the drone's own share, or its cross share).
template <PrimeOrderGroup G>
std::pair<Receipt, std::optional<ScalarOf<G>>> open_group_key(
    const G& g, NonceCache& nonces, const DroneId& as, const PrivateShare<G>& own,
    const PointOf<G>& sender_public, const ProtocolMessage& msg) {
  if (!nonces.admit(msg)) return {Receipt::kReplay, std::nullopt};
  if (msg.kind != MessageKind::kEncryptedGroupKey) return {Receipt::kMalformed, std::nullopt};
  auto key = derive_pairwise_key(g, own.y, sender_public);
  auto plain = aead_open(key, msg.nonce, associated_data(msg.sender, as, msg.nonce), msg.payload);
  if (!plain) return {Receipt::kAuthFailure, std::nullopt};
  try {
    return {Receipt::kAccepted, g.decode_scalar(*plain)};
  } catch (const Error&) {
    return {Receipt::kMalformed, std::nullopt};
  }
}

/// Recipient side of deliver_group_key. Installs the key on success.
template <PrimeOrderGroup G>
Receipt accept_group_key(const G& g, Drone<G>& recipient, const PointOf<G>& sender_public,
                         const ProtocolMessage& msg) {
  auto [receipt, key] =
      open_group_key(g, recipient.nonces, recipient.id, recipient.share, sender_public, msg);
  if (key) recipient.group_key = *key;
  return receipt;
}

// ------------------------------------------------------------- core network

// Trusted dealer for every swarm: holds the polynomials and a key pair used
// to encrypt cross-issued shares.
template <PrimeOrderGroup G>
class CoreNetwork {
 public:
  CoreNetwork(const G& g, Rng rng) : g_(&g), rng_(std::move(rng)) {
    secret_ = g.random_scalar(rng_);
    while (g.is_zero(secret_)) secret_ = g.random_scalar(rng_);
    public_ = base_mul(g, secret_);
  }

  /// Fresh polynomial; drones get x = 1..n_drones, the first n_guards are guards.
  Swarm<G> provision_swarm(SwarmId id, std::size_t t, std::size_t n_drones,
                           std::size_t n_guards) {
    if (dealers_.count(id)) throw Error(Errc::kDuplicateIdentifier, "swarm id in use");
    if (n_guards > n_drones) throw Error(Errc::kNotEnoughGuards, "more guards than drones");
    auto& dealer = dealers_.emplace(id, Dealer<G>(*g_, gen_polynomial(*g_, t, rng_))).first->second;
    Swarm<G> swarm{id, t, dealer.commitment(), {}};
    for (std::size_t i = 0; i < n_drones; ++i) {
      Drone<G> d;
      d.share = dealer.issue_next();
      d.id = {id, static_cast<std::uint64_t>(i + 1)};
      d.role = i < n_guards ? Role::kGuard : Role::kMember;
      d.commitment = swarm.commitment;
      d.group_key = dealer.polynomial().group_key();
      if (d.role == Role::kGuard) guards_.insert(d.id);
      swarm.drones.push_back(std::move(d));
    }
    return swarm;
  }

  /// A new arrival holding a genuine share but not yet the group key.
  Drone<G> enroll(SwarmId id) {
    auto& dealer = dealer_for(id);
    Drone<G> d;
    d.share = dealer.issue_next();
    d.id = {id, identifier_of(*g_, d.share.x)};
    d.role = Role::kNewArrival;
    d.commitment = dealer.commitment();
    return d;
  }

  /// Answers a CrossIssueRequest: a fresh share of the target polynomial,
  /// encrypted under KDF(k * Y_requester).
  ProtocolMessage issue_cross_share(const DroneId& requester, SwarmId target,
                                    const Nonce& nonce) {
    if (!guards_.count(requester)) {
      throw Error(Errc::kUnknownRequester, to_string(requester));
    }
    auto& target_dealer = dealer_for(target);
    auto requester_y = dealer_for(requester.swarm).polynomial().evaluate(*g_, g_->scalar(requester.x));
    auto key = derive_pairwise_key(*g_, secret_, base_mul(*g_, requester_y));
    auto share = target_dealer.issue_next();
    ProtocolMessage msg{MessageKind::kCrossIssueResponse, core_endpoint(), nonce, {}};
    msg.payload = aead_seal(key, nonce, associated_data(msg.sender, requester, nonce),
                            encode(*g_, share));
    return msg;
  }

  /// Drone-side decryption of a CrossIssueResponse.
  std::optional<PrivateShare<G>> open_cross_share(const Drone<G>& requester,
                                                  const ProtocolMessage& msg) const {
    auto key = derive_pairwise_key(*g_, requester.share.y, public_);
    auto plain = aead_open(key, msg.nonce, associated_data(msg.sender, requester.id, msg.nonce),
                           msg.payload);
    if (!plain) return std::nullopt;
    try {
      return decode_private_share(*g_, *plain);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  const Dealer<G>& dealer(SwarmId id) const {
    auto it = dealers_.find(id);
    if (it == dealers_.end()) throw Error(Errc::kUnknownSwarm, std::to_string(id));
    return it->second;
  }

  const PointOf<G>& public_key() const noexcept { return public_; }
  NonceCache& nonces() noexcept { return nonces_; }
  Rng& rng() noexcept { return rng_; }

 private:
  Dealer<G>& dealer_for(SwarmId id) {
    auto it = dealers_.find(id);
    if (it == dealers_.end()) throw Error(Errc::kUnknownSwarm, std::to_string(id));
    return it->second;
  }

  const G* g_;
  Rng rng_;
  ScalarOf<G> secret_;
  PointOf<G> public_;
  std::map<SwarmId, Dealer<G>> dealers_;
  std::set<DroneId> guards_;
  NonceCache nonces_;
};

template <PrimeOrderGroup G>
ProtocolMessage core_issue_cross_share(CoreNetwork<G>& core, const DroneId& requester,
                                       SwarmId target, const Nonce& nonce) {
  return core.issue_cross_share(requester, target, nonce);
}

// ------------------------------------------------------------ guard rounds

template <PrimeOrderGroup G>
struct RunResult {
  Outcome outcome;
  AuthTranscript transcript;
};

namespace detail {

template <PrimeOrderGroup G>
struct GuardView {
  Drone<G>* drone;
  std::map<std::uint64_t, PublicShare<G>> shares;  // by identifier
  bool accepted = false;
};

inline void log_all(AuthTranscript& tr, const std::vector<Delivery>& ds) {
  for (const auto& d : ds) tr.append(d.time_ns, d.receiver, d.message);
}

template <PrimeOrderGroup G>
void absorb_share(const G& g, GuardView<G>& view, const ProtocolMessage& msg) {
  if (!view.drone->nonces.admit(msg)) return;
  if (msg.kind != MessageKind::kSharePublish) return;
  try {
    auto share = decode_public_share(g, msg.payload);
    // The published identifier must be the sender's.
    if (share.x != g.scalar(msg.sender.x)) return;
    view.shares.emplace(msg.sender.x, share);
  } catch (const Error&) {
  }
}

template <PrimeOrderGroup G>
struct RoundResult {
  bool accepted = false;
  std::string reason;
  // Candidate's share as seen by the first guard; key delivery encrypts to it.
  std::optional<PublicShare<G>> candidate_public;
};

// New-member verification: the candidate's share goes to the
// guards, guards exchange theirs, each guard checks the t-point Lagrange sum.
template <PrimeOrderGroup G>
RoundResult<G> guard_round(const G& g, const std::vector<Drone<G>*>& guards,
                           Drone<G>& candidate, const DroneId& candidate_as,
                           const PublicShare<G>& published, const GroupCommitment<G>& commitment,
                           std::size_t t, Network& net, Rng& rng, AuthTranscript& tr) {
  std::vector<GuardView<G>> views;
  std::vector<DroneId> guard_ids;
  for (auto* d : guards) {
    views.push_back({d, {}, false});
    views.back().shares.emplace(d->id.x, public_share(g, d->share));
    guard_ids.push_back(d->id);
  }

  auto route = [&](const std::vector<Delivery>& ds) {
    log_all(tr, ds);
    for (const auto& d : ds) {
      if (d.receiver == candidate_as) {
        candidate.nonces.admit(d.message);
        continue;
      }
      for (auto& v : views) {
        if (v.drone->id == d.receiver) absorb_share(g, v, d.message);
      }
    }
  };

  ProtocolMessage publish{MessageKind::kSharePublish, candidate_as, rng.nonce(),
                          encode(g, published)};
  route(net.transmit(publish, guard_ids));

  // Every guard broadcasts to the other guards and the candidate.
  for (auto& v : views) {
    std::vector<DroneId> to;
    for (const auto& id : guard_ids) {
      if (id != v.drone->id) to.push_back(id);
    }
    to.push_back(candidate_as);
    ProtocolMessage own{MessageKind::kSharePublish, v.drone->id, rng.nonce(),
                        encode(g, public_share(g, v.drone->share))};
    route(net.transmit(own, to));
  }
  net.mark("share_exchange");

  // Each guard checks the Lagrange sum of the t shares it holds.
  RoundResult<G> result;
  bool all = true;
  bool missing = false;
  for (auto& v : views) {
    std::vector<PublicShare<G>> participants;
    for (const auto& id : guard_ids) {
      if (auto it = v.shares.find(id.x); it != v.shares.end()) participants.push_back(it->second);
    }
    if (auto it = v.shares.find(candidate_as.x); it != v.shares.end()) {
      participants.push_back(it->second);
    }
    if (participants.size() != t) {
      missing = true;
      all = false;
      continue;
    }
    net.compute(v.drone->id, Work{static_cast<unsigned>(t), 0, 0, 0});
    v.accepted = verify_group<G>(g, participants, commitment, t);
    all = all && v.accepted;
  }
  net.mark("verification");

  if (auto it = views.front().shares.find(candidate_as.x); it != views.front().shares.end()) {
    result.candidate_public = it->second;
  }
  result.accepted = all;
  if (!all) result.reason = missing ? "missing-shares" : "verification-failed";
  return result;
}

template <PrimeOrderGroup G>
void send_rejection(Drone<G>& guard, Drone<G>& candidate, const DroneId& candidate_as,
                    const std::string& reason, Network& net, Rng& rng, AuthTranscript& tr) {
  ProtocolMessage verdict{MessageKind::kAuthVerdict, guard.id, rng.nonce(),
                          Bytes(reason.begin(), reason.end())};
  auto ds = net.transmit_one(verdict, candidate_as);
  log_all(tr, ds);
  for (const auto& d : ds) candidate.nonces.admit(d.message);
  net.mark("verdict");
}

}  // namespace detail

// --------------------------------------------------------------- inclusion

/// New-drone inclusion. `published` is what the candidate puts on the air
/// (normally public_share(candidate.share)); the t-1 lowest-x guards verify.
template <PrimeOrderGroup G>
RunResult<G> run_inclusion(const G& g, Swarm<G>& swarm, Drone<G>& candidate,
                           const PublicShare<G>& published, Network& net, Rng& rng) {
  const std::size_t t = swarm.threshold;
  auto guards = swarm.lowest_guards(t - 1);
  for (const auto* gd : guards) {
    if (gd->id.x == candidate.id.x) {
      throw Error(Errc::kDuplicateIdentifier, "candidate collides with " + to_string(gd->id));
    }
  }

  RunResult<G> run;
  auto round = detail::guard_round(g, guards, candidate, candidate.id, published,
                                   swarm.commitment, t, net, rng, run.transcript);
  if (!round.accepted) {
    detail::send_rejection(*guards.front(), candidate, candidate.id, round.reason, net, rng,
                           run.transcript);
    run.outcome = Outcome::reject(round.reason);
    run.transcript.set_outcome(run.outcome);
    return run;
  }

  // Group-key delivery by the lowest guard.
  auto& guard = *guards.front();
  net.compute(guard.id, Work{1, 0, 0, 0});
  auto msg = deliver_group_key(g, guard, candidate.id, *round.candidate_public, rng.nonce());
  auto ds = net.transmit_one(msg, candidate.id);
  detail::log_all(run.transcript, ds);
  const auto guard_public = public_share(g, guard.share).Y;
  bool keyed = false;
  for (const auto& d : ds) {
    net.compute(candidate.id, Work{1, 0, 0, 0});
    keyed = accept_group_key(g, candidate, guard_public, d.message) == Receipt::kAccepted || keyed;
  }
  net.mark("key_delivery");

  if (!keyed) {
    run.outcome = Outcome::reject("key-delivery-failed");
  } else {
    candidate.role = Role::kMember;
    candidate.commitment = swarm.commitment;
    swarm.drones.push_back(candidate);  // the swarm keeps its own copy
    run.outcome = Outcome::accept();
  }
  run.transcript.set_outcome(run.outcome);
  return run;
}

template <PrimeOrderGroup G>
RunResult<G> run_inclusion(const G& g, Swarm<G>& swarm, Drone<G>& candidate, Network& net,
                           Rng& rng) {
  return run_inclusion(g, swarm, candidate, public_share(g, candidate.share), net, rng);
}

// ------------------------------------------------------------- unification

struct UnificationOptions {
  // Also have B's designated guard verified by A's guards before the key moves.
  bool mutual = false;
};

namespace detail {

template <PrimeOrderGroup G>
struct CrossAuth {
  bool accepted = false;
  std::string reason;
  DroneId requester_as;  // the requester's identity in the verifying swarm
  std::vector<Drone<G>*> verifiers;
};

// Requester obtains a share of `verifier_swarm`'s polynomial and
// is verified by that swarm's guards.
template <PrimeOrderGroup G>
CrossAuth<G> cross_authenticate(const G& g, Drone<G>& requester, Swarm<G>& verifier_swarm,
                                CoreNetwork<G>& core, Network& net, Rng& rng,
                                AuthTranscript& tr) {
  CrossAuth<G> out;
  const auto core_id = core_endpoint();

  ProtocolMessage request{MessageKind::kCrossIssueRequest, requester.id, rng.nonce(), {}};
  put_be(request.payload, verifier_swarm.id, 4);
  auto reqs = net.transmit_one(request, core_id);
  log_all(tr, reqs);

  // Core answers with a fresh share of the target polynomial.
  std::vector<Delivery> responses;
  for (const auto& d : reqs) {
    if (!core.nonces().admit(d.message) || d.message.kind != MessageKind::kCrossIssueRequest) {
      continue;
    }
    SwarmId target = 0;
    try {
      ByteReader r(d.message.payload);
      target = static_cast<SwarmId>(r.be(4));
      r.expect_done();
    } catch (const Error&) {
      continue;
    }
    ProtocolMessage response;
    try {
      response = core.issue_cross_share(d.message.sender, target, rng.nonce());
    } catch (const Error& e) {
      throw Error(Errc::kCrossIssueDenied, e.what());
    }
    net.compute(core_id, Work{1, 0, 0, 0});
    auto ds = net.transmit_one(response, requester.id);
    log_all(tr, ds);
    responses.insert(responses.end(), ds.begin(), ds.end());
  }

  // Requester decrypts its cross share.
  std::optional<PrivateShare<G>> cross;
  for (const auto& d : responses) {
    if (!requester.nonces.admit(d.message)) continue;
    net.compute(requester.id, Work{1, 0, 0, 0});
    if (auto s = core.open_cross_share(requester, d.message)) cross = s;
  }
  net.mark("cross_issue");
  if (!cross) {
    out.reason = "cross-issue-failed";
    return out;
  }
  requester.cross_share = *cross;
  out.requester_as = {verifier_swarm.id, identifier_of(g, cross->x)};
  net.alias(out.requester_as, requester.id);

  // Verifying swarm's guards check the cross share.
  const std::size_t t = verifier_swarm.threshold;
  out.verifiers = verifier_swarm.lowest_guards(t - 1);
  auto round = guard_round(g, out.verifiers, requester, out.requester_as,
                           public_share(g, *cross), verifier_swarm.commitment, t, net, rng, tr);
  out.accepted = round.accepted;
  out.reason = round.reason;
  if (!round.accepted) {
    send_rejection(*out.verifiers.front(), requester, out.requester_as, round.reason, net, rng,
                   tr);
  }
  return out;
}

}  // namespace detail

/// Two-swarm unification: afterwards every drone of A and B holds g(0).
/// Errors: Error{kCrossIssueDenied} when the core refuses the request.
template <PrimeOrderGroup G>
RunResult<G> run_unification(const G& g, Swarm<G>& a, Swarm<G>& b, CoreNetwork<G>& core,
                             Network& net, Rng& rng, UnificationOptions opts = {}) {
  RunResult<G> run;
  auto finish = [&](Outcome o) {
    run.outcome = std::move(o);
    run.transcript.set_outcome(run.outcome);
    return std::move(run);
  };

  // Designated guard: lowest identifier in A.
  Drone<G>& designated = *a.lowest_guards(1).front();
  auto forward = detail::cross_authenticate(g, designated, b, core, net, rng, run.transcript);
  if (!forward.accepted) return finish(Outcome::reject(forward.reason));

  if (opts.mutual) {
    Drone<G>& other = *b.lowest_guards(1).front();
    auto back = detail::cross_authenticate(g, other, a, core, net, rng, run.transcript);
    if (!back.accepted) return finish(Outcome::reject(back.reason));
  }

  // B's lowest participating guard sends g(0) to the designated guard.
  Drone<G>& sender = *forward.verifiers.front();
  const auto cross_public = public_share(g, *designated.cross_share);
  net.compute(sender.id, Work{1, 0, 0, 0});
  auto key_msg = deliver_group_key(g, sender, forward.requester_as, cross_public, rng.nonce());
  auto ds = net.transmit_one(key_msg, forward.requester_as);
  detail::log_all(run.transcript, ds);
  std::optional<ScalarOf<G>> unified;
  const auto sender_public = public_share(g, sender.share).Y;
  for (const auto& d : ds) {
    net.compute(designated.id, Work{1, 0, 0, 0});
    auto [receipt, key] = open_group_key(g, designated.nonces, forward.requester_as,
                                         *designated.cross_share, sender_public, d.message);
    if (key) unified = key;
  }
  net.mark("key_transfer");
  if (!unified) return finish(Outcome::reject("key-delivery-failed"));
  if (!designated.group_key) throw Error(Errc::kMissingGroupKey, to_string(designated.id));

  // Re-encrypt under A's group key for the rest of A.
  const auto old_key = *designated.group_key;
  ProtocolMessage broadcast{MessageKind::kUnifiedKeyBroadcast, designated.id, rng.nonce(), {}};
  broadcast.payload =
      aead_seal(group_channel_key(g, old_key), broadcast.nonce,
                associated_data(designated.id, swarm_broadcast(a.id), broadcast.nonce),
                g.encode_scalar(*unified));
  std::vector<DroneId> members;
  for (const auto& d : a.drones) {
    if (d.id != designated.id) members.push_back(d.id);
  }
  auto bds = net.transmit(broadcast, members);
  detail::log_all(run.transcript, bds);
  for (const auto& d : bds) {
    auto* member = a.find(d.receiver.x);
    if (!member || !member->nonces.admit(d.message) || !member->group_key) continue;
    auto plain = aead_open(group_channel_key(g, *member->group_key), d.message.nonce,
                           associated_data(d.message.sender, swarm_broadcast(a.id),
                                           d.message.nonce),
                           d.message.payload);
    if (!plain) continue;
    try {
      member->group_key = g.decode_scalar(*plain);
    } catch (const Error&) {
    }
  }
  net.mark("key_broadcast");

  // Every drone of A must now hold g(0).
  designated.group_key = *unified;
  for (const auto& d : a.drones) {
    if (!d.group_key || *d.group_key != *unified) {
      return finish(Outcome::reject("broadcast-incomplete"));
    }
  }
  for (auto& d : a.drones) d.commitment = b.commitment;
  return finish(Outcome::accept());
}

}  // namespace swarmauth
