#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swarmauth/bytes.hpp"
#include "swarmauth/crypto.hpp"

namespace swarmauth {

using SwarmId = std::uint32_t;

// Reserved swarm ids for non-drone endpoints.
inline constexpr SwarmId kCoreSwarm = 0xffffffffu;

struct DroneId {
  SwarmId swarm = 0;
  std::uint64_t x = 0;  // share identifier; 0 addresses the whole swarm
  friend auto operator<=>(const DroneId&, const DroneId&) = default;
};

inline DroneId core_endpoint() { return {kCoreSwarm, 0}; }
inline DroneId swarm_broadcast(SwarmId s) { return {s, 0}; }

/// "core", "s1/*" for a swarm broadcast, otherwise "s1/3".
std::string to_string(const DroneId& id);

enum class MessageKind : std::uint8_t {
  kSharePublish = 1,
  kAuthVerdict = 2,
  kKeyAgreementInit = 3,
  kEncryptedGroupKey = 4,
  kCrossIssueRequest = 5,
  kCrossIssueResponse = 6,
  kUnifiedKeyBroadcast = 7,
};

std::string_view to_string(MessageKind kind);

struct ProtocolMessage {
  MessageKind kind = MessageKind::kSharePublish;
  DroneId sender;
  Nonce nonce{};
  Bytes payload;
  friend bool operator==(const ProtocolMessage&, const ProtocolMessage&) = default;
};

// Wire layout: kind (1) | sender swarm (4, BE) | sender x (8, BE) |
// nonce (16) | payload length (4, BE) | payload.
Bytes encode_message(const ProtocolMessage& msg);
ProtocolMessage decode_message(ByteView wire);

/// AEAD associated data binding sender, receiver and nonce.
Bytes associated_data(const DroneId& sender, const DroneId& receiver, const Nonce& nonce);

// Per-sender record of nonces seen during a scenario.
class NonceCache {
 public:
  /// False when (sender, nonce) has been seen before; records it otherwise.
  bool admit(const ProtocolMessage& msg) {
    return seen_[msg.sender].insert(msg.nonce).second;
  }
  std::size_t size() const;

 private:
  std::map<DroneId, std::set<Nonce>> seen_;
};

struct Outcome {
  bool accepted = false;
  std::string reason;  // empty when accepted

  static Outcome accept() { return {true, {}}; }
  static Outcome reject(std::string why) { return {false, std::move(why)}; }
  std::string describe() const { return accepted ? "accepted" : "rejected(" + reason + ")"; }
};

struct TranscriptEntry {
  std::int64_t time_ns = 0;
  DroneId receiver;
  ProtocolMessage message;
};

// Append-only delivery log with a single outcome.
class AuthTranscript {
 public:
  void append(std::int64_t time_ns, const DroneId& receiver, ProtocolMessage msg);
  /// Throws std::logic_error when called twice.
  void set_outcome(Outcome outcome);

  const std::vector<TranscriptEntry>& entries() const noexcept { return entries_; }
  const std::optional<Outcome>& outcome() const noexcept { return outcome_; }

  /// One line per message: time_ns kind sender receiver payload-digest.
  std::vector<std::string> lines() const;
  std::string str() const;

 private:
  std::vector<TranscriptEntry> entries_;
  std::optional<Outcome> outcome_;
};

}  // namespace swarmauth
