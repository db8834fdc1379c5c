#include <sstream>
#include <stdexcept>

#include "swarmauth/error.hpp"
#include "swarmauth/message.hpp"
#include "swarmauth/network.hpp"

namespace swarmauth {

std::string to_string(const DroneId& id) {
  if (id.swarm == kCoreSwarm) return "core";
  std::string s = "s" + std::to_string(id.swarm) + "/";
  return id.x == 0 ? s + "*" : s + std::to_string(id.x);
}

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kSharePublish: return "SharePublish";
    case MessageKind::kAuthVerdict: return "AuthVerdict";
    case MessageKind::kKeyAgreementInit: return "KeyAgreementInit";
    case MessageKind::kEncryptedGroupKey: return "EncryptedGroupKey";
    case MessageKind::kCrossIssueRequest: return "CrossIssueRequest";
    case MessageKind::kCrossIssueResponse: return "CrossIssueResponse";
    case MessageKind::kUnifiedKeyBroadcast: return "UnifiedKeyBroadcast";
  }
  return "Unknown";
}

namespace {

void put_id(Bytes& out, const DroneId& id) {
  put_be(out, id.swarm, 4);
  put_be(out, id.x, 8);
}

}  // namespace

Bytes encode_message(const ProtocolMessage& msg) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(msg.kind));
  put_id(out, msg.sender);
  put_bytes(out, msg.nonce);
  put_prefixed(out, msg.payload);
  return out;
}

ProtocolMessage decode_message(ByteView wire) {
  ByteReader r(wire);
  ProtocolMessage msg;
  auto kind = r.be(1);
  if (kind < 1 || kind > 7) throw Error(Errc::kDecodeError, "unknown message kind");
  msg.kind = static_cast<MessageKind>(kind);
  msg.sender.swarm = static_cast<SwarmId>(r.be(4));
  msg.sender.x = r.be(8);
  auto nonce = r.take(msg.nonce.size());
  std::copy(nonce.begin(), nonce.end(), msg.nonce.begin());
  auto payload = r.prefixed();
  msg.payload.assign(payload.begin(), payload.end());
  r.expect_done();
  return msg;
}

Bytes associated_data(const DroneId& sender, const DroneId& receiver, const Nonce& nonce) {
  Bytes out;
  put_id(out, sender);
  put_id(out, receiver);
  put_bytes(out, nonce);
  return out;
}

std::size_t NonceCache::size() const {
  std::size_t n = 0;
  for (const auto& [_, nonces] : seen_) n += nonces.size();
  return n;
}

void AuthTranscript::append(std::int64_t time_ns, const DroneId& receiver,
                            ProtocolMessage msg) {
  entries_.push_back({time_ns, receiver, std::move(msg)});
}

void AuthTranscript::set_outcome(Outcome outcome) {
  if (outcome_) throw std::logic_error("transcript outcome already set");
  outcome_ = std::move(outcome);
}

std::vector<std::string> AuthTranscript::lines() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    auto digest = sha256(e.message.payload);
    std::ostringstream line;
    line << e.time_ns << ' ' << to_string(e.message.kind) << ' '
         << to_string(e.message.sender) << ' ' << to_string(e.receiver) << ' '
         << to_hex(ByteView(digest).first(8));
    out.push_back(line.str());
  }
  return out;
}

std::string AuthTranscript::str() const {
  std::string s;
  for (const auto& l : lines()) s += l + "\n";
  if (outcome_) s += "outcome " + outcome_->describe() + "\n";
  return s;
}

std::vector<Delivery> DirectNetwork::transmit(const ProtocolMessage& msg,
                                              std::span<const DroneId> receivers) {
  ++transmissions_;
  std::vector<Delivery> out;
  for (const auto& to : receivers) {
    for (auto& m : on_wire(to, msg)) out.push_back({0, to, std::move(m)});
  }
  return out;
}

}  // namespace swarmauth
