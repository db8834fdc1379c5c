#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "swarmauth/message.hpp"

namespace swarmauth {

struct Delivery {
  std::int64_t time_ns = 0;
  DroneId receiver;
  ProtocolMessage message;
};

// Local computation charged to a node's clock.
struct Work {
  unsigned point_muls = 0;
  unsigned asym_encrypts = 0;
  unsigned asym_decrypts = 0;
  unsigned hashes = 0;

  Work& operator+=(const Work& o) {
    point_muls += o.point_muls;
    asym_encrypts += o.asym_encrypts;
    asym_decrypts += o.asym_decrypts;
    hashes += o.hashes;
    return *this;
  }
};

// Sits on the wire. Returns what `to` actually receives for one
// transmission: nothing (drop), a modified copy, or extra messages.
class Interceptor {
 public:
  virtual ~Interceptor() = default;
  virtual std::vector<ProtocolMessage> intercept(const DroneId& to,
                                                 const ProtocolMessage& msg) = 0;
};

class Network {
 public:
  virtual ~Network() = default;

  /// One transmission to every receiver; returns deliveries in time order.
  virtual std::vector<Delivery> transmit(const ProtocolMessage& msg,
                                         std::span<const DroneId> receivers) = 0;
  virtual void compute(const DroneId& node, const Work& work) = 0;
  /// Closes the current phase.
  virtual void mark(std::string_view phase) { (void)phase; }
  /// `as` is another identity of `node`; both share one clock.
  virtual void alias(const DroneId& as, const DroneId& node) {
    (void)as;
    (void)node;
  }

  void set_interceptor(Interceptor* i) noexcept { interceptor_ = i; }

  std::vector<Delivery> transmit_one(const ProtocolMessage& msg, const DroneId& to) {
    return transmit(msg, std::span<const DroneId>(&to, 1));
  }

 protected:
  std::vector<ProtocolMessage> on_wire(const DroneId& to, const ProtocolMessage& msg) {
    if (!interceptor_) return {msg};
    return interceptor_->intercept(to, msg);
  }

 private:
  Interceptor* interceptor_ = nullptr;
};

// Instantaneous delivery; tallies work for instrumentation.
class DirectNetwork final : public Network {
 public:
  std::vector<Delivery> transmit(const ProtocolMessage& msg,
                                 std::span<const DroneId> receivers) override;
  void compute(const DroneId&, const Work& work) override { work_ += work; }

  const Work& work() const noexcept { return work_; }
  std::size_t transmissions() const noexcept { return transmissions_; }

 private:
  Work work_;
  std::size_t transmissions_ = 0;
};

}  // namespace swarmauth
