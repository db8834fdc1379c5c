#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

#include "swarmauth/crypto.hpp"

namespace swarmauth {

// Seeded ChaCha20 keystream. Same seed, same byte stream, on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  Nonce nonce();
  /// Independent child stream; derived deterministically from this one.
  Rng fork();

  std::uint64_t operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  explicit Rng(const std::array<std::uint8_t, 32>& key) : key_(key) {}

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
};

}  // namespace swarmauth
