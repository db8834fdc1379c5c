#include "swarmauth/rng.hpp"

#include <sodium.h>

#include <vector>

namespace swarmauth {

Rng::Rng(std::uint64_t seed) {
  Bytes material;
  put_bytes(material, ByteView(reinterpret_cast<const std::uint8_t*>("swarmauth-rng"), 13));
  put_be(material, seed, 8);
  key_ = sha256(material);
}

void Rng::fill(std::span<std::uint8_t> out) {
  ensure_sodium();
  // Each call consumes a fresh 96-bit nonce so streams never overlap.
  std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> n{};
  for (int i = 0; i < 8; ++i) n[4 + i] = static_cast<std::uint8_t>(block_ >> (8 * i));
  ++block_;
  crypto_stream_chacha20_ietf(out.data(), out.size(), n.data(), key_.data());
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b;
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    auto v = next_u64();
    if (v < limit) return v % bound;
  }
}

Nonce Rng::nonce() {
  Nonce n;
  fill(n);
  return n;
}

Rng Rng::fork() {
  std::array<std::uint8_t, 32> k;
  fill(k);
  return Rng(k);
}

}  // namespace swarmauth
