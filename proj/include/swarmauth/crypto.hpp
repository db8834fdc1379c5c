#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "swarmauth/bytes.hpp"

namespace swarmauth {

using Digest = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 16>;

// 256-bit symmetric key for the AEAD.
struct SymmetricKey {
  std::array<std::uint8_t, 32> bytes{};
  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

/// Initializes libsodium once; safe to call from any thread.
void ensure_sodium();

Digest sha256(ByteView data);
SymmetricKey kdf(ByteView material);

/// XChaCha20-Poly1305. The 16-byte message nonce is zero-extended to 24 bytes.
Bytes aead_seal(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView plaintext);
std::optional<Bytes> aead_open(const SymmetricKey& key, const Nonce& nonce,
                               ByteView aad, ByteView ciphertext);

inline constexpr std::size_t kAeadTagBytes = 16;

}  // namespace swarmauth
