#include "swarmauth/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace swarmauth {
namespace {

std::array<std::uint8_t, crypto_aead_xchacha20poly1305_ietf_NPUBBYTES>
widen(const Nonce& nonce) {
  std::array<std::uint8_t, crypto_aead_xchacha20poly1305_ietf_NPUBBYTES> n{};
  std::copy(nonce.begin(), nonce.end(), n.begin());
  return n;
}

}  // namespace

void ensure_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw std::runtime_error("libsodium initialization failed");
}

Digest sha256(ByteView data) {
  ensure_sodium();
  Digest d;
  crypto_hash_sha256(d.data(), data.data(), data.size());
  return d;
}

SymmetricKey kdf(ByteView material) {
  SymmetricKey k;
  k.bytes = sha256(material);
  return k;
}

Bytes aead_seal(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView plaintext) {
  ensure_sodium();
  Bytes out(plaintext.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  auto n = widen(nonce);
  crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data(), &len, plaintext.data(), plaintext.size(), aad.data(),
      aad.size(), nullptr, n.data(), key.bytes.data());
  out.resize(static_cast<std::size_t>(len));
  return out;
}

std::optional<Bytes> aead_open(const SymmetricKey& key, const Nonce& nonce,
                               ByteView aad, ByteView ciphertext) {
  ensure_sodium();
  if (ciphertext.size() < crypto_aead_xchacha20poly1305_ietf_ABYTES) {
    return std::nullopt;
  }
  Bytes out(ciphertext.size() - crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  auto n = widen(nonce);
  if (crypto_aead_xchacha20poly1305_ietf_decrypt(
          out.data(), &len, nullptr, ciphertext.data(), ciphertext.size(),
          aad.data(), aad.size(), n.data(), key.bytes.data()) != 0) {
    return std::nullopt;
  }
  out.resize(static_cast<std::size_t>(len));
  return out;
}

}  // namespace swarmauth
