#pragma once

// Release-17 style UE authentication as a timing and correctness baseline:
// the UE conceals its SUPI under the base station's public key (SUCI); the
// UDM decrypts it and issues a random challenge; XRES = RAND || SUCI and
// HXRES = H(XRES); the UE answers RES = RAND || SUCI; SEAF checks H(RES)
// against HXRES and AUSF checks RES against XRES before releasing the SUPI.
//
// The expected response is the concatenation described above, not the
// TS 33.501 key derivation.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "swarmauth/algebra.hpp"
#include "swarmauth/crypto.hpp"

namespace swarmauth::nr5g {

using Rand = std::array<std::uint8_t, 16>;

struct Supi {
  Bytes bytes;
  friend bool operator==(const Supi&, const Supi&) = default;
};

// ephemeral point (32) | nonce (16) | AEAD(SUPI)
struct Suci {
  Bytes ciphertext;
};

struct NetworkKeys {
  Ristretto255::Scalar secret;
  Ristretto255::Point public_key;
};

struct ChallengeState {
  Rand rand{};
  Bytes xres;
  Digest hxres{};
  Supi supi;
};

// Operation counts; they drive the timing model.
struct Counters {
  unsigned asym_encrypts = 0;
  unsigned asym_decrypts = 0;
  unsigned hashes = 0;
  unsigned round_trips = 0;
};

inline constexpr std::size_t kDefaultSupiLength = 15;

NetworkKeys generate_network_keys(const Ristretto255& g, Rng& rng);
Supi random_supi(Rng& rng, std::size_t length = kDefaultSupiLength);

Suci compute_suci(const Ristretto255& g, const Supi& supi, const Ristretto255::Point& bs_public,
                  Rng& rng, Counters* counters = nullptr);
/// Throws Error{kDecryptError} on malformed or tampered input.
Supi udm_decrypt(const Ristretto255& g, const Suci& suci, const NetworkKeys& keys,
                 Counters* counters = nullptr);

ChallengeState udm_challenge(const Ristretto255& g, const Suci& suci, const NetworkKeys& keys,
                             Rng& rng, Counters* counters = nullptr);
Digest ausf_hxres(const ChallengeState& state, Counters* counters = nullptr);
Bytes ue_response(const Suci& suci, const Rand& rand);
bool seaf_check(ByteView res, const Digest& hxres, Counters* counters = nullptr);
std::optional<Supi> ausf_confirm(ByteView res, const ChallengeState& state);

// Single-bit tampering points along the flow.
enum class Tamper { kNone, kSuci, kRand, kHxres, kRes, kResAfterSeaf };

struct FlowResult {
  std::optional<Supi> supi;  // what SEAF ends up holding
  std::string rejected_at;   // "udm", "seaf", "ausf"; empty on success
  Counters counters;
};

/// Runs the whole exchange once, optionally flipping a bit at `tamper`.
FlowResult run_flow(const Ristretto255& g, const Supi& supi, const NetworkKeys& keys, Rng& rng,
                    Tamper tamper = Tamper::kNone);

}  // namespace swarmauth::nr5g
