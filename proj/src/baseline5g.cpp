#include "swarmauth/baseline5g.hpp"

#include <algorithm>

namespace swarmauth::nr5g {
namespace {

constexpr std::size_t kPointBytes = 32;

void flip(Bytes& b) {
  if (!b.empty()) b[b.size() / 2] ^= 0x01;
}

}  // namespace

NetworkKeys generate_network_keys(const Ristretto255& g, Rng& rng) {
  NetworkKeys k;
  do k.secret = g.random_scalar(rng); while (g.is_zero(k.secret));
  k.public_key = base_mul(g, k.secret);
  return k;
}

Supi random_supi(Rng& rng, std::size_t length) {
  Supi s;
  s.bytes.resize(length);
  rng.fill(s.bytes);
  return s;
}

Suci compute_suci(const Ristretto255& g, const Supi& supi, const Ristretto255::Point& bs_public,
                  Rng& rng, Counters* counters) {
  Ristretto255::Scalar r;
  do r = g.random_scalar(rng); while (g.is_zero(r));
  auto ephemeral = g.encode_point(base_mul(g, r));
  auto key = kdf(g.encode_point(g.point_mul(r, bs_public)));
  auto nonce = rng.nonce();
  Suci out;
  put_bytes(out.ciphertext, ephemeral);
  put_bytes(out.ciphertext, nonce);
  put_bytes(out.ciphertext, aead_seal(key, nonce, ephemeral, supi.bytes));
  if (counters) ++counters->asym_encrypts;
  return out;
}

Supi udm_decrypt(const Ristretto255& g, const Suci& suci, const NetworkKeys& keys,
                 Counters* counters) {
  if (counters) ++counters->asym_decrypts;
  const auto& c = suci.ciphertext;
  if (c.size() < kPointBytes + 16 + kAeadTagBytes) {
    throw Error(Errc::kDecryptError, "SUCI too short");
  }
  ByteView view(c);
  auto ephemeral_bytes = view.first(kPointBytes);
  Ristretto255::Point ephemeral;
  try {
    ephemeral = g.decode_point(ephemeral_bytes);
  } catch (const Error&) {
    throw Error(Errc::kDecryptError, "bad ephemeral point");
  }
  Nonce nonce;
  std::copy_n(view.begin() + kPointBytes, nonce.size(), nonce.begin());
  auto key = kdf(g.encode_point(g.point_mul(keys.secret, ephemeral)));
  auto plain = aead_open(key, nonce, ephemeral_bytes, view.subspan(kPointBytes + nonce.size()));
  if (!plain) throw Error(Errc::kDecryptError, "SUCI authentication failed");
  return Supi{std::move(*plain)};
}

ChallengeState udm_challenge(const Ristretto255& g, const Suci& suci, const NetworkKeys& keys,
                             Rng& rng, Counters* counters) {
  ChallengeState st;
  st.supi = udm_decrypt(g, suci, keys, counters);
  rng.fill(st.rand);
  st.xres = ue_response(suci, st.rand);
  return st;
}

Digest ausf_hxres(const ChallengeState& state, Counters* counters) {
  if (counters) ++counters->hashes;
  return sha256(state.xres);
}

Bytes ue_response(const Suci& suci, const Rand& rand) {
  Bytes res(rand.begin(), rand.end());
  put_bytes(res, suci.ciphertext);
  return res;
}

bool seaf_check(ByteView res, const Digest& hxres, Counters* counters) {
  if (counters) ++counters->hashes;
  return sha256(res) == hxres;
}

std::optional<Supi> ausf_confirm(ByteView res, const ChallengeState& state) {
  if (!std::equal(res.begin(), res.end(), state.xres.begin(), state.xres.end())) {
    return std::nullopt;
  }
  return state.supi;
}

FlowResult run_flow(const Ristretto255& g, const Supi& supi, const NetworkKeys& keys, Rng& rng,
                    Tamper tamper) {
  FlowResult out;
  auto& c = out.counters;

  // Round trip 1: SUCI up, RAND down.
  auto suci = compute_suci(g, supi, keys.public_key, rng, &c);
  ++c.round_trips;
  auto on_air = suci;
  if (tamper == Tamper::kSuci) flip(on_air.ciphertext);
  ChallengeState st;
  try {
    st = udm_challenge(g, on_air, keys, rng, &c);
  } catch (const Error&) {
    out.rejected_at = "udm";
    return out;
  }
  st.hxres = ausf_hxres(st, &c);
  auto hxres_at_seaf = st.hxres;
  if (tamper == Tamper::kHxres) hxres_at_seaf[0] ^= 0x01;
  auto rand_at_ue = st.rand;
  if (tamper == Tamper::kRand) rand_at_ue[0] ^= 0x01;

  // Round trip 2: RES up, result down.
  ++c.round_trips;
  auto res = ue_response(suci, rand_at_ue);
  if (tamper == Tamper::kRes) flip(res);
  if (!seaf_check(res, hxres_at_seaf, &c)) {
    out.rejected_at = "seaf";
    return out;
  }
  if (tamper == Tamper::kResAfterSeaf) flip(res);
  auto confirmed = ausf_confirm(res, st);
  if (!confirmed) {
    out.rejected_at = "ausf";
    return out;
  }
  out.supi = std::move(confirmed);
  return out;
}

}  // namespace swarmauth::nr5g
