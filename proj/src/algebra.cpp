#include "swarmauth/algebra.hpp"

#include <sodium.h>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace swarmauth {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------- ToyGroup

ToyGroup::ToyGroup(std::uint64_t q) : q_(q) {
  if (q < 3 || !is_prime_u64(q)) {
    throw std::invalid_argument("toy group order must be an odd prime");
  }
  width_ = (static_cast<std::size_t>(std::bit_width(q)) + 7) / 8;
}

ToyGroup::Scalar ToyGroup::add(Scalar a, Scalar b) const noexcept {
  // a, b < q < 2^64: subtract instead of overflowing.
  return {a.value >= q_ - b.value ? a.value - (q_ - b.value) : a.value + b.value};
}

ToyGroup::Scalar ToyGroup::sub(Scalar a, Scalar b) const noexcept {
  return add(a, neg(b));
}

ToyGroup::Scalar ToyGroup::neg(Scalar a) const noexcept {
  return {a.value == 0 ? 0 : q_ - a.value};
}

ToyGroup::Scalar ToyGroup::mul(Scalar a, Scalar b) const noexcept {
  return {mulmod(a.value, b.value, q_)};
}

ToyGroup::Scalar ToyGroup::inv(Scalar a) const {
  if (a.value == 0) throw Error(Errc::kZeroInverse, "inverse of zero");
  // Extended Euclid over signed 128-bit.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a.value;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += q_;
  return {static_cast<std::uint64_t>(t)};
}

ToyGroup::Point ToyGroup::point_add(Point a, Point b) const noexcept {
  return {add(Scalar{a.value}, Scalar{b.value}).value};
}

ToyGroup::Point ToyGroup::point_mul(Scalar s, Point p) const noexcept {
  return {mulmod(s.value, p.value, q_)};
}

Bytes ToyGroup::encode_scalar(Scalar s) const {
  Bytes out;
  put_be(out, s.value, width_);
  return out;
}

std::uint64_t ToyGroup::decode_residue(ByteView bytes) const {
  if (bytes.size() != width_) throw Error(Errc::kDecodeError, "wrong width");
  ByteReader r(bytes);
  auto v = r.be(width_);
  if (v >= q_) throw Error(Errc::kDecodeError, "value not reduced");
  return v;
}

ToyGroup::Scalar ToyGroup::decode_scalar(ByteView bytes) const {
  return {decode_residue(bytes)};
}

Bytes ToyGroup::encode_point(Point p) const {
  Bytes out;
  put_be(out, p.value, width_);
  return out;
}

ToyGroup::Point ToyGroup::decode_point(ByteView bytes) const {
  return {decode_residue(bytes)};
}

// ------------------------------------------------------------ Ristretto255

Ristretto255::Ristretto255() {
  ensure_sodium();
  Scalar one = scalar(1);
  crypto_scalarmult_ristretto255_base(generator_.bytes.data(), one.le.data());
}

Ristretto255::Scalar Ristretto255::scalar(std::uint64_t v) const noexcept {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.le[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;  // 2^64 < l, already canonical
}

Ristretto255::Scalar Ristretto255::add(const Scalar& a, const Scalar& b) const noexcept {
  Scalar r;
  crypto_core_ristretto255_scalar_add(r.le.data(), a.le.data(), b.le.data());
  return r;
}

Ristretto255::Scalar Ristretto255::sub(const Scalar& a, const Scalar& b) const noexcept {
  Scalar r;
  crypto_core_ristretto255_scalar_sub(r.le.data(), a.le.data(), b.le.data());
  return r;
}

Ristretto255::Scalar Ristretto255::neg(const Scalar& a) const noexcept {
  Scalar r;
  crypto_core_ristretto255_scalar_negate(r.le.data(), a.le.data());
  return r;
}

Ristretto255::Scalar Ristretto255::mul(const Scalar& a, const Scalar& b) const noexcept {
  Scalar r;
  crypto_core_ristretto255_scalar_mul(r.le.data(), a.le.data(), b.le.data());
  return r;
}

Ristretto255::Scalar Ristretto255::inv(const Scalar& a) const {
  Scalar r;
  if (crypto_core_ristretto255_scalar_invert(r.le.data(), a.le.data()) != 0) {
    throw Error(Errc::kZeroInverse, "inverse of zero");
  }
  return r;
}

bool Ristretto255::is_zero(const Scalar& a) const noexcept {
  return sodium_is_zero(a.le.data(), a.le.size()) == 1;
}

Ristretto255::Scalar Ristretto255::random_scalar(Rng& rng) const {
  std::array<std::uint8_t, crypto_core_ristretto255_NONREDUCEDSCALARBYTES> wide;
  rng.fill(wide);
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.le.data(), wide.data());
  return s;
}

Ristretto255::Point Ristretto255::point_add(const Point& a, const Point& b) const {
  Point r;
  if (crypto_core_ristretto255_add(r.bytes.data(), a.bytes.data(), b.bytes.data()) != 0) {
    throw Error(Errc::kDecodeError, "invalid point operand");
  }
  return r;
}

Ristretto255::Point Ristretto255::point_mul(const Scalar& s, const Point& p) const {
  Point r;
  // libsodium reports an identity result as failure; operands were validated
  // at decode time, so -1 here means the product is the identity.
  if (crypto_scalarmult_ristretto255(r.bytes.data(), s.le.data(), p.bytes.data()) != 0) {
    return identity();
  }
  return r;
}

Ristretto255::Point Ristretto255::random_point(Rng& rng) const {
  std::array<std::uint8_t, crypto_core_ristretto255_HASHBYTES> h;
  rng.fill(h);
  Point r;
  crypto_core_ristretto255_from_hash(r.bytes.data(), h.data());
  return r;
}

Bytes Ristretto255::encode_scalar(const Scalar& s) const {
  return Bytes(s.le.rbegin(), s.le.rend());
}

Ristretto255::Scalar Ristretto255::decode_scalar(ByteView bytes) const {
  if (bytes.size() != 32) throw Error(Errc::kDecodeError, "wrong width");
  Scalar s;
  std::reverse_copy(bytes.begin(), bytes.end(), s.le.begin());
  std::array<std::uint8_t, 64> wide{};
  std::copy(s.le.begin(), s.le.end(), wide.begin());
  Scalar reduced;
  crypto_core_ristretto255_scalar_reduce(reduced.le.data(), wide.data());
  if (reduced != s) throw Error(Errc::kDecodeError, "scalar not reduced");
  return s;
}

Bytes Ristretto255::encode_point(const Point& p) const {
  return Bytes(p.bytes.begin(), p.bytes.end());
}

Ristretto255::Point Ristretto255::decode_point(ByteView bytes) const {
  if (bytes.size() != 32) throw Error(Errc::kDecodeError, "wrong width");
  Point p;
  std::copy(bytes.begin(), bytes.end(), p.bytes.begin());
  if (crypto_core_ristretto255_is_valid_point(p.bytes.data()) != 1) {
    throw Error(Errc::kDecodeError, "not a canonical ristretto255 encoding");
  }
  return p;
}

}  // namespace swarmauth
