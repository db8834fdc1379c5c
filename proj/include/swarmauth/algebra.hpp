#pragma once

// Scalar field and prime-order group arithmetic. Everything above this layer
// is written against the PrimeOrderGroup concept and instantiated with either
// Ristretto255 (production) or ToyGroup (Z_q under addition, generator 1,
// whose discrete logs are readable and therefore usable as a test oracle).

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <string_view>

#include "swarmauth/bytes.hpp"
#include "swarmauth/error.hpp"
#include "swarmauth/rng.hpp"

namespace swarmauth {

enum class GroupKind { kProductionCurve, kToy };

template <class G>
concept PrimeOrderGroup = requires(const G& g, const typename G::Scalar& s,
                                   const typename G::Point& p, Rng& rng,
                                   ByteView bytes, std::uint64_t u) {
  { g.kind() } -> std::same_as<GroupKind>;
  { g.name() } -> std::convertible_to<std::string_view>;
  { g.scalar_width() } -> std::same_as<std::size_t>;
  { g.point_width() } -> std::same_as<std::size_t>;
  { g.scalar(u) } -> std::same_as<typename G::Scalar>;
  { g.add(s, s) } -> std::same_as<typename G::Scalar>;
  { g.sub(s, s) } -> std::same_as<typename G::Scalar>;
  { g.neg(s) } -> std::same_as<typename G::Scalar>;
  { g.mul(s, s) } -> std::same_as<typename G::Scalar>;
  { g.inv(s) } -> std::same_as<typename G::Scalar>;
  { g.is_zero(s) } -> std::same_as<bool>;
  { g.random_scalar(rng) } -> std::same_as<typename G::Scalar>;
  { g.generator() } -> std::same_as<typename G::Point>;
  { g.identity() } -> std::same_as<typename G::Point>;
  { g.point_add(p, p) } -> std::same_as<typename G::Point>;
  { g.point_mul(s, p) } -> std::same_as<typename G::Point>;
  { g.random_point(rng) } -> std::same_as<typename G::Point>;
  { g.encode_scalar(s) } -> std::same_as<Bytes>;
  { g.decode_scalar(bytes) } -> std::same_as<typename G::Scalar>;
  { g.encode_point(p) } -> std::same_as<Bytes>;
  { g.decode_point(bytes) } -> std::same_as<typename G::Point>;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n) noexcept;

// Integers modulo a prime q. Both scalars and points are residues; the
// generator is 1 so point_mul(s, P) == s.
class ToyGroup {
 public:
  struct Scalar {
    std::uint64_t value = 0;
    friend auto operator<=>(const Scalar&, const Scalar&) = default;
  };
  struct Point {
    std::uint64_t value = 0;
    friend auto operator<=>(const Point&, const Point&) = default;
  };

  /// Throws std::invalid_argument unless q is a prime >= 3.
  explicit ToyGroup(std::uint64_t q);

  GroupKind kind() const noexcept { return GroupKind::kToy; }
  std::string_view name() const noexcept { return "toy"; }
  std::uint64_t order() const noexcept { return q_; }
  std::size_t scalar_width() const noexcept { return width_; }
  std::size_t point_width() const noexcept { return width_; }

  Scalar scalar(std::uint64_t v) const noexcept { return {v % q_}; }
  Scalar add(Scalar a, Scalar b) const noexcept;
  Scalar sub(Scalar a, Scalar b) const noexcept;
  Scalar neg(Scalar a) const noexcept;
  Scalar mul(Scalar a, Scalar b) const noexcept;
  Scalar inv(Scalar a) const;
  bool is_zero(Scalar a) const noexcept { return a.value == 0; }
  Scalar random_scalar(Rng& rng) const { return {rng.below(q_)}; }

  Point generator() const noexcept { return {1}; }
  Point identity() const noexcept { return {0}; }
  Point point_add(Point a, Point b) const noexcept;
  Point point_mul(Scalar s, Point p) const noexcept;
  Point random_point(Rng& rng) const { return {rng.below(q_)}; }

  Bytes encode_scalar(Scalar s) const;
  Scalar decode_scalar(ByteView bytes) const;
  Bytes encode_point(Point p) const;
  Point decode_point(ByteView bytes) const;

 private:
  std::uint64_t decode_residue(ByteView bytes) const;

  std::uint64_t q_;
  std::size_t width_;
};

// The ristretto255 prime-order group (order l = 2^252 + 2774...), via
// libsodium. Scalars are kept as canonical little-endian bytes internally and
// serialized big-endian.
class Ristretto255 {
 public:
  struct Scalar {
    std::array<std::uint8_t, 32> le{};
    friend auto operator<=>(const Scalar&, const Scalar&) = default;
  };
  struct Point {
    std::array<std::uint8_t, 32> bytes{};  // canonical encoding, zero = identity
    friend auto operator<=>(const Point&, const Point&) = default;
  };

  Ristretto255();

  GroupKind kind() const noexcept { return GroupKind::kProductionCurve; }
  std::string_view name() const noexcept { return "ristretto255"; }
  std::size_t scalar_width() const noexcept { return 32; }
  std::size_t point_width() const noexcept { return 32; }

  Scalar scalar(std::uint64_t v) const noexcept;
  Scalar add(const Scalar& a, const Scalar& b) const noexcept;
  Scalar sub(const Scalar& a, const Scalar& b) const noexcept;
  Scalar neg(const Scalar& a) const noexcept;
  Scalar mul(const Scalar& a, const Scalar& b) const noexcept;
  Scalar inv(const Scalar& a) const;
  bool is_zero(const Scalar& a) const noexcept;
  Scalar random_scalar(Rng& rng) const;

  Point generator() const noexcept { return generator_; }
  Point identity() const noexcept { return {}; }
  Point point_add(const Point& a, const Point& b) const;
  Point point_mul(const Scalar& s, const Point& p) const;
  Point random_point(Rng& rng) const;

  Bytes encode_scalar(const Scalar& s) const;
  Scalar decode_scalar(ByteView bytes) const;
  Bytes encode_point(const Point& p) const;
  Point decode_point(ByteView bytes) const;

 private:
  Point generator_;
};

static_assert(PrimeOrderGroup<ToyGroup>);
static_assert(PrimeOrderGroup<Ristretto255>);

template <class G>
using ScalarOf = typename G::Scalar;
template <class G>
using PointOf = typename G::Point;

// Free-function surface. These are what the rest of the library calls.

template <PrimeOrderGroup G>
ScalarOf<G> scalar_add(const G& g, const ScalarOf<G>& a, const ScalarOf<G>& b) {
  return g.add(a, b);
}

template <PrimeOrderGroup G>
ScalarOf<G> scalar_sub(const G& g, const ScalarOf<G>& a, const ScalarOf<G>& b) {
  return g.sub(a, b);
}

template <PrimeOrderGroup G>
ScalarOf<G> scalar_mul(const G& g, const ScalarOf<G>& a, const ScalarOf<G>& b) {
  return g.mul(a, b);
}

/// Throws Error{kZeroInverse} when a == 0.
template <PrimeOrderGroup G>
ScalarOf<G> scalar_inv(const G& g, const ScalarOf<G>& a) {
  return g.inv(a);
}

template <PrimeOrderGroup G>
PointOf<G> point_add(const G& g, const PointOf<G>& a, const PointOf<G>& b) {
  return g.point_add(a, b);
}

template <PrimeOrderGroup G>
PointOf<G> point_mul(const G& g, const ScalarOf<G>& s, const PointOf<G>& p) {
  return g.point_mul(s, p);
}

/// s * P for the distinguished generator.
template <PrimeOrderGroup G>
PointOf<G> base_mul(const G& g, const ScalarOf<G>& s) {
  return g.point_mul(s, g.generator());
}

template <PrimeOrderGroup G>
Bytes encode_point(const G& g, const PointOf<G>& p) {
  return g.encode_point(p);
}

/// Throws Error{kDecodeError} on wrong length or a non-canonical encoding.
template <PrimeOrderGroup G>
PointOf<G> decode_point(const G& g, ByteView bytes) {
  return g.decode_point(bytes);
}

template <PrimeOrderGroup G>
Bytes encode_scalar(const G& g, const ScalarOf<G>& s) {
  return g.encode_scalar(s);
}

template <PrimeOrderGroup G>
ScalarOf<G> decode_scalar(const G& g, ByteView bytes) {
  return g.decode_scalar(bytes);
}

}  // namespace swarmauth
