#pragma once

// Dealer-side polynomial sharing and the Lagrange-at-zero group check.
//
// A swarm is keyed by a secret polynomial f of degree t-1 over the scalar
// field; f(0) is the group key. Member i holds f(x_i) privately and publishes
// f(x_i)*P. Any t public shares combine, with Lagrange weights evaluated at
// zero, into f(0)*P, which every drone can compare against the commitment Q.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <span>
#include <vector>

#include "swarmauth/algebra.hpp"

namespace swarmauth {

template <PrimeOrderGroup G>
struct GroupPolynomial {
  std::vector<ScalarOf<G>> coeffs;  // coeffs[0] is the group key

  std::size_t threshold() const noexcept { return coeffs.size(); }
  const ScalarOf<G>& group_key() const { return coeffs.front(); }

  ScalarOf<G> evaluate(const G& g, const ScalarOf<G>& x) const {
    auto acc = g.scalar(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      acc = g.add(g.mul(acc, x), *it);
    }
    return acc;
  }

  /// Validates t >= 2 and a nonzero leading coefficient.
  static GroupPolynomial from_coefficients(const G& g, std::vector<ScalarOf<G>> c) {
    if (c.size() < 2) throw Error(Errc::kThresholdTooSmall, "need t >= 2");
    if (g.is_zero(c.back())) {
      throw Error(Errc::kThresholdTooSmall, "leading coefficient is zero");
    }
    return GroupPolynomial{std::move(c)};
  }
};

template <PrimeOrderGroup G>
struct PrivateShare {
  ScalarOf<G> x;
  ScalarOf<G> y;
  friend bool operator==(const PrivateShare&, const PrivateShare&) = default;
};

template <PrimeOrderGroup G>
struct PublicShare {
  ScalarOf<G> x;
  PointOf<G> Y;
  friend bool operator==(const PublicShare&, const PublicShare&) = default;
};

template <PrimeOrderGroup G>
struct GroupCommitment {
  PointOf<G> Q;
  friend bool operator==(const GroupCommitment&, const GroupCommitment&) = default;
};

template <PrimeOrderGroup G>
GroupPolynomial<G> gen_polynomial(const G& g, std::size_t t, Rng& rng) {
  if (t < 2) throw Error(Errc::kThresholdTooSmall, "need t >= 2");
  GroupPolynomial<G> poly;
  poly.coeffs.reserve(t);
  for (std::size_t i = 0; i < t; ++i) poly.coeffs.push_back(g.random_scalar(rng));
  while (g.is_zero(poly.coeffs.back())) poly.coeffs.back() = g.random_scalar(rng);
  return poly;
}

template <PrimeOrderGroup G>
PrivateShare<G> issue_share(const G& g, const GroupPolynomial<G>& poly,
                            const ScalarOf<G>& x) {
  if (g.is_zero(x)) throw Error(Errc::kInvalidIdentifier, "x = 0 reveals f(0)");
  return {x, poly.evaluate(g, x)};
}

template <PrimeOrderGroup G>
PublicShare<G> public_share(const G& g, const PrivateShare<G>& sh) {
  return {sh.x, base_mul(g, sh.y)};
}

template <PrimeOrderGroup G>
GroupCommitment<G> group_commitment(const G& g, const GroupPolynomial<G>& poly) {
  return {base_mul(g, poly.group_key())};
}

namespace detail {

template <PrimeOrderGroup G>
void check_identifiers(const G& g, std::span<const ScalarOf<G>> xs) {
  if (xs.empty()) throw Error(Errc::kWrongShareCount, "no identifiers");
  std::set<ScalarOf<G>> seen;
  for (const auto& x : xs) {
    if (g.is_zero(x)) throw Error(Errc::kInvalidIdentifier, "x = 0");
    if (!seen.insert(x).second) {
      throw Error(Errc::kDuplicateIdentifier, "identifiers must be distinct");
    }
  }
}

template <PrimeOrderGroup G>
ScalarOf<G> lagrange_unchecked(const G& g, std::span<const ScalarOf<G>> xs,
                               std::size_t i) {
  auto num = g.scalar(1);
  auto den = g.scalar(1);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    if (r == i) continue;
    num = g.mul(num, g.neg(xs[r]));
    den = g.mul(den, g.sub(xs[i], xs[r]));
  }
  return g.mul(num, g.inv(den));
}

}  // namespace detail

/// lambda_i = prod_{r != i} (-x_r) / (x_i - x_r), the weight of share i when
/// interpolating at zero.
template <PrimeOrderGroup G>
ScalarOf<G> lagrange_coeff_at_zero(const G& g, std::span<const ScalarOf<G>> xs,
                                   std::size_t i) {
  detail::check_identifiers(g, xs);
  if (i >= xs.size()) throw std::out_of_range("lagrange index");
  return detail::lagrange_unchecked(g, xs, i);
}

template <PrimeOrderGroup G>
std::vector<ScalarOf<G>> lagrange_coeffs_at_zero(const G& g,
                                                 std::span<const ScalarOf<G>> xs) {
  detail::check_identifiers(g, xs);
  std::vector<ScalarOf<G>> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(detail::lagrange_unchecked(g, xs, i));
  }
  return out;
}

/// sum_i lambda_i * Y_i over any number of shares (no arity check).
template <PrimeOrderGroup G>
PointOf<G> interpolate_at_zero(const G& g, std::span<const PublicShare<G>> shares) {
  std::vector<ScalarOf<G>> xs;
  xs.reserve(shares.size());
  for (const auto& s : shares) xs.push_back(s.x);
  auto lambdas = lagrange_coeffs_at_zero<G>(g, xs);
  auto acc = g.identity();
  for (std::size_t i = 0; i < shares.size(); ++i) {
    acc = g.point_add(acc, g.point_mul(lambdas[i], shares[i].Y));
  }
  return acc;
}

/// True iff the t public shares interpolate to Q at zero.
template <PrimeOrderGroup G>
bool verify_group(const G& g, std::span<const PublicShare<G>> shares,
                  const GroupCommitment<G>& commitment, std::size_t t) {
  if (shares.size() != t) throw Error(Errc::kWrongShareCount, "need exactly t shares");
  return interpolate_at_zero(g, shares) == commitment.Q;
}

/// Batch form for m >= t shares: all m points lie on one degree-(t-1)
/// polynomial through Q only if their full interpolation hits Q at zero.
template <PrimeOrderGroup G>
bool verify_group_batch(const G& g, std::span<const PublicShare<G>> shares,
                        const GroupCommitment<G>& commitment, std::size_t t) {
  if (shares.size() < t) throw Error(Errc::kWrongShareCount, "need at least t shares");
  return interpolate_at_zero(g, shares) == commitment.Q;
}

template <PrimeOrderGroup G>
ScalarOf<G> recover_group_key(const G& g, std::span<const PrivateShare<G>> shares,
                              std::size_t t) {
  if (shares.size() != t) throw Error(Errc::kWrongShareCount, "need exactly t shares");
  std::vector<ScalarOf<G>> xs;
  for (const auto& s : shares) xs.push_back(s.x);
  auto lambdas = lagrange_coeffs_at_zero<G>(g, xs);
  auto acc = g.scalar(0);
  for (std::size_t i = 0; i < shares.size(); ++i) {
    acc = g.add(acc, g.mul(lambdas[i], shares[i].y));
  }
  return acc;
}

/// Inverse of G::scalar(u64) for identifiers issued by IdentifierRegistry.
template <PrimeOrderGroup G>
std::uint64_t identifier_of(const G& g, const ScalarOf<G>& x) {
  auto enc = g.encode_scalar(x);
  const std::size_t n = std::min<std::size_t>(8, enc.size());
  for (std::size_t i = 0; i + n < enc.size(); ++i) {
    if (enc[i] != 0) throw Error(Errc::kInvalidIdentifier, "identifier exceeds 64 bits");
  }
  ByteReader r(ByteView(enc).last(n));
  return r.be(n);
}

// Hands out sequential nonzero identifiers 1, 2, 3, ... and refuses reuse.
// Not synchronized.
class IdentifierRegistry {
 public:
  std::uint64_t allocate() {
    while (issued_.count(next_)) ++next_;
    issued_.insert(next_);
    return next_++;
  }

  void reserve(std::uint64_t x) {
    if (x == 0) throw Error(Errc::kInvalidIdentifier, "x = 0");
    if (!issued_.insert(x).second) {
      throw Error(Errc::kDuplicateIdentifier, "identifier already issued");
    }
  }

  bool contains(std::uint64_t x) const { return issued_.count(x) != 0; }
  const std::set<std::uint64_t>& issued() const noexcept { return issued_; }

 private:
  std::uint64_t next_ = 1;
  std::set<std::uint64_t> issued_;
};

// Polynomial owner plus its identifier registry.
template <PrimeOrderGroup G>
class Dealer {
 public:
  Dealer(const G& g, GroupPolynomial<G> poly) : g_(&g), poly_(std::move(poly)) {}

  PrivateShare<G> issue_next() {
    return issue_share(*g_, poly_, g_->scalar(registry_.allocate()));
  }

  PrivateShare<G> issue_at(std::uint64_t x) {
    registry_.reserve(x);
    return issue_share(*g_, poly_, g_->scalar(x));
  }

  const GroupPolynomial<G>& polynomial() const noexcept { return poly_; }
  GroupCommitment<G> commitment() const { return group_commitment(*g_, poly_); }
  const IdentifierRegistry& registry() const noexcept { return registry_; }
  std::size_t threshold() const noexcept { return poly_.threshold(); }

 private:
  const G* g_;
  GroupPolynomial<G> poly_;
  IdentifierRegistry registry_;
};

// Length-prefixed fixed-width encodings.

template <PrimeOrderGroup G>
Bytes encode(const G& g, const PrivateShare<G>& s) {
  Bytes out;
  put_prefixed(out, g.encode_scalar(s.x));
  put_prefixed(out, g.encode_scalar(s.y));
  return out;
}

template <PrimeOrderGroup G>
Bytes encode(const G& g, const PublicShare<G>& s) {
  Bytes out;
  put_prefixed(out, g.encode_scalar(s.x));
  put_prefixed(out, g.encode_point(s.Y));
  return out;
}

template <PrimeOrderGroup G>
Bytes encode(const G& g, const GroupCommitment<G>& c) {
  Bytes out;
  put_prefixed(out, g.encode_point(c.Q));
  return out;
}

template <PrimeOrderGroup G>
PrivateShare<G> decode_private_share(const G& g, ByteView bytes) {
  ByteReader r(bytes);
  PrivateShare<G> s{g.decode_scalar(r.prefixed()), g.decode_scalar(r.prefixed())};
  r.expect_done();
  if (g.is_zero(s.x)) throw Error(Errc::kInvalidIdentifier, "x = 0");
  return s;
}

template <PrimeOrderGroup G>
PublicShare<G> decode_public_share(const G& g, ByteView bytes) {
  ByteReader r(bytes);
  PublicShare<G> s{g.decode_scalar(r.prefixed()), g.decode_point(r.prefixed())};
  r.expect_done();
  if (g.is_zero(s.x)) throw Error(Errc::kInvalidIdentifier, "x = 0");
  return s;
}

template <PrimeOrderGroup G>
GroupCommitment<G> decode_commitment(const G& g, ByteView bytes) {
  ByteReader r(bytes);
  GroupCommitment<G> c{g.decode_point(r.prefixed())};
  r.expect_done();
  return c;
}

}  // namespace swarmauth
