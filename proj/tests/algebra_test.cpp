#include "swarmauth/algebra.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace swarmauth {
namespace {

// Brute-force inverse: the only b in [1, q) with a*b = 1 (mod q).
std::uint64_t inverse_by_search(std::uint64_t a, std::uint64_t q) {
  for (std::uint64_t b = 1; b < q; ++b) {
    if (a * b % q == 1) return b;
  }
  return 0;
}

TEST(ToyGroupTest, RejectsCompositeOrder) {
  EXPECT_THROW(ToyGroup(100), std::invalid_argument);
  EXPECT_THROW(ToyGroup(2), std::invalid_argument);
  EXPECT_NO_THROW(ToyGroup(101));
  EXPECT_NO_THROW(ToyGroup((1ull << 61) - 1));
}

TEST(ToyGroupTest, PrimalityMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    bool trial = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && trial; ++d) trial = n % d != 0;
    ASSERT_EQ(is_prime_u64(n), trial) << n;
  }
}

TEST(ScalarTest, AddExamples) {
  ToyGroup g(101);
  EXPECT_EQ(scalar_add(g, g.scalar(100), g.scalar(2)).value, 1u);
  EXPECT_EQ(scalar_add(g, g.scalar(0), g.scalar(57)).value, 57u);
  EXPECT_EQ(scalar_add(g, g.scalar(51), g.scalar(51)).value, (51u + 51u) % 101u);
}

TEST(ScalarTest, MulExamples) {
  ToyGroup g(101);
  EXPECT_EQ(scalar_mul(g, g.scalar(1), g.scalar(77)).value, 77u);
  EXPECT_EQ(scalar_mul(g, g.scalar(2), g.scalar(51)).value, 2u * 51u % 101u);
  EXPECT_EQ(scalar_mul(g, g.scalar(0), g.scalar(99)).value, 0u);
}

TEST(ScalarTest, InverseExamples) {
  ToyGroup g101(101);
  ToyGroup g13(13);
  EXPECT_EQ(scalar_inv(g101, g101.scalar(1)).value, 1u);
  EXPECT_EQ(scalar_inv(g101, g101.scalar(2)).value, inverse_by_search(2, 101));
  EXPECT_EQ(scalar_inv(g101, g101.scalar(2)).value, 51u);
  EXPECT_EQ(scalar_inv(g13, g13.scalar(5)).value, inverse_by_search(5, 13));
  EXPECT_EQ(scalar_inv(g13, g13.scalar(5)).value, 8u);
}

TEST(ScalarTest, InverseOfZeroThrows) {
  ToyGroup g(101);
  try {
    scalar_inv(g, g.scalar(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kZeroInverse);
  }
  Ristretto255 r;
  EXPECT_THROW(scalar_inv(r, r.scalar(0)), Error);
}

TEST(ScalarTest, InverseMatchesSearchForAllResidues) {
  ToyGroup g(101);
  for (std::uint64_t a = 1; a < 101; ++a) {
    ASSERT_EQ(scalar_inv(g, g.scalar(a)).value, inverse_by_search(a, 101));
  }
}

TEST(ScalarTest, AddDoesNotOverflowNearTwoToThe64) {
  // Largest 64-bit prime.
  const std::uint64_t q = 18446744073709551557ull;
  ToyGroup g(q);
  auto a = g.scalar(q - 1);
  EXPECT_EQ(scalar_add(g, a, a).value, q - 2);
  EXPECT_EQ(scalar_mul(g, a, a).value, 1u);
}

template <class G>
class FieldLawsTest : public ::testing::Test {};

struct ToyBig : ToyGroup {
  ToyBig() : ToyGroup((1ull << 61) - 1) {}
};
using Groups = ::testing::Types<ToyBig, Ristretto255>;
TYPED_TEST_SUITE(FieldLawsTest, Groups);

TYPED_TEST(FieldLawsTest, FieldAndGroupLaws) {
  TypeParam g;
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = g.random_scalar(rng), b = g.random_scalar(rng), c = g.random_scalar(rng);
    ASSERT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
    ASSERT_EQ(g.add(a, b), g.add(b, a));
    ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    ASSERT_EQ(g.mul(a, b), g.mul(b, a));
    ASSERT_EQ(g.mul(a, g.add(b, c)), g.add(g.mul(a, b), g.mul(a, c)));
    if (!g.is_zero(a)) {
      ASSERT_EQ(g.mul(a, g.inv(a)), g.scalar(1));
    }
    ASSERT_TRUE(g.is_zero(g.add(a, g.neg(a))));

    auto P = g.random_point(rng), R = g.random_point(rng), S = g.random_point(rng);
    ASSERT_EQ(point_add(g, P, R), point_add(g, R, P));
    ASSERT_EQ(point_add(g, point_add(g, P, R), S), point_add(g, P, point_add(g, R, S)));
    ASSERT_EQ(point_add(g, g.identity(), P), P);
    // (a + b) g = a g + b g
    ASSERT_EQ(point_mul(g, g.add(a, b), P),
              point_add(g, point_mul(g, a, P), point_mul(g, b, P)));
    // a (b P) = (ab) P
    ASSERT_EQ(point_mul(g, a, point_mul(g, b, g.generator())),
              base_mul(g, g.mul(a, b)));
  }
}

TYPED_TEST(FieldLawsTest, OrderAnnihilatesGenerator) {
  TypeParam g;
  auto minus_one = g.neg(g.scalar(1));
  EXPECT_EQ(point_add(g, base_mul(g, minus_one), g.generator()), g.identity());
  EXPECT_EQ(base_mul(g, g.scalar(0)), g.identity());
}

TYPED_TEST(FieldLawsTest, EncodingRoundTripAndInjectivity) {
  TypeParam g;
  Rng rng(12);
  std::vector<Bytes> seen;
  std::vector<PointOf<TypeParam>> points;
  for (int i = 0; i < 1000; ++i) {
    auto p = g.random_point(rng);
    auto enc = encode_point(g, p);
    ASSERT_EQ(enc.size(), g.point_width());
    ASSERT_EQ(decode_point(g, enc), p);
    auto s = g.random_scalar(rng);
    auto senc = encode_scalar(g, s);
    ASSERT_EQ(senc.size(), g.scalar_width());
    ASSERT_EQ(decode_scalar(g, senc), s);
    seen.push_back(enc);
    points.push_back(p);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      if (seen[i] == seen[j]) {
        ASSERT_EQ(points[i], points[j]);
      }
    }
  }
  auto id = encode_point(g, g.identity());
  EXPECT_EQ(decode_point(g, id), g.identity());
}

TEST(EncodingTest, ToyPointIsFixedWidthBigEndian) {
  ToyGroup g(101);
  EXPECT_EQ(encode_point(g, base_mul(g, g.scalar(5))), Bytes{5});
  ToyGroup big((1ull << 61) - 1);
  EXPECT_EQ(encode_point(big, ToyGroup::Point{0x0102}),
            (Bytes{0, 0, 0, 0, 0, 0, 0x01, 0x02}));
}

TEST(EncodingTest, MalformedInputsThrowDecodeError) {
  ToyGroup g(101);
  EXPECT_THROW(decode_point(g, Bytes{}), Error);
  EXPECT_THROW(decode_point(g, Bytes{101}), Error);  // not reduced
  EXPECT_THROW(decode_point(g, Bytes{1, 2}), Error);
  Ristretto255 r;
  Bytes bad(32, 0xff);
  try {
    decode_point(r, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDecodeError);
  }
  EXPECT_THROW(decode_scalar(r, bad), Error);
  EXPECT_THROW(decode_point(r, Bytes(31, 0)), Error);
}

TEST(EncodingTest, RistrettoScalarIsBigEndian) {
  Ristretto255 r;
  auto enc = encode_scalar(r, r.scalar(0x0102));
  ASSERT_EQ(enc.size(), 32u);
  EXPECT_EQ(enc[31], 0x02);
  EXPECT_EQ(enc[30], 0x01);
  EXPECT_EQ(std::accumulate(enc.begin(), enc.begin() + 30, 0), 0);
}

TEST(ToyGroupTest, PointMulIsIdentityMapOnGenerator) {
  ToyGroup g(101);
  EXPECT_EQ(base_mul(g, g.scalar(5)).value, 5u);
  EXPECT_EQ(point_add(g, base_mul(g, g.scalar(100)), g.generator()), g.identity());
  EXPECT_EQ(point_add(g, ToyGroup::Point{40}, ToyGroup::Point{61}).value, (40u + 61u) % 101u);
  EXPECT_EQ(point_add(g, ToyGroup::Point{12}, ToyGroup::Point{19}).value, 31u);
  for (std::uint64_t s = 0; s < 101; ++s) ASSERT_EQ(base_mul(g, g.scalar(s)).value, s);
}

}  // namespace
}  // namespace swarmauth
