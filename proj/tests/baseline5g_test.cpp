#include "swarmauth/baseline5g.hpp"

#include <gtest/gtest.h>

namespace swarmauth::nr5g {
namespace {

class Baseline5gTest : public ::testing::Test {
 protected:
  Ristretto255 g;
  Rng rng{42};
  NetworkKeys keys = generate_network_keys(g, rng);
};

TEST_F(Baseline5gTest, SuciRoundTrip) {
  for (int i = 0; i < 50; ++i) {
    auto supi = random_supi(rng);
    ASSERT_EQ(udm_decrypt(g, compute_suci(g, supi, keys.public_key, rng), keys), supi);
  }
}

TEST_F(Baseline5gTest, SuciIsRandomized) {
  auto supi = random_supi(rng);
  for (int i = 0; i < 20; ++i) {
    auto a = compute_suci(g, supi, keys.public_key, rng);
    auto b = compute_suci(g, supi, keys.public_key, rng);
    ASSERT_NE(a.ciphertext, b.ciphertext);
  }
}

TEST_F(Baseline5gTest, TruncatedOrForeignSuciFails) {
  auto suci = compute_suci(g, random_supi(rng), keys.public_key, rng);
  auto cut = suci;
  cut.ciphertext.resize(40);
  try {
    udm_decrypt(g, cut, keys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDecryptError);
  }
  auto other = generate_network_keys(g, rng);
  EXPECT_THROW(udm_decrypt(g, suci, other), Error);
}

TEST_F(Baseline5gTest, ChallengeLayout) {
  auto supi = random_supi(rng);
  auto suci = compute_suci(g, supi, keys.public_key, rng);
  auto st = udm_challenge(g, suci, keys, rng);
  EXPECT_EQ(st.supi, supi);
  ASSERT_EQ(st.xres.size(), st.rand.size() + suci.ciphertext.size());
  EXPECT_TRUE(std::equal(st.rand.begin(), st.rand.end(), st.xres.begin()));
  EXPECT_TRUE(std::equal(suci.ciphertext.begin(), suci.ciphertext.end(),
                         st.xres.begin() + st.rand.size()));
  auto st2 = udm_challenge(g, suci, keys, rng);
  EXPECT_NE(st.rand, st2.rand);
}

TEST_F(Baseline5gTest, HxresProperties) {
  auto suci = compute_suci(g, random_supi(rng), keys.public_key, rng);
  auto st = udm_challenge(g, suci, keys, rng);
  auto h = ausf_hxres(st);
  EXPECT_EQ(h.size(), 32u);
  EXPECT_EQ(h, ausf_hxres(st));
  for (std::size_t bit = 0; bit < st.xres.size() * 8; bit += 37) {
    auto flipped = st;
    flipped.xres[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    ASSERT_NE(ausf_hxres(flipped), h);
  }
}

TEST_F(Baseline5gTest, ResponseAndChecks) {
  auto suci = compute_suci(g, random_supi(rng), keys.public_key, rng);
  auto st = udm_challenge(g, suci, keys, rng);
  st.hxres = ausf_hxres(st);
  auto res = ue_response(suci, st.rand);
  EXPECT_EQ(res, st.xres);
  EXPECT_TRUE(seaf_check(res, st.hxres));
  EXPECT_EQ(ausf_confirm(res, st), st.supi);

  auto wrong = st.rand;
  wrong[3] ^= 0x80;
  EXPECT_NE(ue_response(suci, wrong), st.xres);

  // Guessing without the original SUCI bytes.
  for (int i = 0; i < 100; ++i) {
    auto guess_suci = compute_suci(g, st.supi, keys.public_key, rng);
    auto guess = ue_response(guess_suci, st.rand);
    ASSERT_NE(guess, st.xres);
    ASSERT_FALSE(seaf_check(guess, st.hxres));
  }

  auto bad = res;
  bad[0] ^= 1;
  EXPECT_FALSE(seaf_check(bad, st.hxres));
  EXPECT_FALSE(ausf_confirm(bad, st));
}

TEST_F(Baseline5gTest, HappyPathAndOperationCounts) {
  for (int i = 0; i < 100; ++i) {
    auto supi = random_supi(rng);
    auto r = run_flow(g, supi, keys, rng);
    ASSERT_TRUE(r.supi);
    ASSERT_EQ(*r.supi, supi);
    ASSERT_EQ(r.counters.asym_encrypts, 1u);
    ASSERT_EQ(r.counters.asym_decrypts, 1u);
    ASSERT_EQ(r.counters.hashes, 2u);
    ASSERT_EQ(r.counters.round_trips, 2u);
  }
}

TEST_F(Baseline5gTest, TamperingRejectedAtFirstObserver) {
  const std::pair<Tamper, const char*> cases[] = {
      {Tamper::kSuci, "udm"},          {Tamper::kRand, "seaf"}, {Tamper::kHxres, "seaf"},
      {Tamper::kRes, "seaf"},          {Tamper::kResAfterSeaf, "ausf"},
  };
  for (auto [where, who] : cases) {
    auto r = run_flow(g, random_supi(rng), keys, rng, where);
    EXPECT_FALSE(r.supi);
    EXPECT_EQ(r.rejected_at, who);
  }
}

}  // namespace
}  // namespace swarmauth::nr5g
