// SPDX-License-Identifier: Apache-2.0
#include <vector>

#include <gtest/gtest.h>

#include "mawtap/matlin.hpp"
#include "mawtap/model.hpp"

using namespace mawtap;

TEST(Validate, Examples) {
  EXPECT_EQ(validate({2, 2, 4, 1}), Validity::ok);
  EXPECT_EQ(validate({2, 2, 3, 4}), Validity::degenerate);
  try {
    validate({0, 2, 3, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_config);
  }
}

TEST(Canonical, SwapsTransmitters) {
  EXPECT_EQ(canonical({1, 3, 2, 2}), (AntennaConfig{3, 1, 2, 2}));
  EXPECT_EQ(canonical({3, 1, 2, 2}), (AntennaConfig{3, 1, 2, 2}));
}

TEST(SampleChannels, Shapes) {
  const std::vector<int> one{1};
  const auto ch = sample_channels({2, 2, 3, 1}, one, 1.0, 7);
  EXPECT_EQ(ch.h1.rows(), 3);
  EXPECT_EQ(ch.h1.cols(), 2);
  EXPECT_EQ(ch.h2.rows(), 3);
  EXPECT_EQ(ch.h2.cols(), 2);
  ASSERT_EQ(ch.eves.size(), 1u);
  EXPECT_EQ(ch.eves[0].g1.rows(), 1);
  EXPECT_EQ(ch.eves[0].g1.cols(), 2);
  EXPECT_EQ(ch.eves[0].g2.cols(), 2);

  const std::vector<int> two{2, 1};
  const auto c2 = sample_channels({3, 2, 2, 2}, two, 1.0, 7);
  ASSERT_EQ(c2.eves.size(), 2u);
  EXPECT_EQ(c2.eves[0].g1.rows(), 2);
  EXPECT_EQ(c2.eves[0].g1.cols(), 3);
  EXPECT_EQ(c2.eves[0].g2.cols(), 2);
  EXPECT_EQ(c2.eves[1].g1.rows(), 1);
  EXPECT_EQ(c2.eves[1].g2.rows(), 1);
}

TEST(SampleChannels, Reproducible) {
  const std::vector<int> one{1};
  const auto a = sample_channels({2, 2, 3, 1}, one, 1.0, 7);
  const auto b = sample_channels({2, 2, 3, 1}, one, 1.0, 7);
  const auto c = sample_channels({2, 2, 3, 1}, one, 1.0, 8);
  EXPECT_EQ(a.h1, b.h1);
  EXPECT_EQ(a.h2, b.h2);
  EXPECT_EQ(a.eves[0].g1, b.eves[0].g1);
  EXPECT_NE(a.h1, c.h1);
}

TEST(SampleChannels, EveCountAboveNe) {
  const std::vector<int> too_many{2};
  try {
    sample_channels({2, 2, 3, 1}, too_many, 1.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_eve_count);
  }
}

TEST(SampleChannels, LegitimateChannelsFullRank) {
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; n <= 4; ++n) {
        const auto ch = sample_channels({m, m, n, 0}, {}, 1.0, seed);
        EXPECT_EQ(numerical_rank(ch.h1), std::min(n, m));
        EXPECT_EQ(numerical_rank(ch.h2), std::min(n, m));
      }
}

TEST(SampleChannels, EmpiricalMoments) {
  const auto ch = sample_channels({40, 40, 50, 0}, {}, 1.0, 3);
  const double power = ch.h1.squaredNorm() / static_cast<double>(ch.h1.size());
  EXPECT_NEAR(power, 1.0, 0.05);
  EXPECT_NEAR(std::abs(ch.h1.mean()), 0.0, 0.05);
}

TEST(BlockEavesdroppers, Shapes) {
  const std::vector<int> eves{1};
  const auto e = sample_block_eavesdroppers({2, 2, 3, 1}, eves, 2, 5);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].g1.rows(), 2);
  EXPECT_EQ(e[0].g1.cols(), 4);
  // independent per-use blocks
  EXPECT_EQ(e[0].g1.block(0, 2, 1, 2).norm(), 0.0);
  EXPECT_NE(e[0].g1.block(0, 0, 1, 2), e[0].g1.block(1, 2, 1, 2));
}

TEST(PowerPolicy, Check) {
  EXPECT_NO_THROW((PowerPolicy{10.0, 0.5}.check()));
  EXPECT_THROW((PowerPolicy{10.0, 0.0}.check()), Error);
  EXPECT_THROW((PowerPolicy{10.0, 1.0}.check()), Error);
  EXPECT_THROW((PowerPolicy{0.0, 0.5}.check()), Error);
}
