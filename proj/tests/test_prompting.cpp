#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "maup/errors.hpp"
#include "maup/prompting.hpp"
#include "maup/regions.hpp"
#include "oracles.hpp"

using namespace maup;

namespace {

ScalarMap indicator(const BitMask& m) {
  ScalarMap s(m.height(), m.width());
  for (const auto& p : m.points()) s.at(p.row, p.col) = 1.0F;
  return s;
}

}  // namespace

TEST(AdaptiveK, ClampsToRange) {
  EXPECT_EQ(adaptive_k(0.4, 5.0, 3, 10), 3);
  EXPECT_EQ(adaptive_k(0.0, 5.0, 3, 10), 3);
  EXPECT_EQ(adaptive_k(99.0, 5.0, 3, 10), 10);
  EXPECT_EQ(adaptive_k(7.6, 5.0, 3, 10), 10);
  EXPECT_EQ(adaptive_k(0.76, 10.0, 3, 10), 7);
  EXPECT_EQ(adaptive_k(1.0, 5.0, 3, 10), 5);
}

TEST(AdaptiveK, MonotoneInComplexity) {
  int prev = 0;
  for (double c = 0.0; c <= 3.0; c += 0.01) {
    const int k = adaptive_k(c, 5.0, 3, 10);
    EXPECT_GE(k, prev);
    EXPECT_GE(k, 3);
    EXPECT_LE(k, 10);
    prev = k;
  }
}

TEST(Complexity, HandComputedFrames) {
  BitMask one(10, 10);
  one.set(4, 4);
  const auto s1 = complexity(indicator(one), 0.5);
  EXPECT_EQ(s1.area, 1);
  EXPECT_EQ(s1.perimeter, 4);
  EXPECT_NEAR(s1.c, 0.11, 1e-12);

  const auto full = complexity(ScalarMap(10, 10, 1.0F), 0.5);
  EXPECT_NEAR(full.c, 2.0, 1e-12);

  const auto small = complexity(indicator(oracle::rect_mask(10, 10, 3, 3, 2, 2)), 0.5);
  const auto big = complexity(indicator(oracle::rect_mask(10, 10, 3, 3, 4, 4)), 0.5);
  EXPECT_NEAR(small.c, 0.24, 1e-12);
  EXPECT_NEAR(big.c, 0.56, 1e-12);
  EXPECT_THROW(complexity(ScalarMap(4, 4), 0.5), EmptyCandidateError);
}

TEST(Complexity, BoundedAndGrowsWithNestedRectangles) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto s = complexity(indicator(oracle::random_nonempty_mask(rng, 16, 20, 0.3)), 0.5);
    EXPECT_GT(s.c, 0.0);
    EXPECT_LE(s.c, 2.0);
    EXPECT_LE(s.perimeter_norm, 1.0);
  }
  for (int grow = 1; grow < 8; ++grow) {
    const auto a = complexity(indicator(oracle::rect_mask(20, 20, 8, 8, grow, grow)), 0.5);
    const auto b =
        complexity(indicator(oracle::rect_mask(20, 20, 8 - 1, 8 - 1, grow + 2, grow + 2)), 0.5);
    EXPECT_LT(a.c, b.c);
  }
}

TEST(PositivePrompts, ConfigErrorWhenBothPathsOff) {
  PromptConfig cfg;
  cfg.mmp = cfg.ump = false;
  EXPECT_THROW(positive_prompts(ScalarMap(5, 5), ScalarMap(5, 5), cfg, 0), ConfigError);
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(PositivePrompts, MeanPathPicksFromTopRegion) {
  // A bright 6x6 square in a 20x20 map carries exactly the top 9%, so Q_mean is the square.
  ScalarMap mean(20, 20, 0.0F);
  for (int y = 5; y < 11; ++y)
    for (int x = 5; x < 11; ++x) mean.at(y, x) = 1.0F;
  PromptConfig cfg;
  cfg.ump = false;
  const auto r = positive_prompts(mean, ScalarMap(20, 20), cfg, 3);
  ASSERT_TRUE(r.q_mean.has_value());
  EXPECT_EQ(r.q_mean->size(), 36u);
  EXPECT_EQ(r.k_used, adaptive_k(complexity(mean, r.q_mean->threshold), 5.0, 3, 10));
  EXPECT_EQ(static_cast<int>(r.prompts.size()), r.k_used);
  for (const auto& t : r.prompts) {
    EXPECT_EQ(t.source, PromptSource::mean_centroid);
    EXPECT_EQ(mean.at(t.point), 1.0F);
  }
}

TEST(PositivePrompts, UncertaintyPathReturnsTwoDistinctPicks) {
  std::mt19937_64 rng(2);
  const ScalarMap u = oracle::random_scalar(rng, 16, 16, 0.0, 1.0);
  PromptConfig cfg;
  cfg.mmp = false;
  const auto r = positive_prompts(ScalarMap(16, 16), u, cfg, 5);
  ASSERT_EQ(r.prompts.size(), 2u);
  EXPECT_NE(r.prompts[0].point, r.prompts[1].point);
  EXPECT_EQ(r.k_used, 0);
  for (const auto& t : r.prompts) {
    EXPECT_EQ(t.source, PromptSource::uncertainty);
    EXPECT_TRUE(r.q_uncert->contains(t.point));
  }
}

TEST(PositivePrompts, UncertaintyCollisionFallsBackOrStops) {
  // Distinct low ramp values plus one peak: at the 99th percentile only the peak survives.
  ScalarMap mean(8, 8, 0.0F);
  for (int i = 0; i < 64; ++i) mean.at(i / 8, i % 8) = 0.001F * static_cast<float>(i);
  mean.at(2, 2) = 1.0F;
  ScalarMap u = mean;
  PromptConfig cfg;
  cfg.percentile = 99.0;
  auto r = positive_prompts(mean, u, cfg, 0);
  ASSERT_EQ(r.q_mean->size(), 1u);
  ASSERT_EQ(r.q_uncert->size(), 1u);
  ASSERT_EQ(r.prompts.size(), 1u);
  EXPECT_EQ(r.prompts[0].source, PromptSource::mean_centroid);

  // A second peak in U: one pick survives, and it is the unused peak.
  u.at(6, 6) = 1.0F;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    r = positive_prompts(mean, u, cfg, seed);
    ASSERT_EQ(r.prompts.size(), 2u);
    EXPECT_EQ(r.prompts[1].point, (PointRC{6, 6}));
    EXPECT_EQ(r.prompts[1].source, PromptSource::uncertainty);
  }
}

TEST(PositivePrompts, ContainmentAndUniquenessOnRandomMaps) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const ScalarMap mean = oracle::random_scalar(rng, 24, 24);
    const ScalarMap u = oracle::random_scalar(rng, 24, 24, 0.0, 0.5);
    PromptConfig cfg;
    const auto r = positive_prompts(mean, u, cfg, static_cast<std::uint64_t>(t));
    std::set<PointRC> seen;
    int uncertain = 0;
    for (const auto& tp : r.prompts) {
      EXPECT_TRUE(seen.insert(tp.point).second);
      if (tp.source == PromptSource::mean_centroid) {
        EXPECT_TRUE(r.q_mean->contains(tp.point));
      } else {
        ++uncertain;
        EXPECT_TRUE(r.q_uncert->contains(tp.point));
      }
    }
    EXPECT_EQ(uncertain, 2);
    EXPECT_GE(r.k_used, 3);
    EXPECT_LE(r.k_used, 10);
  }
}

TEST(NegativePrompts, DisjointFromPositivesAndInsideQneg) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const ScalarMap neg = oracle::random_scalar(rng, 20, 20);
    const auto q = extract_candidates(neg, percentile_threshold(neg, 95.0), CandidateSource::negative);
    std::vector<PointRC> pos(q.points.begin(), q.points.begin() + t % 5);
    const auto r = negative_prompts(neg, pos, 3, static_cast<std::uint64_t>(t));
    EXPECT_EQ(r.status, NegativeStatus::ok);
    EXPECT_EQ(r.points.size(), 3u);
    for (const auto& p : r.points) {
      EXPECT_TRUE(q.contains(p));
      EXPECT_EQ(std::find(pos.begin(), pos.end(), p), pos.end());
    }
  }
}

TEST(NegativePrompts, ExhaustedWhenPositivesCoverQneg) {
  ScalarMap neg(8, 8, 0.0F);
  for (int i = 0; i < 64; ++i) neg.at(i / 8, i % 8) = 0.001F * static_cast<float>(i);
  neg.at(1, 1) = 1.0F;
  const std::vector<PointRC> pos{{1, 1}};
  const auto r = negative_prompts(neg, pos, 3, 0, 99.0);
  EXPECT_EQ(r.status, NegativeStatus::exhausted);
  EXPECT_TRUE(r.points.empty());
  EXPECT_THROW(negative_prompts(neg, pos, 0, 0), ConfigError);
}

TEST(NegativePrompts, FewerCandidatesThanRequested) {
  ScalarMap neg(6, 6, 0.0F);
  neg.at(0, 5) = 1.0F;
  neg.at(5, 0) = 1.0F;
  const auto r = negative_prompts(neg, std::vector<PointRC>{}, 3, 0);
  EXPECT_EQ(r.points, (std::vector<PointRC>{{0, 5}, {5, 0}}));
}

TEST(PromptConfig, ValidateRejectsBadValues) {
  EXPECT_NO_THROW(PromptConfig{}.validate());
  auto bad = [](auto mutate) {
    PromptConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  bad([](PromptConfig& c) { c.gamma = 0; });
  bad([](PromptConfig& c) { c.n_max = 2; });
  bad([](PromptConfig& c) { c.n_f = 0; });
  bad([](PromptConfig& c) { c.radius = 0; });
  bad([](PromptConfig& c) { c.percentile = 100; });
  bad([](PromptConfig& c) { c.scale = 0; });
  bad([](PromptConfig& c) { c.threads = 0; });
}

TEST(ToString, Names) {
  EXPECT_EQ(to_string(PromptSource::mean_centroid), "mean");
  EXPECT_EQ(to_string(PromptSource::uncertainty), "uncertainty");
  EXPECT_EQ(to_string(NegativeStatus::periphery_empty), "periphery_empty");
  EXPECT_EQ(to_string(NegativeStatus::exhausted), "exhausted");
}

TEST(PositivePrompts, ConstantZeroUncertaintyStillGivesTwoPicks) {
  PromptConfig cfg;
  cfg.mmp = false;
  const auto r = positive_prompts(ScalarMap(12, 12), ScalarMap(12, 12, 0.0F), cfg, 11);
  EXPECT_EQ(r.q_uncert->threshold, 0.0);
  EXPECT_EQ(r.q_uncert->size(), 144u);
  EXPECT_EQ(r.prompts.size(), 2u);
}

TEST(PositivePrompts, SharpPeakKeepsCentroidsInside) {
  ScalarMap mean(20, 20, 0.0F);
  for (int y = 0; y < 20; ++y)
    for (int x = 0; x < 20; ++x) mean.at(y, x) = 0.0001F * static_cast<float>(y * 20 + x);
  for (int y = 8; y < 11; ++y)
    for (int x = 12; x < 15; ++x) mean.at(y, x) = 1.0F;
  PromptConfig cfg;
  cfg.ump = false;
  cfg.percentile = 98.0;
  const auto r = positive_prompts(mean, ScalarMap(20, 20), cfg, 2);
  ASSERT_EQ(r.q_mean->size(), 9u);
  for (const auto& t : r.prompts) {
    EXPECT_GE(t.point.row, 8);
    EXPECT_LE(t.point.row, 10);
    EXPECT_GE(t.point.col, 12);
    EXPECT_LE(t.point.col, 14);
  }
}

TEST(PositivePrompts, DisjointHotRegionsGiveKPlusTwo) {
  ScalarMap mean(20, 20, 0.0F);
  ScalarMap u(20, 20, 0.0F);
  for (int i = 0; i < 400; ++i) {
    mean.at(i / 20, i % 20) = 0.0001F * static_cast<float>(i);
    u.at(i / 20, i % 20) = 0.0001F * static_cast<float>(i);
  }
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) {
      mean.at(y, x) = 1.0F;
      u.at(y + 15, x + 15) = 1.0F;
    }
  PromptConfig cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = positive_prompts(mean, u, cfg, seed);
    EXPECT_EQ(r.q_mean->size(), 20u);
    EXPECT_EQ(static_cast<int>(r.prompts.size()), r.k_used + 2);
  }
}

TEST(NegativePrompts, ConstantMapGivesThreeSpreadPoints) {
  const std::vector<PointRC> pos{{3, 3}, {4, 4}};
  const auto r = negative_prompts(ScalarMap(10, 10, 0.2F), pos, 3, 1);
  EXPECT_EQ(r.q_neg->size(), 100u);
  ASSERT_EQ(r.points.size(), 3u);
  for (const auto& p : r.points) EXPECT_EQ(std::find(pos.begin(), pos.end(), p), pos.end());
}

TEST(NegativePrompts, HotRingKeepsNegativesOnRing) {
  BitMask organ = oracle::disk_mask(32, 32, 16, 16, 6);
  const BitMask ring = periphery_mask(organ, StructuringElement::disk(3));
  ScalarMap neg(32, 32, 0.0F);
  for (int i = 0; i < 1024; ++i) neg.at(i / 32, i % 32) = 0.00001F * static_cast<float>(i);
  for (const auto& p : ring.points()) neg.at(p.row, p.col) = 1.0F;
  const double pct = 100.0 * (1.0 - static_cast<double>(ring.count()) / 1024.0) + 0.01;
  const auto r = negative_prompts(neg, std::vector<PointRC>{}, 3, 4, pct);
  ASSERT_EQ(r.points.size(), 3u);
  for (const auto& p : r.points) EXPECT_TRUE(ring.test(p));
}
