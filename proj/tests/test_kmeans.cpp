#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "maup/errors.hpp"
#include "maup/kmeans.hpp"
#include "oracles.hpp"

using namespace maup;

namespace {

std::vector<PointRC> random_points(std::mt19937_64& rng, int n, int extent) {
  std::uniform_int_distribution<int> u(0, extent - 1);
  std::vector<PointRC> pts;
  for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
  return pts;
}

}  // namespace

TEST(KMeans, SingleClusterSnapsToMemberNearestMean) {
  const std::vector<PointRC> pts{{0, 0}, {0, 2}, {2, 0}, {2, 2}, {1, 1}};
  const auto r = kmeans_cluster(pts, 1, 9);
  ASSERT_EQ(r.snapped.size(), 1u);
  EXPECT_EQ(r.snapped[0], (PointRC{1, 1}));
  EXPECT_DOUBLE_EQ(r.centroids[0][0], 1.0);
  EXPECT_DOUBLE_EQ(r.centroids[0][1], 1.0);
}

TEST(KMeans, TwoSeparatedBlobs) {
  std::vector<PointRC> pts;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) {
      pts.push_back({y, x});
      pts.push_back({y + 40, x + 40});
    }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto snapped = kmeans(pts, 2, seed);
    EXPECT_EQ(snapped, (std::vector<PointRC>{{1, 1}, {41, 41}}));
  }
}

TEST(KMeans, KAtLeastDistinctCountReturnsAllPoints) {
  const std::vector<PointRC> pts{{3, 1}, {0, 4}, {3, 1}, {2, 2}};
  const auto r = kmeans_cluster(pts, 10, 1);
  EXPECT_EQ(r.k, 3);
  EXPECT_EQ(r.snapped, (std::vector<PointRC>{{0, 4}, {2, 2}, {3, 1}}));
  EXPECT_EQ(r.final_wcss, 0.0);
}

TEST(KMeans, Errors) {
  EXPECT_THROW(kmeans(std::vector<PointRC>{}, 2, 0), EmptyCandidateError);
  EXPECT_THROW(kmeans(std::vector<PointRC>{{0, 0}}, 0, 0), ConfigError);
}

TEST(KMeans, OutputsAreDistinctMembersAndDeterministic) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto pts = random_points(rng, 5 + t % 60, 32);
    const int k = 1 + t % 10;
    const auto r = kmeans_cluster(pts, k, static_cast<std::uint64_t>(t));
    const std::set<PointRC> members(pts.begin(), pts.end());
    const std::set<PointRC> out(r.snapped.begin(), r.snapped.end());
    EXPECT_EQ(out.size(), r.snapped.size());
    EXPECT_EQ(static_cast<int>(r.snapped.size()), r.k);
    EXPECT_LE(r.k, k);
    for (const auto& p : r.snapped) EXPECT_TRUE(members.contains(p));
    EXPECT_EQ(kmeans(pts, k, static_cast<std::uint64_t>(t)), r.snapped);
  }
}

TEST(KMeans, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_points(rng, 10 + t % 80, 40);
    const auto r = kmeans_cluster(pts, 2 + t % 8, static_cast<std::uint64_t>(t));
    EXPECT_LE(r.final_wcss, r.initial_wcss);
    EXPECT_NEAR(wcss_at_means(r.points, r.assignment, r.k), r.final_wcss, 1e-9);
    EXPECT_GE(r.iterations, 0);
    EXPECT_LE(r.iterations, 100);
  }
}

TEST(KMeans, TwoMeansUsuallyOptimalOnSmallFixtures) {
  std::mt19937_64 rng(3);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<PointRC> pts = random_points(rng, 20, 24);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const auto r = kmeans_cluster(pts, 2, static_cast<std::uint64_t>(t));
    if (r.final_wcss <= oracle::exhaustive_two_means(pts) + 1e-9) ++hits;
  }
  EXPECT_GE(hits, 95);
}
