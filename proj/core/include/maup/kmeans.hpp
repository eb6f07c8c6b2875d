#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "maup/tensors.hpp"

namespace maup {

struct KMeansOptions {
  int max_iterations = 100;
  double tolerance = 1e-4;  // max centroid movement that counts as converged
  int restarts = 20;        // independent seeded initializations; the lowest WCSS wins
};

struct KMeansResult {
  std::vector<PointRC> points;                 // distinct inputs, row-major
  std::vector<int> assignment;                 // cluster of points[i]
  std::vector<std::array<double, 2>> centroids;  // (row, col)
  /// Per cluster, the member pixel nearest the centroid (ties: smallest
  /// row-major), sorted row-major.
  std::vector<PointRC> snapped;
  double initial_wcss = 0.0;
  double final_wcss = 0.0;
  int iterations = 0;  // Lloyd iterations of the winning run
  int k = 0;  // effective cluster count after clamping to the distinct points
};

/// Lloyd's algorithm on pixel coordinates with seeded k-means++ initialization.
/// Throws EmptyCandidateError for empty input.
KMeansResult kmeans_cluster(std::span<const PointRC> points, int k, std::uint64_t seed,
                            const KMeansOptions& options = {});

/// Snapped, on-grid cluster representatives.
std::vector<PointRC> kmeans(std::span<const PointRC> points, int k, std::uint64_t seed);

/// Within-cluster sum of squares of `assignment` with centroids at the member means.
double wcss_at_means(std::span<const PointRC> points, std::span<const int> assignment, int k);

}  // namespace maup
