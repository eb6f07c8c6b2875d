#include "maup/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maup/errors.hpp"
#include "maup/random.hpp"

namespace maup {
namespace {

using Center = std::array<double, 2>;

double sq_dist(PointRC p, const Center& c) noexcept {
  const double dy = static_cast<double>(p.row) - c[0];
  const double dx = static_cast<double>(p.col) - c[1];
  return dy * dy + dx * dx;
}

Center as_center(PointRC p) noexcept {
  return {static_cast<double>(p.row), static_cast<double>(p.col)};
}

std::vector<Center> plus_plus_init(const std::vector<PointRC>& pts, int k, Rng& rng) {
  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.push_back(as_center(pts[rng.uniform_index(pts.size())]));

  std::vector<double> d2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) d2[i] = sq_dist(pts[i], centers[0]);

  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (double d : d2) total += d;
    const double target = rng.uniform01() * total;
    std::size_t pick = pts.size();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (d2[i] <= 0.0) continue;
      cumulative += d2[i];
      pick = i;
      if (cumulative > target) break;
    }
    centers.push_back(as_center(pts[pick]));
    for (std::size_t i = 0; i < pts.size(); ++i)
      d2[i] = std::min(d2[i], sq_dist(pts[i], centers.back()));
  }
  return centers;
}

void assign_nearest(const std::vector<PointRC>& pts, const std::vector<Center>& centers,
                    std::vector<int>& assignment) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int best = 0;
    double best_d = sq_dist(pts[i], centers[0]);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      const double d = sq_dist(pts[i], centers[c]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assignment[i] = best;
  }
}

// Gives every empty cluster the point farthest from its current center,
// taken from a cluster that keeps at least one member.
void repair_empty(const std::vector<PointRC>& pts, std::vector<Center>& centers,
                  std::vector<int>& assignment) {
  std::vector<int> sizes(centers.size(), 0);
  for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];
  for (std::size_t j = 0; j < centers.size(); ++j) {
    if (sizes[j] > 0) continue;
    std::size_t donor = pts.size();
    double worst = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto a = static_cast<std::size_t>(assignment[i]);
      if (sizes[a] < 2) continue;
      const double d = sq_dist(pts[i], centers[a]);
      if (d > worst) {
        worst = d;
        donor = i;
      }
    }
    if (donor == pts.size()) continue;  // unreachable while k <= distinct points
    --sizes[static_cast<std::size_t>(assignment[donor])];
    assignment[donor] = static_cast<int>(j);
    sizes[j] = 1;
    centers[j] = as_center(pts[donor]);
  }
}

double cost(const std::vector<PointRC>& pts, const std::vector<Center>& centers,
            const std::vector<int>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    total += sq_dist(pts[i], centers[static_cast<std::size_t>(assignment[i])]);
  return total;
}

std::vector<Center> member_means(const std::vector<PointRC>& pts, const std::vector<int>& assignment,
                                 const std::vector<Center>& fallback) {
  std::vector<Center> sums(fallback.size(), Center{0.0, 0.0});
  std::vector<std::size_t> counts(fallback.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto a = static_cast<std::size_t>(assignment[i]);
    sums[a][0] += pts[i].row;
    sums[a][1] += pts[i].col;
    ++counts[a];
  }
  std::vector<Center> means(fallback.size());
  for (std::size_t c = 0; c < fallback.size(); ++c) {
    if (counts[c] == 0) {
      means[c] = fallback[c];
    } else {
      const double n = static_cast<double>(counts[c]);
      means[c] = {sums[c][0] / n, sums[c][1] / n};
    }
  }
  return means;
}

struct Run {
  std::vector<Center> centers;
  std::vector<int> assignment;
  double initial_wcss = 0.0;
  double final_wcss = 0.0;
  int iterations = 0;
};

Run lloyd(const std::vector<PointRC>& pts, int k, Rng& rng, const KMeansOptions& options) {
  Run r;
  std::vector<Center> centers = plus_plus_init(pts, k, rng);
  std::vector<int> assignment(pts.size(), 0);
  assign_nearest(pts, centers, assignment);
  r.initial_wcss = cost(pts, centers, assignment);

  // Lloyd's iterations never increase the objective in exact arithmetic; the
  // best state seen is kept so rounding cannot make the result worse than the start.
  std::vector<Center> best_centers = centers;
  std::vector<int> best_assignment = assignment;
  double best_wcss = r.initial_wcss;

  for (int it = 0; it < options.max_iterations; ++it) {
    std::vector<Center> next = member_means(pts, assignment, centers);
    double movement = 0.0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      movement = std::max(movement, std::sqrt((next[c][0] - centers[c][0]) * (next[c][0] - centers[c][0]) +
                                              (next[c][1] - centers[c][1]) * (next[c][1] - centers[c][1])));
    }
    centers = std::move(next);
    assign_nearest(pts, centers, assignment);
    repair_empty(pts, centers, assignment);
    r.iterations = it + 1;

    const double w = cost(pts, centers, assignment);
    if (w <= best_wcss) {
      best_wcss = w;
      best_centers = centers;
      best_assignment = assignment;
    }
    if (movement < options.tolerance) break;
  }

  // Scoring the assignment at its own means is never worse than at the centers it came from.
  r.centers = member_means(pts, best_assignment, best_centers);
  r.assignment = std::move(best_assignment);
  r.final_wcss = std::min(best_wcss, cost(pts, r.centers, r.assignment));
  return r;
}

}  // namespace

KMeansResult kmeans_cluster(std::span<const PointRC> points, int k, std::uint64_t seed,
                            const KMeansOptions& options) {
  if (points.empty()) throw EmptyCandidateError("k-means over an empty point set");
  if (k < 1) throw ConfigError("k must be >= 1");

  KMeansResult r;
  r.points.assign(points.begin(), points.end());
  std::sort(r.points.begin(), r.points.end());
  r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
  const auto& pts = r.points;
  r.k = std::min<int>(k, static_cast<int>(pts.size()));

  if (options.restarts < 1) throw ConfigError("k-means needs at least one restart");

  Rng rng(seed);
  bool have = false;
  for (int run = 0; run < options.restarts; ++run) {
    Run cur = lloyd(pts, r.k, rng, options);
    if (!have || cur.final_wcss < r.final_wcss) {
      have = true;
      r.centroids = std::move(cur.centers);
      r.assignment = std::move(cur.assignment);
      r.initial_wcss = cur.initial_wcss;
      r.final_wcss = cur.final_wcss;
      r.iterations = cur.iterations;
    }
  }

  // pts is row-major, so strict < keeps the smallest row-major index on ties.
  std::vector<std::size_t> nearest(r.centroids.size(), pts.size());
  std::vector<double> nearest_d(r.centroids.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto a = static_cast<std::size_t>(r.assignment[i]);
    const double d = sq_dist(pts[i], r.centroids[a]);
    if (d < nearest_d[a]) {
      nearest_d[a] = d;
      nearest[a] = i;
    }
  }
  for (std::size_t idx : nearest)
    if (idx < pts.size()) r.snapped.push_back(pts[idx]);
  std::sort(r.snapped.begin(), r.snapped.end());
  return r;
}

std::vector<PointRC> kmeans(std::span<const PointRC> points, int k, std::uint64_t seed) {
  return kmeans_cluster(points, k, seed).snapped;
}

double wcss_at_means(std::span<const PointRC> points, std::span<const int> assignment, int k) {
  std::vector<Center> sums(static_cast<std::size_t>(k), Center{0.0, 0.0});
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto a = static_cast<std::size_t>(assignment[i]);
    sums[a][0] += points[i].row;
    sums[a][1] += points[i].col;
    ++counts[a];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto a = static_cast<std::size_t>(assignment[i]);
    const double n = static_cast<double>(counts[a]);
    total += sq_dist(points[i], Center{sums[a][0] / n, sums[a][1] / n});
  }
  return total;
}

}  // namespace maup
