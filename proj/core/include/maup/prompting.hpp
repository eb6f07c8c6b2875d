#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "maup/simmaps.hpp"
#include "maup/tensors.hpp"

namespace maup {

struct PromptConfig {
  bool mmp = true;  // mean-map centroid prompts
  bool ump = true;  // uncertainty-map prompts
  bool np = true;   // periphery negative prompts
  double gamma = 5.0;
  int n_min = 3;
  int n_max = 10;
  int n_neg = 3;
  int uncertainty_picks = 2;
  int radius = 5;
  int n_f = 30;
  double percentile = 95.0;
  std::uint64_t seed = 0;
  int scale = 14;
  int threads = 1;

  /// Throws ConfigError on out-of-range values or when every positive path is off.
  void validate() const;
};

struct ComplexityScore {
  std::int64_t area = 0;
  std::int64_t perimeter = 0;
  double area_norm = 0.0;       // area / (H*W)
  double perimeter_norm = 0.0;  // perimeter / (2*(H+W)), capped at 1
  double c = 0.0;
};

/// Binarizes `mean` at tau_mean and scores the region's normalized area plus
/// perimeter. Throws EmptyCandidateError when nothing reaches tau_mean.
ComplexityScore complexity(const ScalarMap& mean, double tau_mean);

/// k = max(n_min, min(n_max, floor(gamma * c))).
int adaptive_k(double c, double gamma, int n_min, int n_max);
int adaptive_k(const ComplexityScore& score, double gamma, int n_min, int n_max);

enum class PromptSource { mean_centroid, uncertainty };

std::string_view to_string(PromptSource s) noexcept;

struct TaggedPoint {
  PointRC point;
  PromptSource source = PromptSource::mean_centroid;

  friend bool operator==(const TaggedPoint&, const TaggedPoint&) = default;
};

struct PositiveResult {
  std::vector<TaggedPoint> prompts;  // centroids first, then uncertainty picks
  int k_used = 0;                    // adaptive k; 0 when the mean path is off
  std::optional<ComplexityScore> score;
  std::optional<CandidateSet> q_mean;
  std::optional<CandidateSet> q_uncert;
};

/// Mean-map centroids (k adaptive) plus seeded random picks from the
/// uncertainty candidates, each path gated by cfg.mmp / cfg.ump.
PositiveResult positive_prompts(const ScalarMap& mean, const ScalarMap& uncert,
                                const PromptConfig& cfg, std::uint64_t seed);

enum class NegativeStatus { ok, disabled, periphery_empty, exhausted };

std::string_view to_string(NegativeStatus s) noexcept;

struct NegativeResult {
  std::vector<PointRC> points;  // row-major
  std::optional<CandidateSet> q_neg;
  NegativeStatus status = NegativeStatus::ok;
};

/// Top-percentile periphery-similarity pixels minus the positives, reduced to
/// n_neg spread representatives by k-means. Returns status `exhausted` with no
/// points when the positives consume every candidate.
NegativeResult negative_prompts(const ScalarMap& neg_map, std::span<const PointRC> positives,
                                int n_neg, std::uint64_t seed, double percentile = 95.0);

struct PromptSet {
  std::vector<TaggedPoint> positives;
  std::vector<PointRC> negatives;
  int k_used = 0;
  std::uint64_t seed = 0;
  int scale = 1;
  NegativeStatus negative_status = NegativeStatus::ok;

  std::vector<PointRC> positive_points() const;
};

}  // namespace maup
