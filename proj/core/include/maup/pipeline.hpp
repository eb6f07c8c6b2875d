#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "maup/prompting.hpp"
#include "maup/prototypes.hpp"
#include "maup/regions.hpp"
#include "maup/simmaps.hpp"
#include "maup/tensors.hpp"

namespace maup {

/// Point prompt in exported image coordinates.
struct ExportPoint {
  int x = 0;
  int y = 0;
  int label = 1;  // 1 positive, 0 negative
  std::optional<PromptSource> source;  // positives only

  friend bool operator==(const ExportPoint&, const ExportPoint&) = default;
};

/// What a promptable segmenter receives (prompts.json).
struct PromptExport {
  std::vector<ExportPoint> positives;
  std::vector<ExportPoint> negatives;
  int k_used = 0;
  std::optional<double> tau_mean;
  std::optional<double> tau_uncert;
  std::optional<double> tau_neg;
  int n_f = 0;
  std::uint64_t seed = 0;
  int scale = 1;
  NegativeStatus negative_status = NegativeStatus::ok;

  friend bool operator==(const PromptExport&, const PromptExport&) = default;
};

/// Grid -> image: (col*scale + scale/2, row*scale + scale/2).
ExportPoint to_image(PointRC p, int scale, int label);
/// Inverse of to_image.
PointRC to_grid(const ExportPoint& p, int scale);

std::string to_canonical_json(const PromptExport& e);
/// Throws FormatError on malformed input.
PromptExport parse_prompt_json(const std::string& text);

struct EpisodeInputs {
  FeatureMap support_features;
  BitMask support_mask;
  FeatureMap query_features;
};

struct EpisodeResult {
  Partition partition;
  ScalarMap mean;
  ScalarMap uncertainty;
  std::optional<ScalarMap> negative;  // absent when NP is off or the periphery is empty
  PositiveResult positive;
  NegativeResult negative_prompts;
  PromptSet prompts;
  PromptExport exported;
};

/// RPG partition -> prototypes -> similarity statistics -> prompts.
/// Stage failures are rethrown as StageError ("RPG: empty foreground").
EpisodeResult run_episode(const EpisodeInputs& inputs, const PromptConfig& cfg);

struct EpisodeSpec {
  std::filesystem::path support_feature_path;
  std::filesystem::path support_mask_path;
  std::filesystem::path query_feature_path;
  std::optional<std::filesystem::path> query_gt_mask_path;
  std::optional<std::filesystem::path> query_image_path;
  PromptConfig config;
  std::filesystem::path output_dir;
  bool heatmaps = false;
  double segment_threshold = 0.5;
};

struct EpisodeReport {
  PromptExport exported;
  std::optional<double> dice;  // when a ground-truth mask was given
};

/// File-level episode: loads inputs, writes prompts.json (and mean.pgm,
/// uncertainty.pgm, negative.pgm with heatmaps). With a ground-truth mask it
/// also runs the surrogate segmenter and writes eval.json.
EpisodeReport run_episode(const EpisodeSpec& spec);

}  // namespace maup
