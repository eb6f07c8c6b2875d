#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "maup/phantom.hpp"
#include "maup/prompting.hpp"

namespace maup {

struct ToggleRow {
  bool mmp = true;
  bool ump = true;
  bool np = true;

  friend auto operator<=>(const ToggleRow&, const ToggleRow&) = default;
};

/// "ump+mmp+np", "ump", ... (any order, '+'-separated). Throws ConfigError.
ToggleRow parse_toggles(std::string_view text);

struct SweepConfig {
  std::vector<PhantomSpec> families;  // seed field ignored; seeds below
  std::vector<ToggleRow> toggles;
  std::vector<int> n_f_values;        // empty: base.n_f only
  std::vector<std::uint64_t> seeds;
  PromptConfig base;
  double segment_threshold = 0.5;
  int threads = 1;                    // concurrent episodes
};

/// Flat key = value text. Keys: families, toggles, nf, seeds, seed_start,
/// size, contrast, noise, channels, threshold, threads, and the prompt
/// flags gamma, nmin, nmax, nneg, radius, pct, scale. Throws ConfigError.
SweepConfig parse_sweep_config(std::string_view text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct AblationRow {
  std::string family;
  ToggleRow toggles;
  int n_f = 0;
  std::uint64_t seed = 0;
  double dice = 0.0;
  bool failed = false;
  std::string error;
};

/// One surrogate-segmented episode per family x toggle x N_f x seed.
/// Failing episodes are kept as flagged rows. Rows come back sorted.
std::vector<AblationRow> ablation_run(const SweepConfig& cfg);

/// Header: family,mmp,ump,np,N_f,seed,dice,status
std::string format_csv(const std::vector<AblationRow>& rows);
/// Mean Dice per family x toggles x N_f as an aligned text table.
std::string summary_table(const std::vector<AblationRow>& rows);

}  // namespace maup
