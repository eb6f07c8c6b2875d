#include "maup/prompting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "maup/errors.hpp"
#include "maup/kmeans.hpp"
#include "maup/random.hpp"
#include "maup/regions.hpp"

namespace maup {
namespace {

constexpr int kMaxRedraws = 10;

std::vector<PointRC> pick_uncertain(const CandidateSet& q, std::set<PointRC>& used, int picks,
                                    Rng& rng) {
  std::vector<PointRC> out;
  for (int p = 0; p < picks; ++p) {
    std::optional<PointRC> chosen;
    for (int draw = 0; draw <= kMaxRedraws && !chosen; ++draw) {
      const PointRC cand = q.points[rng.uniform_index(q.points.size())];
      if (!used.contains(cand)) chosen = cand;
    }
    if (!chosen) {
      for (const PointRC& cand : q.points) {
        if (!used.contains(cand)) {
          chosen = cand;
          break;
        }
      }
    }
    if (!chosen) break;  // every candidate is already a prompt
    used.insert(*chosen);
    out.push_back(*chosen);
  }
  return out;
}

}  // namespace

void PromptConfig::validate() const {
  if (!mmp && !ump) throw ConfigError("at least one positive prompting path (mmp, ump) must be on");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be > 0");
  if (n_min < 1 || n_max < n_min) throw ConfigError("need 1 <= n_min <= n_max");
  if (n_neg < 1) throw ConfigError("n_neg must be >= 1");
  if (uncertainty_picks < 0) throw ConfigError("uncertainty_picks must be >= 0");
  if (radius < 1) throw ConfigError("radius must be >= 1");
  if (n_f < 1) throw ConfigError("n_f must be >= 1");
  if (!(percentile > 0.0 && percentile < 100.0)) throw ConfigError("pct must lie in (0, 100)");
  if (scale < 1) throw ConfigError("scale must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

ComplexityScore complexity(const ScalarMap& mean, double tau_mean) {
  const BitMask region = binarize(mean, tau_mean);
  const AreaPerimeter ap = area_and_perimeter(region);
  if (ap.area == 0) throw EmptyCandidateError("no pixel of the mean map reaches tau_mean");

  ComplexityScore s;
  s.area = ap.area;
  s.perimeter = ap.perimeter;
  const double h = mean.height();
  const double w = mean.width();
  s.area_norm = static_cast<double>(ap.area) / (h * w);
  s.perimeter_norm = std::min(1.0, static_cast<double>(ap.perimeter) / (2.0 * (h + w)));
  s.c = s.area_norm + s.perimeter_norm;
  return s;
}

int adaptive_k(double c, double gamma, int n_min, int n_max) {
  const double scaled = std::floor(gamma * c);
  if (!(scaled >= static_cast<double>(n_min))) return n_min;  // also catches NaN
  if (scaled >= static_cast<double>(n_max)) return n_max;
  return static_cast<int>(scaled);
}

int adaptive_k(const ComplexityScore& score, double gamma, int n_min, int n_max) {
  return adaptive_k(score.c, gamma, n_min, n_max);
}

std::string_view to_string(PromptSource s) noexcept {
  return s == PromptSource::mean_centroid ? "mean" : "uncertainty";
}

std::string_view to_string(NegativeStatus s) noexcept {
  switch (s) {
    case NegativeStatus::ok: return "ok";
    case NegativeStatus::disabled: return "disabled";
    case NegativeStatus::periphery_empty: return "periphery_empty";
    case NegativeStatus::exhausted: return "exhausted";
  }
  return "ok";
}

PositiveResult positive_prompts(const ScalarMap& mean, const ScalarMap& uncert,
                                const PromptConfig& cfg, std::uint64_t seed) {
  if (!cfg.mmp && !cfg.ump) throw ConfigError("both positive prompting paths are disabled");
  if (!same_grid(mean, uncert)) throw ShapeError("mean and uncertainty maps differ in shape");

  PositiveResult r;
  std::set<PointRC> used;
  if (cfg.mmp) {
    const double tau = percentile_threshold(mean, cfg.percentile);
    r.q_mean = extract_candidates(mean, tau, CandidateSource::mean);
    r.score = complexity(mean, tau);
    r.k_used = adaptive_k(*r.score, cfg.gamma, cfg.n_min, cfg.n_max);
    for (const PointRC& p :
         kmeans(r.q_mean->points, r.k_used, derive_seed(seed, Stream::mean_kmeans))) {
      r.prompts.push_back({p, PromptSource::mean_centroid});
      used.insert(p);
    }
  }
  if (cfg.ump) {
    const double tau = percentile_threshold(uncert, cfg.percentile);
    r.q_uncert = extract_candidates(uncert, tau, CandidateSource::uncertainty);
    Rng rng(derive_seed(seed, Stream::uncertainty_picks));
    for (const PointRC& p : pick_uncertain(*r.q_uncert, used, cfg.uncertainty_picks, rng)) {
      r.prompts.push_back({p, PromptSource::uncertainty});
    }
  }
  return r;
}

NegativeResult negative_prompts(const ScalarMap& neg_map, std::span<const PointRC> positives,
                                int n_neg, std::uint64_t seed, double percentile) {
  if (n_neg < 1) throw ConfigError("n_neg must be >= 1");
  NegativeResult r;
  const double tau = percentile_threshold(neg_map, percentile);
  r.q_neg = extract_candidates(neg_map, tau, CandidateSource::negative);

  const std::set<PointRC> taken(positives.begin(), positives.end());
  std::vector<PointRC> free;
  std::copy_if(r.q_neg->points.begin(), r.q_neg->points.end(), std::back_inserter(free),
               [&](PointRC p) { return !taken.contains(p); });
  if (free.empty()) {
    r.status = NegativeStatus::exhausted;
    return r;
  }
  r.points = kmeans(free, n_neg, derive_seed(seed, Stream::negative_kmeans));
  return r;
}

std::vector<PointRC> PromptSet::positive_points() const {
  std::vector<PointRC> out;
  out.reserve(positives.size());
  for (const auto& t : positives) out.push_back(t.point);
  return out;
}

}  // namespace maup
