#pragma once

#include <vector>

#include "maup/prototypes.hpp"
#include "maup/tensors.hpp"

namespace maup {

/// Per-pixel cosine similarity between query features and a prototype.
/// A zero-norm pixel or prototype gives 0. Throws ShapeError on channel mismatch.
ScalarMap cosine_map(const FeatureMap& query, const Prototype& p);

struct SimilarityStack {
  std::vector<ScalarMap> maps;

  std::size_t size() const noexcept { return maps.size(); }
};

SimilarityStack similarity_stack(const FeatureMap& query, const PrototypeSet& prototypes,
                                 int threads = 1);

/// Per-pixel mean over the stack. Throws EmptyStackError.
ScalarMap mean_map(const SimilarityStack& stack);

/// Per-pixel population variance (divisor N) around `mean`.
ScalarMap uncertainty_map(const SimilarityStack& stack, const ScalarMap& mean);

/// Linear-interpolated percentile: rank = pct/100 * (n - 1) over the sorted
/// values (restricted to `roi` when given). 0 < pct < 100.
double percentile_threshold(const ScalarMap& map, double pct, const BitMask* roi = nullptr);

enum class CandidateSource { mean, uncertainty, negative };

struct CandidateSet {
  std::vector<PointRC> points;  // row-major
  double threshold = 0.0;
  CandidateSource source = CandidateSource::mean;

  bool contains(PointRC p) const;
  std::size_t size() const noexcept { return points.size(); }
};

/// Every pixel with map >= tau, row-major. Throws EmptyCandidateError if none.
CandidateSet extract_candidates(const ScalarMap& map, double tau, CandidateSource source);

}  // namespace maup
