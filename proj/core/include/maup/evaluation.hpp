#pragma once

#include <span>

#include "maup/pipeline.hpp"
#include "maup/tensors.hpp"

namespace maup {

/// Flood fill (4-connected) from each positive over pixels with
/// image >= threshold; every grown component that holds a negative is dropped.
/// Out-of-bounds prompts throw ShapeError.
BitMask surrogate_segment(std::span<const PointRC> positives, std::span<const PointRC> negatives,
                          const ScalarMap& image, double threshold);
BitMask surrogate_segment(const PromptSet& prompts, const ScalarMap& image, double threshold);
BitMask surrogate_segment(const PromptExport& prompts, const ScalarMap& image, double threshold);

/// 2|A and B| / (|A| + |B|); 1 when both are empty.
double dice(const BitMask& pred, const BitMask& gt);

/// Number of 4-connected components of set pixels.
int count_components(const BitMask& m);

}  // namespace maup
