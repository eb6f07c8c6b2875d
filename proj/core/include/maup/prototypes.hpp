#pragma once

#include <vector>

#include "maup/regions.hpp"
#include "maup/tensors.hpp"

namespace maup {

struct Prototype {
  enum class Source { mask, region, periphery };

  std::vector<double> values;
  Source source = Source::mask;
  int region = -1;  // valid when source == region

  int channels() const noexcept { return static_cast<int>(values.size()); }
};

class PrototypeSet {
 public:
  /// Throws ShapeError when empty or when channel counts differ.
  explicit PrototypeSet(std::vector<Prototype> prototypes);

  std::size_t size() const noexcept { return prototypes_.size(); }
  int channels() const noexcept { return prototypes_.front().channels(); }
  const Prototype& operator[](std::size_t i) const noexcept { return prototypes_[i]; }
  auto begin() const noexcept { return prototypes_.begin(); }
  auto end() const noexcept { return prototypes_.end(); }

 private:
  std::vector<Prototype> prototypes_;
};

/// Mean feature vector over the set pixels of `m`, accumulated in double in
/// row-major order. Throws EmptyMaskError for an empty mask and ShapeError
/// when the grids differ.
Prototype masked_average_pool(const FeatureMap& f, const BitMask& m);

/// One prototype per partition region, in region order.
PrototypeSet regional_prototypes(const FeatureMap& support, const Partition& partition,
                                 int threads = 1);

/// Throws EmptyPeripheryError when the periphery mask is empty.
Prototype periphery_prototype(const FeatureMap& support, const BitMask& periphery);

}  // namespace maup
