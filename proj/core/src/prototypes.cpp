#include "maup/prototypes.hpp"

#include <cmath>

#include "maup/errors.hpp"
#include "maup/parallel.hpp"

namespace maup {

PrototypeSet::PrototypeSet(std::vector<Prototype> prototypes) : prototypes_(std::move(prototypes)) {
  if (prototypes_.empty()) throw ShapeError("prototype set is empty");
  for (const auto& p : prototypes_) {
    if (p.channels() != prototypes_.front().channels() || p.channels() == 0) {
      throw ShapeError("prototype channel counts differ");
    }
  }
}

Prototype masked_average_pool(const FeatureMap& f, const BitMask& m) {
  if (!same_grid(f, m)) throw ShapeError("feature map and mask grids differ");
  const std::size_t n = m.count();
  if (n == 0) throw EmptyMaskError("masked average pooling over an empty mask");

  Prototype p;
  p.values.assign(static_cast<std::size_t>(f.channels()), 0.0);
  const auto bits = m.bits();
  for (int c = 0; c < f.channels(); ++c) {
    const auto plane = f.channel(c);
    double sum = 0.0;
    for (std::size_t i = 0; i < plane.size(); ++i)
      if (bits[i]) sum += static_cast<double>(plane[i]);
    p.values[static_cast<std::size_t>(c)] = sum / static_cast<double>(n);
  }
  return p;
}

PrototypeSet regional_prototypes(const FeatureMap& support, const Partition& partition,
                                 int threads) {
  std::vector<Prototype> out(partition.size());
  parallel_for(partition.size(), threads, [&](std::size_t i) {
    out[i] = masked_average_pool(support, partition.regions[i]);
    out[i].source = Prototype::Source::region;
    out[i].region = static_cast<int>(i);
  });
  return PrototypeSet(std::move(out));
}

Prototype periphery_prototype(const FeatureMap& support, const BitMask& periphery) {
  if (periphery.empty()) throw EmptyPeripheryError("periphery mask is empty");
  Prototype p = masked_average_pool(support, periphery);
  p.source = Prototype::Source::periphery;
  return p;
}

}  // namespace maup
