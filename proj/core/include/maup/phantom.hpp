#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "maup/tensors.hpp"

namespace maup {

enum class ShapeFamily { disk, ellipse, two_lobe, annulus };

std::string_view to_string(ShapeFamily f) noexcept;
/// Accepts "disk", "ellipse", "two-lobe", "annulus". Throws ConfigError.
ShapeFamily parse_family(std::string_view name);

/// Synthetic support/query pair. Features come from three isotropic clusters
/// (organ, surrounding tissue, background); `contrast` in (0, 1] sets the
/// angle between organ and tissue directions and how dark the tissue is in
/// the intensity image.
struct PhantomSpec {
  ShapeFamily family = ShapeFamily::disk;
  int size = 48;
  double contrast = 1.0;
  double noise = 0.0;
  int channels = 16;
  std::uint64_t seed = 0;
};

/// Family defaults: disk / ellipse are noise-free and high contrast,
/// two-lobe / annulus are noisy and low contrast.
PhantomSpec phantom_preset(ShapeFamily family, std::uint64_t seed);

struct PhantomCase {
  FeatureMap features;
  BitMask mask;     // organ ground truth
  ScalarMap image;  // intensity image seen by the surrogate segmenter
};

struct Phantom {
  PhantomCase support;
  PhantomCase query;
};

/// Deterministic for a given PhantomSpec. Throws SpecError on invalid or degenerate specs.
Phantom generate_phantom(const PhantomSpec& spec);

}  // namespace maup
