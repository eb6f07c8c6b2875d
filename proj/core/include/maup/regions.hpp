#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "maup/tensors.hpp"

namespace maup {

struct Offset {
  int dy = 0;
  int dx = 0;
};

/// Discrete disk: every offset with dy^2 + dx^2 <= r^2.
class StructuringElement {
 public:
  static StructuringElement disk(int radius);

  int radius() const noexcept { return radius_; }
  std::span<const Offset> offsets() const noexcept { return offsets_; }

 private:
  StructuringElement(int radius, std::vector<Offset> offsets)
      : radius_(radius), offsets_(std::move(offsets)) {}

  int radius_;
  std::vector<Offset> offsets_;
};

/// Disjoint non-empty regions that exactly cover `parent`.
struct Partition {
  BitMask parent;
  std::vector<BitMask> regions;
  std::vector<PointRC> seeds;

  std::size_t size() const noexcept { return regions.size(); }
};

/// Farthest-point sampling over the foreground. The first point is uniform
/// over foreground pixels; each next point maximizes the squared distance to
/// the chosen set, ties going to the smallest (row, col).
/// Returns min(n, |fg|) points. Throws EmptyMaskError on an empty mask.
std::vector<PointRC> farthest_point_seeds(const BitMask& fg, int n, std::uint64_t seed);

/// Nearest-seed assignment of every foreground pixel; ties to the lowest seed index.
/// Throws SeedError when a seed is outside the foreground or repeated.
Partition voronoi_partition(const BitMask& fg, std::span<const PointRC> seeds);

/// Seeded FPS followed by Voronoi assignment; n is clamped to the foreground size.
Partition rpg_partition(const BitMask& fg, int n, std::uint64_t seed);

BitMask dilate(const BitMask& m, const StructuringElement& se);

/// dilate(support) AND NOT support. May be empty; callers decide what that means.
BitMask periphery_mask(const BitMask& support, const StructuringElement& se);

struct AreaPerimeter {
  std::int64_t area = 0;
  /// 4-connected edges between a set pixel and an unset pixel or the frame border.
  std::int64_t perimeter = 0;

  friend bool operator==(const AreaPerimeter&, const AreaPerimeter&) = default;
};

AreaPerimeter area_and_perimeter(const BitMask& m);

}  // namespace maup
