#include "maup/regions.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "maup/errors.hpp"
#include "maup/random.hpp"

namespace maup {
namespace {

std::int64_t squared_distance(PointRC a, PointRC b) noexcept {
  const std::int64_t dy = a.row - b.row;
  const std::int64_t dx = a.col - b.col;
  return dy * dy + dx * dx;
}

}  // namespace

StructuringElement StructuringElement::disk(int radius) {
  if (radius < 1) throw ConfigError("structuring element radius must be >= 1");
  std::vector<Offset> offsets;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if (dy * dy + dx * dx <= radius * radius) offsets.push_back({dy, dx});
  return StructuringElement(radius, std::move(offsets));
}

std::vector<PointRC> farthest_point_seeds(const BitMask& fg, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("seed count must be >= 1");
  const std::vector<PointRC> pool = fg.points();
  if (pool.empty()) throw EmptyMaskError("empty foreground");

  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(n), pool.size());
  Rng rng(seed);
  std::vector<PointRC> chosen;
  chosen.reserve(want);
  chosen.push_back(pool[rng.uniform_index(pool.size())]);

  // Squared distance of every pool point to the nearest chosen seed.
  std::vector<std::int64_t> nearest(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) nearest[i] = squared_distance(pool[i], chosen[0]);

  while (chosen.size() < want) {
    // pool is row-major, so the first maximum is the lexicographically smallest.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i)
      if (nearest[i] > nearest[best]) best = i;
    const PointRC next = pool[best];
    chosen.push_back(next);
    for (std::size_t i = 0; i < pool.size(); ++i)
      nearest[i] = std::min(nearest[i], squared_distance(pool[i], next));
  }
  return chosen;
}

Partition voronoi_partition(const BitMask& fg, std::span<const PointRC> seeds) {
  if (seeds.empty()) throw SeedError("no seeds");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!fg.contains(seeds[i]) || !fg.test(seeds[i])) {
      throw SeedError("seed " + std::to_string(i) + " (" + std::to_string(seeds[i].row) + "," +
                      std::to_string(seeds[i].col) + ") is outside the foreground");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (seeds[j] == seeds[i]) throw SeedError("duplicate seed " + std::to_string(i));
  }

  Partition part;
  part.parent = fg;
  part.seeds.assign(seeds.begin(), seeds.end());
  part.regions.assign(seeds.size(), BitMask(fg.height(), fg.width()));
  for (int y = 0; y < fg.height(); ++y) {
    for (int x = 0; x < fg.width(); ++x) {
      if (!fg.test(y, x)) continue;
      std::size_t best = 0;
      std::int64_t best_d = std::numeric_limits<std::int64_t>::max();
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const std::int64_t d = squared_distance({y, x}, seeds[s]);
        if (d < best_d) {
          best_d = d;
          best = s;
        }
      }
      part.regions[best].set(y, x);
    }
  }
  return part;
}

Partition rpg_partition(const BitMask& fg, int n, std::uint64_t seed) {
  const auto seeds = farthest_point_seeds(fg, n, seed);
  return voronoi_partition(fg, seeds);
}

BitMask dilate(const BitMask& m, const StructuringElement& se) {
  BitMask out(m.height(), m.width());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.test(y, x)) continue;
      for (const Offset& o : se.offsets()) {
        const PointRC p{y + o.dy, x + o.dx};
        if (out.contains(p)) out.set(p);
      }
    }
  }
  return out;
}

BitMask periphery_mask(const BitMask& support, const StructuringElement& se) {
  return mask_minus(dilate(support, se), support);
}

AreaPerimeter area_and_perimeter(const BitMask& m) {
  AreaPerimeter r;
  constexpr Offset kNeighbors[] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (!m.test(y, x)) continue;
      ++r.area;
      for (const Offset& o : kNeighbors) {
        const PointRC n{y + o.dy, x + o.dx};
        if (!m.contains(n) || !m.test(n)) ++r.perimeter;
      }
    }
  }
  return r;
}

}  // namespace maup
