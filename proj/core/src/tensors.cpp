#include "maup/tensors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maup/errors.hpp"

namespace maup {
namespace {

std::size_t checked_extent(int a, int b, int c, const char* what) {
  if (a < 1 || b < 1 || c < 1) {
    throw ShapeError(std::string(what) + ": every dimension must be >= 1");
  }
  return static_cast<std::size_t>(a) * static_cast<std::size_t>(b) * static_cast<std::size_t>(c);
}

template <class T>
void require_length(const std::vector<T>& v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                     std::to_string(v.size()));
  }
}

bool finite_span(std::span<const float> s) {
  return std::all_of(s.begin(), s.end(), [](float v) { return std::isfinite(v); });
}

void require_same_grid(const BitMask& a, const BitMask& b) {
  if (!same_grid(a, b)) throw ShapeError("mask grids differ");
}

}  // namespace

FeatureMap::FeatureMap(int channels, int height, int width)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(checked_extent(channels, height, width, "FeatureMap"), 0.0F) {}

FeatureMap::FeatureMap(int channels, int height, int width, std::vector<float> data)
    : channels_(channels), height_(height), width_(width), data_(std::move(data)) {
  require_length(data_, checked_extent(channels, height, width, "FeatureMap"), "FeatureMap");
}

bool FeatureMap::all_finite() const noexcept { return finite_span(data_); }

ScalarMap::ScalarMap(int height, int width, float fill)
    : height_(height), width_(width), values_(checked_extent(1, height, width, "ScalarMap"), fill) {}

ScalarMap::ScalarMap(int height, int width, std::vector<float> values)
    : height_(height), width_(width), values_(std::move(values)) {
  require_length(values_, checked_extent(1, height, width, "ScalarMap"), "ScalarMap");
}

bool ScalarMap::all_finite() const noexcept { return finite_span(values_); }

BitMask::BitMask(int height, int width)
    : height_(height), width_(width), bits_(checked_extent(1, height, width, "BitMask"), 0) {}

BitMask::BitMask(int height, int width, std::vector<std::uint8_t> bits)
    : height_(height), width_(width), bits_(std::move(bits)) {
  require_length(bits_, checked_extent(1, height, width, "BitMask"), "BitMask");
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw DataError("BitMask values must be 0 or 1");
  }
}

std::size_t BitMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<PointRC> BitMask::points() const {
  std::vector<PointRC> out;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (test(y, x)) out.push_back({y, x});
    }
  }
  return out;
}

BitMask mask_and(const BitMask& a, const BitMask& b) {
  require_same_grid(a, b);
  BitMask out(a.height(), a.width());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) out.set(y, x, a.test(y, x) && b.test(y, x));
  return out;
}

BitMask mask_or(const BitMask& a, const BitMask& b) {
  require_same_grid(a, b);
  BitMask out(a.height(), a.width());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) out.set(y, x, a.test(y, x) || b.test(y, x));
  return out;
}

BitMask mask_minus(const BitMask& a, const BitMask& b) {
  require_same_grid(a, b);
  BitMask out(a.height(), a.width());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) out.set(y, x, a.test(y, x) && !b.test(y, x));
  return out;
}

bool is_subset(const BitMask& a, const BitMask& b) {
  require_same_grid(a, b);
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.test(y, x) && !b.test(y, x)) return false;
  return true;
}

BitMask binarize(const ScalarMap& map, double threshold) {
  BitMask out(map.height(), map.width());
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      out.set(y, x, static_cast<double>(map.at(y, x)) >= threshold);
  return out;
}

}  // namespace maup
