#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace maup {

/// Grid coordinate. Internally everything is (row, col); only exported
/// prompts switch to (x, y).
struct PointRC {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const PointRC&, const PointRC&) = default;
};

/// Dense C x H x W feature tensor, channel-major: index = c*H*W + y*W + x.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, int height, int width);
  FeatureMap(int channels, int height, int width, std::vector<float> data);

  int channels() const noexcept { return channels_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }

  std::size_t index(int c, int y, int x) const noexcept {
    return static_cast<std::size_t>(c) * plane_size() +
           static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  float at(int c, int y, int x) const noexcept { return data_[index(c, y, x)]; }
  float& at(int c, int y, int x) noexcept { return data_[index(c, y, x)]; }

  /// One channel plane, row-major.
  std::span<const float> channel(int c) const noexcept {
    return std::span<const float>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                                 plane_size());
  }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  bool all_finite() const noexcept;

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> data_;
};

/// H x W real-valued map (similarity, mean, variance, intensity).
class ScalarMap {
 public:
  ScalarMap() = default;
  ScalarMap(int height, int width, float fill = 0.0F);
  ScalarMap(int height, int width, std::vector<float> values);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }

  float at(int y, int x) const noexcept { return values_[offset(y, x)]; }
  float& at(int y, int x) noexcept { return values_[offset(y, x)]; }
  float at(PointRC p) const noexcept { return at(p.row, p.col); }

  std::span<const float> values() const noexcept { return values_; }
  std::span<float> values() noexcept { return values_; }

  bool all_finite() const noexcept;

  friend bool operator==(const ScalarMap&, const ScalarMap&) = default;

 private:
  std::size_t offset(int y, int x) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<float> values_;
};

/// H x W binary mask; every element is exactly 0 or 1.
class BitMask {
 public:
  BitMask() = default;
  BitMask(int height, int width);
  /// Throws DataError if any element is not 0 or 1.
  BitMask(int height, int width, std::vector<std::uint8_t> bits);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool test(int y, int x) const noexcept { return bits_[offset(y, x)] != 0; }
  bool test(PointRC p) const noexcept { return test(p.row, p.col); }
  void set(int y, int x, bool on = true) noexcept { bits_[offset(y, x)] = on ? 1 : 0; }
  void set(PointRC p, bool on = true) noexcept { set(p.row, p.col, on); }

  bool contains(PointRC p) const noexcept {
    return p.row >= 0 && p.col >= 0 && p.row < height_ && p.col < width_;
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  /// Foreground pixels in row-major order.
  std::vector<PointRC> points() const;

  friend bool operator==(const BitMask&, const BitMask&) = default;

 private:
  std::size_t offset(int y, int x) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline std::size_t foreground_count(const BitMask& m) noexcept { return m.count(); }

template <class A, class B>
bool same_grid(const A& a, const B& b) noexcept {
  return a.height() == b.height() && a.width() == b.width();
}

BitMask mask_and(const BitMask& a, const BitMask& b);
BitMask mask_or(const BitMask& a, const BitMask& b);
/// a AND NOT b.
BitMask mask_minus(const BitMask& a, const BitMask& b);
bool is_subset(const BitMask& a, const BitMask& b);

/// 1 where map >= threshold.
BitMask binarize(const ScalarMap& map, double threshold);

}  // namespace maup
