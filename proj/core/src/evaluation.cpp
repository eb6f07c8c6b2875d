#include "maup/evaluation.hpp"

#include <deque>
#include <string>

#include "maup/errors.hpp"

namespace maup {
namespace {

constexpr int kDy[] = {-1, 1, 0, 0};
constexpr int kDx[] = {0, 0, -1, 1};

// Labels the 4-connected component of `open` containing `start` with `label`.
void flood(const BitMask& open, PointRC start, int label, std::vector<int>& labels) {
  const int w = open.width();
  std::deque<PointRC> queue{start};
  labels[static_cast<std::size_t>(start.row * w + start.col)] = label;
  while (!queue.empty()) {
    const PointRC p = queue.front();
    queue.pop_front();
    for (int d = 0; d < 4; ++d) {
      const PointRC n{p.row + kDy[d], p.col + kDx[d]};
      if (!open.contains(n) || !open.test(n)) continue;
      auto& l = labels[static_cast<std::size_t>(n.row * w + n.col)];
      if (l != 0) continue;
      l = label;
      queue.push_back(n);
    }
  }
}

void require_in_bounds(std::span<const PointRC> pts, const ScalarMap& image) {
  for (const PointRC& p : pts) {
    if (p.row < 0 || p.col < 0 || p.row >= image.height() || p.col >= image.width()) {
      throw ShapeError("prompt (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                       ") is outside the image");
    }
  }
}

}  // namespace

BitMask surrogate_segment(std::span<const PointRC> positives, std::span<const PointRC> negatives,
                          const ScalarMap& image, double threshold) {
  require_in_bounds(positives, image);
  require_in_bounds(negatives, image);
  const BitMask open = binarize(image, threshold);
  const int w = image.width();

  std::vector<int> labels(open.size(), 0);
  int next = 0;
  for (const PointRC& p : positives) {
    if (!open.test(p)) continue;
    if (labels[static_cast<std::size_t>(p.row * w + p.col)] != 0) continue;
    flood(open, p, ++next, labels);
  }

  std::vector<bool> rejected(static_cast<std::size_t>(next) + 1, false);
  for (const PointRC& n : negatives) {
    const int l = labels[static_cast<std::size_t>(n.row * w + n.col)];
    if (l != 0) rejected[static_cast<std::size_t>(l)] = true;
  }

  BitMask out(image.height(), image.width());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l != 0 && !rejected[static_cast<std::size_t>(l)]) {
      out.set(static_cast<int>(i) / w, static_cast<int>(i) % w);
    }
  }
  return out;
}

BitMask surrogate_segment(const PromptSet& prompts, const ScalarMap& image, double threshold) {
  return surrogate_segment(prompts.positive_points(), prompts.negatives, image, threshold);
}

BitMask surrogate_segment(const PromptExport& prompts, const ScalarMap& image, double threshold) {
  std::vector<PointRC> pos;
  std::vector<PointRC> neg;
  for (const auto& p : prompts.positives) pos.push_back(to_grid(p, prompts.scale));
  for (const auto& p : prompts.negatives) neg.push_back(to_grid(p, prompts.scale));
  return surrogate_segment(pos, neg, image, threshold);
}

double dice(const BitMask& pred, const BitMask& gt) {
  if (!same_grid(pred, gt)) throw ShapeError("dice: mask shapes differ");
  std::size_t both = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) both += (pred.bits()[i] & gt.bits()[i]);
  const std::size_t total = pred.count() + gt.count();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(total);
}

int count_components(const BitMask& m) {
  std::vector<int> labels(m.size(), 0);
  int n = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.test(y, x) && labels[static_cast<std::size_t>(y * m.width() + x)] == 0)
        flood(m, {y, x}, ++n, labels);
  return n;
}

}  // namespace maup
