#include "maup/simmaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maup/errors.hpp"
#include "maup/parallel.hpp"

namespace maup {

ScalarMap cosine_map(const FeatureMap& query, const Prototype& p) {
  if (query.channels() != p.channels()) {
    throw ShapeError("query has " + std::to_string(query.channels()) +
                     " channels, prototype has " + std::to_string(p.channels()));
  }
  const std::size_t n = query.plane_size();
  std::vector<double> dot(n, 0.0);
  std::vector<double> norm2(n, 0.0);
  double proto_norm2 = 0.0;
  for (int c = 0; c < query.channels(); ++c) {
    const double pc = p.values[static_cast<std::size_t>(c)];
    proto_norm2 += pc * pc;
    const auto plane = query.channel(c);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = static_cast<double>(plane[i]);
      dot[i] += v * pc;
      norm2[i] += v * v;
    }
  }

  ScalarMap out(query.height(), query.width());
  auto values = out.values();
  const double proto_norm = std::sqrt(proto_norm2);
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = std::sqrt(norm2[i]) * proto_norm;
    const double cosine = denom > 0.0 ? dot[i] / denom : 0.0;
    values[i] = static_cast<float>(std::clamp(cosine, -1.0, 1.0));
  }
  return out;
}

SimilarityStack similarity_stack(const FeatureMap& query, const PrototypeSet& prototypes,
                                 int threads) {
  SimilarityStack stack;
  stack.maps.resize(prototypes.size());
  parallel_for(prototypes.size(), threads,
               [&](std::size_t i) { stack.maps[i] = cosine_map(query, prototypes[i]); });
  return stack;
}

ScalarMap mean_map(const SimilarityStack& stack) {
  if (stack.maps.empty()) throw EmptyStackError("similarity stack is empty");
  const ScalarMap& first = stack.maps.front();
  std::vector<double> sum(first.size(), 0.0);
  for (const auto& m : stack.maps) {
    if (!same_grid(m, first)) throw ShapeError("similarity maps differ in shape");
    const auto v = m.values();
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] += static_cast<double>(v[i]);
  }
  ScalarMap out(first.height(), first.width());
  const double n = static_cast<double>(stack.size());
  for (std::size_t i = 0; i < sum.size(); ++i) out.values()[i] = static_cast<float>(sum[i] / n);
  return out;
}

ScalarMap uncertainty_map(const SimilarityStack& stack, const ScalarMap& mean) {
  if (stack.maps.empty()) throw EmptyStackError("similarity stack is empty");
  const auto mu = mean.values();
  std::vector<double> acc(mu.size(), 0.0);
  for (const auto& m : stack.maps) {
    if (!same_grid(m, mean)) throw ShapeError("mean map and similarity map shapes differ");
    const auto v = m.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = static_cast<double>(v[i]) - static_cast<double>(mu[i]);
      acc[i] += d * d;
    }
  }
  ScalarMap out(mean.height(), mean.width());
  const double n = static_cast<double>(stack.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out.values()[i] = static_cast<float>(acc[i] / n);
  return out;
}

double percentile_threshold(const ScalarMap& map, double pct, const BitMask* roi) {
  if (!(pct > 0.0 && pct < 100.0)) throw ConfigError("percentile must lie in (0, 100)");
  std::vector<double> values;
  if (roi != nullptr) {
    if (!same_grid(*roi, map)) throw ShapeError("ROI and map grids differ");
    if (roi->empty()) throw EmptyMaskError("percentile over an empty ROI");
    const auto bits = roi->bits();
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) values.push_back(static_cast<double>(map.values()[i]));
  } else {
    values.assign(map.values().begin(), map.values().end());
  }
  std::sort(values.begin(), values.end());

  const double rank = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lo);
  const double tau = values[lo] + frac * (values[hi] - values[lo]);
  // Never above the upper order statistic, so the candidate set stays non-empty.
  return std::min(tau, values[hi]);
}

bool CandidateSet::contains(PointRC p) const {
  return std::binary_search(points.begin(), points.end(), p);
}

CandidateSet extract_candidates(const ScalarMap& map, double tau, CandidateSource source) {
  CandidateSet out;
  out.threshold = tau;
  out.source = source;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (static_cast<double>(map.at(y, x)) >= tau) out.points.push_back({y, x});
  if (out.points.empty()) throw EmptyCandidateError("no pixel reaches the threshold");
  return out;
}

}  // namespace maup
