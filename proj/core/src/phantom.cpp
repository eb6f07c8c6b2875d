#include "maup/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "maup/errors.hpp"
#include "maup/random.hpp"
#include "maup/regions.hpp"

namespace maup {
namespace {

constexpr double kRadiusFraction = 0.2;  // organ radius relative to the frame side
constexpr double kDrift = 0.35;          // within-organ feature drift amplitude
constexpr int kGap = 1;                  // dark rim between organ and tissue
constexpr int kBand = 3;                 // surrounding tissue thickness
constexpr int kBlobs = 3;
constexpr double kBlobRadius = 2.5;

struct Geometry {
  double cy = 0.0;
  double cx = 0.0;
  double radius = 0.0;
  double angle = 0.0;
};

struct Blob {
  double cy = 0.0;
  double cx = 0.0;
};

using Vec = std::vector<double>;

// Five orthonormal directions: background, organ, tissue-complement, two drift axes.
std::array<Vec, 5> random_basis(int channels, Rng& rng) {
  std::array<Vec, 5> basis;
  for (auto& v : basis) {
    for (;;) {
      v.assign(static_cast<std::size_t>(channels), 0.0);
      for (double& x : v) x = rng.normal();
      for (const auto& prev : basis) {
        if (&prev == &v) break;
        double dot = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * prev[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * prev[i];
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (double& x : v) x /= norm;
        break;
      }
    }
  }
  return basis;
}

bool inside_organ(ShapeFamily family, const Geometry& g, double y, double x) {
  const double dy = y - g.cy;
  const double dx = x - g.cx;
  const double r = g.radius;
  switch (family) {
    case ShapeFamily::disk:
      return dy * dy + dx * dx <= r * r;
    case ShapeFamily::ellipse: {
      const double u = dy * std::cos(g.angle) + dx * std::sin(g.angle);
      const double v = -dy * std::sin(g.angle) + dx * std::cos(g.angle);
      const double a = 0.7 * r;
      const double b = 1.35 * r;
      return (u * u) / (a * a) + (v * v) / (b * b) <= 1.0;
    }
    case ShapeFamily::two_lobe: {
      const double lobe = 0.6 * r;
      const double offset = lobe + 1.5;
      const double oy = offset * std::sin(g.angle);
      const double ox = offset * std::cos(g.angle);
      const auto in = [&](double cy, double cx) {
        return (dy - cy) * (dy - cy) + (dx - cx) * (dx - cx) <= lobe * lobe;
      };
      return in(oy, ox) || in(-oy, -ox);
    }
    case ShapeFamily::annulus: {
      const double d2 = dy * dy + dx * dx;
      const double outer = 1.1 * r;
      const double inner = 0.5 * r;
      return d2 <= outer * outer && d2 >= inner * inner;
    }
  }
  return false;
}

PhantomCase render(const PhantomSpec& spec, const Geometry& g, const std::vector<Blob>& blobs,
                   const std::array<Vec, 5>& basis, Rng& rng) {
  const int n = spec.size;
  BitMask organ(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) organ.set(y, x, inside_organ(spec.family, g, y, x));
  if (organ.empty()) throw SpecError("organ is empty after clipping to the frame");

  const BitMask near = dilate(organ, StructuringElement::disk(kGap));
  BitMask tissue = mask_minus(dilate(organ, StructuringElement::disk(kGap + kBand)), near);
  for (const Blob& b : blobs) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double dy = y - b.cy;
        const double dx = x - b.cx;
        if (dy * dy + dx * dx <= kBlobRadius * kBlobRadius && !near.test(y, x)) tissue.set(y, x);
      }
    }
  }

  const double theta = spec.contrast * std::numbers::pi / 2.0;
  const auto& bg_dir = basis[0];
  const auto& organ_dir = basis[1];
  const std::size_t c_count = static_cast<std::size_t>(spec.channels);
  Vec tissue_dir(c_count);
  for (std::size_t c = 0; c < c_count; ++c)
    tissue_dir[c] = std::cos(theta) * organ_dir[c] + std::sin(theta) * basis[2][c];

  const double tissue_intensity = 1.0 - spec.contrast;
  PhantomCase out{FeatureMap(spec.channels, n, n), organ, ScalarMap(n, n)};
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      Vec f(c_count);
      double intensity = 0.0;
      if (organ.test(y, x)) {
        const double u = std::clamp((y - g.cy) / g.radius, -1.5, 1.5);
        const double v = std::clamp((x - g.cx) / g.radius, -1.5, 1.5);
        for (std::size_t c = 0; c < c_count; ++c)
          f[c] = organ_dir[c] + kDrift * (u * basis[3][c] + v * basis[4][c]);
        intensity = 1.0;
      } else if (tissue.test(y, x)) {
        f = tissue_dir;
        intensity = tissue_intensity;
      } else {
        f = bg_dir;
      }
      for (std::size_t c = 0; c < c_count; ++c) {
        out.features.at(static_cast<int>(c), y, x) =
            static_cast<float>(f[c] + spec.noise * rng.normal());
      }
      out.image.at(y, x) = static_cast<float>(intensity + spec.noise * rng.normal());
    }
  }
  return out;
}

std::vector<Blob> place_blobs(const PhantomSpec& spec, const Geometry& g, Rng& rng) {
  std::vector<Blob> blobs;
  const double margin = kBlobRadius + 1.0;
  const double keep_out = 1.4 * g.radius + kGap + kBand + kBlobRadius + 2.0;
  for (int attempt = 0; attempt < 200 && static_cast<int>(blobs.size()) < kBlobs; ++attempt) {
    const double y = margin + rng.uniform01() * (spec.size - 1 - 2 * margin);
    const double x = margin + rng.uniform01() * (spec.size - 1 - 2 * margin);
    if (std::hypot(y - g.cy, x - g.cx) >= keep_out) blobs.push_back({y, x});
  }
  return blobs;
}

}  // namespace

std::string_view to_string(ShapeFamily f) noexcept {
  switch (f) {
    case ShapeFamily::disk: return "disk";
    case ShapeFamily::ellipse: return "ellipse";
    case ShapeFamily::two_lobe: return "two-lobe";
    case ShapeFamily::annulus: return "annulus";
  }
  return "disk";
}

ShapeFamily parse_family(std::string_view name) {
  for (auto f : {ShapeFamily::disk, ShapeFamily::ellipse, ShapeFamily::two_lobe,
                 ShapeFamily::annulus}) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown phantom family '" + std::string(name) + "'");
}

PhantomSpec phantom_preset(ShapeFamily family, std::uint64_t seed) {
  PhantomSpec s;
  s.family = family;
  s.seed = seed;
  switch (family) {
    case ShapeFamily::disk:
    case ShapeFamily::ellipse:
      s.contrast = 1.0;
      s.noise = 0.0;
      break;
    case ShapeFamily::two_lobe:
      s.contrast = 0.4;
      s.noise = 0.05;
      break;
    case ShapeFamily::annulus:
      s.contrast = 0.5;
      s.noise = 0.05;
      break;
  }
  return s;
}

Phantom generate_phantom(const PhantomSpec& spec) {
  if (spec.size < 16) throw SpecError("phantom size must be >= 16");
  if (spec.channels < 5) throw SpecError("phantom needs >= 5 feature channels");
  if (!(spec.contrast > 0.0 && spec.contrast <= 1.0)) throw SpecError("contrast must lie in (0, 1]");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) throw SpecError("noise must be >= 0");

  Rng rng(derive_seed(spec.seed, Stream::phantom));
  const auto basis = random_basis(spec.channels, rng);

  const double center = (spec.size - 1) / 2.0;
  Geometry support;
  support.radius = kRadiusFraction * spec.size;
  support.angle = rng.uniform01() * std::numbers::pi;
  support.cy = center + (rng.uniform01() - 0.5) * 0.1 * spec.size;
  support.cx = center + (rng.uniform01() - 0.5) * 0.1 * spec.size;

  Geometry query = support;
  query.radius = support.radius * (0.9 + 0.2 * rng.uniform01());
  query.angle = support.angle + (rng.uniform01() - 0.5) * 0.3;
  query.cy = center + (rng.uniform01() - 0.5) * 0.16 * spec.size;
  query.cx = center + (rng.uniform01() - 0.5) * 0.16 * spec.size;

  const auto support_blobs = place_blobs(spec, support, rng);
  const auto query_blobs = place_blobs(spec, query, rng);

  Phantom p;
  p.support = render(spec, support, support_blobs, basis, rng);
  p.query = render(spec, query, query_blobs, basis, rng);
  return p;
}

}  // namespace maup
