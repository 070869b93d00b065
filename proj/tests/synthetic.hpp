#pragma once

// Programmatic test images.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include "apsof/core_model.hpp"
#include "apsof/imaging.hpp"

namespace synthetic {

using Color = std::array<std::uint8_t, 3>;

// Channel values pairwise at least 100 apart.
inline constexpr std::array<Color, 3> kBlockColors = {{{20, 240, 130}, {130, 20, 240}, {240, 130, 20}}};

// Three vertical solid blocks of (nearly) equal width.
inline apsof::RawImage three_blocks(std::size_t width = 24, std::size_t height = 16) {
  apsof::RawImage img{width, height, std::vector<std::uint8_t>(width * height * 3)};
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const Color& c = kBlockColors[x * 3 / width];
      std::copy(c.begin(), c.end(), img.rgb8.begin() + static_cast<std::ptrdiff_t>((y * width + x) * 3));
    }
  }
  return img;
}

inline std::vector<std::uint32_t> three_block_truth(std::size_t width = 24, std::size_t height = 16) {
  std::vector<std::uint32_t> truth(width * height);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) truth[y * width + x] = static_cast<std::uint32_t>(x * 3 / width);
  }
  return truth;
}

// True when a relabeling of `a` (a bijection between label values) yields `b`.
inline bool same_partition(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) return false;
  std::map<std::uint32_t, std::uint32_t> forward;
  std::map<std::uint32_t, std::uint32_t> backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto [f, f_new] = forward.emplace(a[i], b[i]);
    const auto [g, g_new] = backward.emplace(b[i], a[i]);
    if (f->second != b[i] || g->second != a[i]) return false;
  }
  return true;
}

// Standard normal via Box-Muller on raw engine output, so images are the
// same on every standard library.
class Gaussian {
 public:
  explicit Gaussian(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double operator()() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// `blobs` color clusters with per-channel standard deviation `sigma`, laid
// out as vertical stripes. Means are drawn in [40, 215] and kept at least
// `separation` apart.
inline apsof::RawImage gaussian_blobs(std::size_t blobs, double sigma, std::uint64_t seed,
                                      std::size_t width = 64, std::size_t height = 64,
                                      double separation = 60.0) {
  Gaussian rng(seed);
  std::vector<std::array<double, 3>> means;
  while (means.size() < blobs) {
    std::array<double, 3> m{};
    for (double& v : m) v = 40.0 + 175.0 * rng.uniform();
    const bool far = std::all_of(means.begin(), means.end(), [&](const auto& o) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) d2 += (m[k] - o[k]) * (m[k] - o[k]);
      return d2 >= separation * separation;
    });
    if (far) means.push_back(m);
  }
  apsof::RawImage img{width, height, std::vector<std::uint8_t>(width * height * 3)};
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const auto& m = means[x * blobs / width];
      for (int k = 0; k < 3; ++k) {
        const double v = std::round(m[k] + sigma * rng());
        img.rgb8[(y * width + x) * 3 + k] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  return img;
}

inline apsof::RawImage random_image(std::size_t width, std::size_t height, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  apsof::RawImage img{width, height, std::vector<std::uint8_t>(width * height * 3)};
  for (auto& b : img.rgb8) b = static_cast<std::uint8_t>(engine() >> 56);
  return img;
}

}  // namespace synthetic
