#include "apsof/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "apsof/rng.hpp"

namespace apsof {

namespace {

// Means of each label group. Empty groups are re-seeded one at a time at
// the pixel farthest from its nearest non-empty center.
CenterSet group_means(const PixelDataset& dataset, const Labeling& labels, std::size_t c) {
  const std::size_t d = dataset.dim();
  std::vector<double> sums(c * d, 0.0);
  std::vector<std::size_t> counts(c, 0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto x = dataset.pixel(i);
    for (std::size_t k = 0; k < d; ++k) sums[labels[i] * d + k] += x[k];
    ++counts[labels[i]];
  }
  std::vector<bool> live(c);
  for (std::size_t j = 0; j < c; ++j) {
    live[j] = counts[j] > 0;
    if (live[j]) {
      for (std::size_t k = 0; k < d; ++k) sums[j * d + k] /= static_cast<double>(counts[j]);
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (live[j]) continue;
    std::size_t farthest = 0;
    double farthest_d2 = -1.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < c; ++k) {
        if (live[k]) {
          nearest = std::min(nearest, squared_distance(dataset.pixel(i), {sums.data() + k * d, d}));
        }
      }
      if (nearest > farthest_d2) {
        farthest_d2 = nearest;
        farthest = i;
      }
    }
    const auto x = dataset.pixel(farthest);
    std::copy(x.begin(), x.end(), sums.begin() + static_cast<std::ptrdiff_t>(j * d));
    live[j] = true;
  }
  return CenterSet(std::move(sums), d);
}

}  // namespace

double within_cluster_sse(const PixelDataset& dataset, const CenterSet& centers,
                          const Labeling& labels) {
  if (labels.size() != dataset.size()) {
    throw Error(ErrorCode::invalid_argument, "label count differs from pixel count");
  }
  double sse = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    sse += squared_distance(dataset.pixel(i), centers.center(labels[i]));
  }
  return sse;
}

KmeansResult run_lloyd(const PixelDataset& dataset, const CenterSet& initial_centers,
                       std::size_t threads) {
  CenterSet centers = initial_centers;
  Labeling labels = assign_nearest(dataset, centers, threads);
  std::vector<double> trajectory;
  std::size_t iterations = 0;
  while (iterations < kKmeansMaxIters) {
    centers = group_means(dataset, labels, centers.size());
    centers.clamp_to_range();
    trajectory.push_back(within_cluster_sse(dataset, centers, labels));
    ++iterations;
    Labeling next = assign_nearest(dataset, centers, threads);
    if (next == labels) break;
    labels = std::move(next);
  }
  return KmeansResult{std::move(centers), std::move(labels), std::move(trajectory), iterations};
}

KmeansResult run_kmeans(const PixelDataset& dataset, const ClusterConfig& config) {
  validate_config(config, dataset);
  Rng rng(config.seed);
  return run_lloyd(dataset, sample_distinct_centers(dataset, config.cluster_count, rng),
                   config.threads);
}

}  // namespace apsof
