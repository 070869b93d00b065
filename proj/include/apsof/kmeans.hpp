#pragma once

#include <cstddef>
#include <vector>

#include "apsof/core_model.hpp"

namespace apsof {

inline constexpr std::size_t kKmeansMaxIters = 300;

struct KmeansResult {
  CenterSet centers;
  Labeling labels;
  /// Within-cluster sum of squares after each mean update.
  std::vector<double> sse_trajectory;
  std::size_t iterations = 0;
};

/// Lloyd's algorithm seeded with C distinct pixels drawn from Rng(config.seed).
/// Stops when an assignment pass leaves every label unchanged, or after
/// kKmeansMaxIters passes. Empty clusters move to the pixel farthest from
/// its nearest live center.
KmeansResult run_kmeans(const PixelDataset& dataset, const ClusterConfig& config);

/// Lloyd iterations from given centers; used by run_kmeans.
KmeansResult run_lloyd(const PixelDataset& dataset, const CenterSet& initial_centers,
                       std::size_t threads = 1);

/// sum_i |x_i - c_{label_i}|^2
double within_cluster_sse(const PixelDataset& dataset, const CenterSet& centers,
                          const Labeling& labels);

}  // namespace apsof
