#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "apsof/core_model.hpp"
#include "apsof/fcm.hpp"
#include "apsof/swarm.hpp"

namespace apsof {

enum class Algorithm { kmeans, fcm, psofcm, apsof };

std::string_view to_string(Algorithm algorithm) noexcept;

/// Throws invalid_argument for unknown names.
Algorithm parse_algorithm(std::string_view name);

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kmeans, Algorithm::fcm,
                                               Algorithm::psofcm, Algorithm::apsof};

struct SegmentationResult {
  std::string algorithm;
  CenterSet centers;
  Labeling labels;
  /// Final FCM objective for the FCM family, final SSE for K-means.
  double final_jm = 0.0;
  /// Iterations of the final refinement stage (FCM or Lloyd).
  std::size_t iterations = 0;
  std::optional<SwarmResult> swarm;
  std::optional<FcmResult> fcm;
  std::chrono::nanoseconds wall_time{0};
  std::uint64_t seed = 0;
};

/// Adaptive swarm search whose best centers initialize FCM.
SegmentationResult run_apsof(const PixelDataset& dataset, const ClusterConfig& config,
                             const SwarmConfig& swarm_config);

/// kmeans: Lloyd from C distinct random pixels. fcm: FCM from the same kind
/// of start. psofcm: classic swarm then FCM. apsof: run_apsof.
SegmentationResult run_algorithm(Algorithm algorithm, const PixelDataset& dataset,
                                 const ClusterConfig& config, const SwarmConfig& swarm_config);

SegmentationResult run_algorithm(std::string_view name, const PixelDataset& dataset,
                                 const ClusterConfig& config, const SwarmConfig& swarm_config);

}  // namespace apsof
