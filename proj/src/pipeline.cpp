#include "apsof/pipeline.hpp"

#include "apsof/kmeans.hpp"
#include "apsof/rng.hpp"

namespace apsof {

namespace {

using Clock = std::chrono::steady_clock;

SegmentationResult from_fcm(Algorithm algorithm, FcmResult fcm, const ClusterConfig& config) {
  SegmentationResult result{std::string(to_string(algorithm)),
                            fcm.centers,
                            fcm.labels,
                            fcm.jm_trajectory.back(),
                            fcm.iterations,
                            std::nullopt,
                            std::nullopt,
                            {},
                            config.seed};
  result.fcm = std::move(fcm);
  return result;
}

SegmentationResult swarm_then_fcm(Algorithm algorithm, const PixelDataset& dataset,
                                  const ClusterConfig& config, SwarmConfig swarm_config) {
  swarm_config.mode = algorithm == Algorithm::apsof ? SwarmMode::adaptive : SwarmMode::classic;
  SwarmResult swarm = run_swarm(dataset, config, swarm_config);
  SegmentationResult result =
      from_fcm(algorithm, run_fcm(dataset, swarm.best_centers, config), config);
  result.swarm = std::move(swarm);
  return result;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::kmeans: return "kmeans";
    case Algorithm::fcm: return "fcm";
    case Algorithm::psofcm: return "psofcm";
    case Algorithm::apsof: return "apsof";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) return a;
  }
  throw Error(ErrorCode::invalid_argument, "unknown algorithm '" + std::string(name) + "'");
}

SegmentationResult run_apsof(const PixelDataset& dataset, const ClusterConfig& config,
                             const SwarmConfig& swarm_config) {
  if (swarm_config.mode != SwarmMode::adaptive) {
    throw Error(ErrorCode::invalid_argument, "APSOF requires the adaptive swarm mode");
  }
  const auto start = Clock::now();
  SegmentationResult result = swarm_then_fcm(Algorithm::apsof, dataset, config, swarm_config);
  result.wall_time = Clock::now() - start;
  return result;
}

SegmentationResult run_algorithm(Algorithm algorithm, const PixelDataset& dataset,
                                 const ClusterConfig& config, const SwarmConfig& swarm_config) {
  const auto start = Clock::now();
  SegmentationResult result = [&] {
    switch (algorithm) {
      case Algorithm::kmeans: {
        KmeansResult km = run_kmeans(dataset, config);
        return SegmentationResult{"kmeans",          km.centers,   km.labels,
                                  km.sse_trajectory.back(), km.iterations, std::nullopt,
                                  std::nullopt,      {},           config.seed};
      }
      case Algorithm::fcm: {
        validate_config(config, dataset);
        Rng rng(config.seed);
        const CenterSet init = sample_distinct_centers(dataset, config.cluster_count, rng);
        return from_fcm(algorithm, run_fcm(dataset, init, config), config);
      }
      case Algorithm::psofcm:
      case Algorithm::apsof:
        return swarm_then_fcm(algorithm, dataset, config, swarm_config);
    }
    throw Error(ErrorCode::invalid_argument, "unknown algorithm");
  }();
  result.wall_time = Clock::now() - start;
  return result;
}

SegmentationResult run_algorithm(std::string_view name, const PixelDataset& dataset,
                                 const ClusterConfig& config, const SwarmConfig& swarm_config) {
  return run_algorithm(parse_algorithm(name), dataset, config, swarm_config);
}

}  // namespace apsof
