#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "apsof/core_model.hpp"
#include "apsof/rng.hpp"

namespace apsof {

enum class SwarmMode { classic, adaptive };

struct SwarmConfig {
  std::size_t swarm_size = 20;
  std::size_t n_max = 100;
  double w_max = 0.9;
  double w_min = 0.4;
  double c1_init = 2.5;
  double c1_final = 0.5;
  double c2_init = 0.5;
  double c2_final = 2.5;
  /// Classic mode uses w = constant_w and c1 = c2 = constant_c throughout.
  double constant_w = 0.7;
  double constant_c = 2.0;
  /// Stop once variance / mean^2 of particle fitness falls to this value.
  double variance_tol = 1e-3;
  /// Velocity components are clamped to +-v_max_fraction * 255.
  double v_max_fraction = 0.2;
  SwarmMode mode = SwarmMode::adaptive;
};

/// Rejects non-positive sizes, inverted inertia bounds, and learning-factor
/// schedules where self-learning does not start at least as strong as
/// social learning and end no stronger. Equal endpoints are accepted.
SwarmConfig validate_swarm_config(const SwarmConfig& config);

/// A candidate solution: C centers flattened into one position vector.
struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> pbest;
  double pbest_fitness = 0.0;
  double fitness = 0.0;
};

struct SwarmStats {
  double f_avg = 0.0;
  double f_min = 0.0;
  double variance = 0.0;
};

struct SwarmHistory {
  std::vector<double> gbest_fitness;
  std::vector<double> variance;
};

/// Quantization error: each pixel contributes its squared distance to the
/// nearest center in `position` only.
double particle_fitness(const PixelDataset& dataset, std::span<const double> position);

/// Per-particle inertia from the particle's fitness relative to the swarm.
/// Below-average particles get w_max; the rest get
/// (w_max - w_min)(f - f_min)/(f_avg - f_min), clamped to [w_min, w_max].
double adaptive_inertia(double fitness, const SwarmStats& stats, const SwarmConfig& config);

/// Linear schedules for the cognitive and social factors; exact at both ends.
std::pair<double, double> adaptive_learning_factors(std::size_t iteration,
                                                    const SwarmConfig& config);

/// Population mean, minimum, and variance (divisor = swarm size).
SwarmStats swarm_stats(std::span<const double> fitnesses);

struct StepCoefficients {
  double w = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

/// One velocity/position update with explicit random factors, followed by
/// fitness evaluation and personal-best update.
Particle step_particle(const Particle& particle, std::span<const double> gbest,
                       const StepCoefficients& coeffs, double v_max, const PixelDataset& dataset);

/// Same update drawing r1 then r2 from `rng`, shared across all dimensions.
Particle step_particle(const Particle& particle, std::span<const double> gbest, double w,
                       double c1, double c2, double v_max, const PixelDataset& dataset, Rng& rng);

/// Stateful swarm over candidate center sets. Random draws happen in
/// ascending particle order on the calling thread, so results are
/// independent of ClusterConfig::threads.
class SwarmOptimizer {
 public:
  SwarmOptimizer(const PixelDataset& dataset, const ClusterConfig& config,
                 const SwarmConfig& swarm_config);

  /// Replaces particle i's position (and resets its velocity and personal
  /// best). Only valid before the first step.
  void seed_particle(std::size_t index, const CenterSet& centers);

  /// Stats of the current fitnesses; recorded into history.
  SwarmStats observe();

  bool converged(const SwarmStats& stats) const;

  /// Moves every particle once using the given stats for inertia.
  void step(const SwarmStats& stats);

  /// Observe/step until convergence or n_max steps.
  void run();

  std::span<const Particle> particles() const noexcept { return particles_; }
  std::span<const double> gbest() const noexcept { return gbest_; }
  double gbest_fitness() const noexcept { return gbest_fitness_; }
  std::size_t iteration() const noexcept { return iteration_; }
  const SwarmHistory& history() const noexcept { return history_; }
  CenterSet best_centers() const;

 private:
  void refresh_gbest();

  const PixelDataset& dataset_;
  ClusterConfig config_;
  SwarmConfig swarm_config_;
  Rng rng_;
  std::vector<Particle> particles_;
  std::vector<double> gbest_;
  double gbest_fitness_ = 0.0;
  std::size_t iteration_ = 0;
  SwarmHistory history_;
};

struct SwarmResult {
  CenterSet best_centers;
  double best_fitness = 0.0;
  std::size_t iterations = 0;
  SwarmHistory history;
};

SwarmResult run_swarm(const PixelDataset& dataset, const ClusterConfig& config,
                      const SwarmConfig& swarm_config);

}  // namespace apsof
