#include "apsof/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apsof/parallel.hpp"

namespace apsof {

SwarmConfig validate_swarm_config(const SwarmConfig& config) {
  if (config.swarm_size < 1 || config.n_max < 1) {
    throw Error(ErrorCode::invalid_argument, "swarm size and iteration cap must be positive");
  }
  if (!(config.v_max_fraction > 0.0 && config.v_max_fraction <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "v_max_fraction must lie in (0, 1]");
  }
  if (!(config.variance_tol >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "variance tolerance must be non-negative");
  }
  for (double v : {config.w_max, config.w_min, config.c1_init, config.c1_final, config.c2_init,
                   config.c2_final, config.constant_w, config.constant_c}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite swarm coefficient");
  }
  if (config.mode == SwarmMode::adaptive) {
    if (config.w_max < config.w_min) {
      throw Error(ErrorCode::invalid_argument, "w_max must not be below w_min");
    }
    if (config.c1_init < config.c2_init || config.c1_final > config.c2_final) {
      throw Error(ErrorCode::invalid_argument,
                  "learning schedule needs c1_init >= c2_init and c1_final <= c2_final");
    }
  }
  return config;
}

double particle_fitness(const PixelDataset& dataset, std::span<const double> position) {
  const std::size_t d = dataset.dim();
  if (position.empty() || position.size() % d != 0) {
    throw Error(ErrorCode::invalid_argument, "position does not decode to whole centers");
  }
  const std::size_t c = position.size() / d;
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto x = dataset.pixel(i);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c; ++j) {
      nearest = std::min(nearest, squared_distance(x, position.subspan(j * d, d)));
    }
    total += nearest;
  }
  return total;
}

double adaptive_inertia(double fitness, const SwarmStats& stats, const SwarmConfig& config) {
  if (fitness < stats.f_avg) return config.w_max;
  const double spread = stats.f_avg - stats.f_min;
  if (spread < kZeroDistance) return config.w_max;
  const double raw = (config.w_max - config.w_min) * (fitness - stats.f_min) / spread;
  return std::clamp(raw, config.w_min, config.w_max);
}

std::pair<double, double> adaptive_learning_factors(std::size_t iteration,
                                                    const SwarmConfig& config) {
  const double t = static_cast<double>(iteration) / static_cast<double>(config.n_max);
  return {std::lerp(config.c1_init, config.c1_final, t),
          std::lerp(config.c2_init, config.c2_final, t)};
}

SwarmStats swarm_stats(std::span<const double> fitnesses) {
  if (fitnesses.empty()) throw Error(ErrorCode::invalid_argument, "swarm has no particles");
  const double s = static_cast<double>(fitnesses.size());
  SwarmStats stats;
  double sum = 0.0;
  stats.f_min = fitnesses.front();
  for (double f : fitnesses) {
    sum += f;
    stats.f_min = std::min(stats.f_min, f);
  }
  stats.f_avg = sum / s;
  double sq = 0.0;
  for (double f : fitnesses) sq += (f - stats.f_avg) * (f - stats.f_avg);
  stats.variance = sq / s;
  return stats;
}

Particle step_particle(const Particle& particle, std::span<const double> gbest,
                       const StepCoefficients& k, double v_max, const PixelDataset& dataset) {
  const std::size_t n = particle.position.size();
  if (particle.velocity.size() != n || particle.pbest.size() != n || gbest.size() != n) {
    throw Error(ErrorCode::invalid_argument, "particle vectors differ in length");
  }
  Particle next = particle;
  for (std::size_t q = 0; q < n; ++q) {
    const double x = particle.position[q];
    const double v = k.w * particle.velocity[q] + k.c1 * k.r1 * (particle.pbest[q] - x) +
                     k.c2 * k.r2 * (gbest[q] - x);
    next.velocity[q] = std::clamp(v, -v_max, v_max);
    next.position[q] = std::clamp(x + next.velocity[q], 0.0, kMaxComponent);
  }
  next.fitness = particle_fitness(dataset, next.position);
  if (next.fitness < next.pbest_fitness) {
    next.pbest = next.position;
    next.pbest_fitness = next.fitness;
  }
  return next;
}

Particle step_particle(const Particle& particle, std::span<const double> gbest, double w,
                       double c1, double c2, double v_max, const PixelDataset& dataset, Rng& rng) {
  const double r1 = rng.uniform01();
  const double r2 = rng.uniform01();
  return step_particle(particle, gbest, StepCoefficients{w, c1, c2, r1, r2}, v_max, dataset);
}

SwarmOptimizer::SwarmOptimizer(const PixelDataset& dataset, const ClusterConfig& config,
                               const SwarmConfig& swarm_config)
    : dataset_(dataset),
      config_(validate_config(config, dataset)),
      swarm_config_(validate_swarm_config(swarm_config)),
      rng_(config.seed) {
  particles_.resize(swarm_config_.swarm_size);
  for (Particle& p : particles_) {
    const CenterSet centers = sample_distinct_centers(dataset_, config_.cluster_count, rng_);
    p.position.assign(centers.values().begin(), centers.values().end());
    p.velocity.assign(p.position.size(), 0.0);
    p.pbest = p.position;
  }
  detail::parallel_for(particles_.size(), config_.threads, [this](std::size_t i) {
    Particle& p = particles_[i];
    p.fitness = particle_fitness(dataset_, p.position);
    p.pbest_fitness = p.fitness;
  });
  gbest_fitness_ = std::numeric_limits<double>::infinity();
  refresh_gbest();
}

void SwarmOptimizer::seed_particle(std::size_t index, const CenterSet& centers) {
  if (iteration_ != 0 || !history_.gbest_fitness.empty()) {
    throw Error(ErrorCode::invalid_argument, "particles can only be seeded before the first step");
  }
  if (index >= particles_.size() || centers.dim() != dataset_.dim() ||
      centers.size() != config_.cluster_count) {
    throw Error(ErrorCode::invalid_argument, "seed does not fit the swarm");
  }
  Particle& p = particles_[index];
  p.position.assign(centers.values().begin(), centers.values().end());
  for (double& v : p.position) v = std::clamp(v, 0.0, kMaxComponent);
  p.velocity.assign(p.position.size(), 0.0);
  p.pbest = p.position;
  p.fitness = particle_fitness(dataset_, p.position);
  p.pbest_fitness = p.fitness;
  // A re-seed may raise this particle's fitness, so gbest is recomputed from scratch.
  gbest_fitness_ = std::numeric_limits<double>::infinity();
  refresh_gbest();
}

void SwarmOptimizer::refresh_gbest() {
  for (const Particle& p : particles_) {
    if (p.pbest_fitness < gbest_fitness_) {
      gbest_fitness_ = p.pbest_fitness;
      gbest_ = p.pbest;
    }
  }
}

SwarmStats SwarmOptimizer::observe() {
  std::vector<double> fitnesses(particles_.size());
  std::transform(particles_.begin(), particles_.end(), fitnesses.begin(),
                 [](const Particle& p) { return p.fitness; });
  const SwarmStats stats = swarm_stats(fitnesses);
  history_.gbest_fitness.push_back(gbest_fitness_);
  history_.variance.push_back(stats.variance);
  return stats;
}

bool SwarmOptimizer::converged(const SwarmStats& stats) const {
  const double scale = std::max(stats.f_avg * stats.f_avg, kZeroDistance);
  return stats.variance / scale <= swarm_config_.variance_tol;
}

void SwarmOptimizer::step(const SwarmStats& stats) {
  const bool adaptive = swarm_config_.mode == SwarmMode::adaptive;
  const auto [c1, c2] = adaptive
                            ? adaptive_learning_factors(iteration_, swarm_config_)
                            : std::pair{swarm_config_.constant_c, swarm_config_.constant_c};
  const double v_max = swarm_config_.v_max_fraction * kMaxComponent;

  std::vector<StepCoefficients> coeffs(particles_.size());
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    const double w = adaptive ? adaptive_inertia(particles_[i].fitness, stats, swarm_config_)
                              : swarm_config_.constant_w;
    const double r1 = rng_.uniform01();
    const double r2 = rng_.uniform01();
    coeffs[i] = StepCoefficients{w, c1, c2, r1, r2};
  }
  const std::vector<double> gbest = gbest_;
  detail::parallel_for(particles_.size(), config_.threads, [&](std::size_t i) {
    particles_[i] = step_particle(particles_[i], gbest, coeffs[i], v_max, dataset_);
  });
  refresh_gbest();
  ++iteration_;
}

void SwarmOptimizer::run() {
  while (true) {
    const SwarmStats stats = observe();
    if (converged(stats) || iteration_ >= swarm_config_.n_max) break;
    step(stats);
  }
}

CenterSet SwarmOptimizer::best_centers() const { return CenterSet(gbest_, dataset_.dim()); }

SwarmResult run_swarm(const PixelDataset& dataset, const ClusterConfig& config,
                      const SwarmConfig& swarm_config) {
  SwarmOptimizer swarm(dataset, config, swarm_config);
  swarm.run();
  return SwarmResult{swarm.best_centers(), swarm.gbest_fitness(), swarm.iteration(),
                     swarm.history()};
}

}  // namespace apsof
