#include "apsof/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apsof/parallel.hpp"

namespace apsof {

namespace {

double membership_power(double u, double fuzzifier) {
  return fuzzifier == 2.0 ? u * u : std::pow(u, fuzzifier);
}

void check_shapes(const PixelDataset& dataset, const CenterSet& centers) {
  if (centers.dim() != dataset.dim()) {
    throw Error(ErrorCode::invalid_argument, "center dimension differs from pixel dimension");
  }
}

// Writes row i of the membership matrix. Ratios are taken against the
// smallest distance so every term lies in (0, 1] and nothing overflows for
// fuzzifiers close to 1.
void membership_row(std::span<const double> x, const CenterSet& centers, double exponent,
                    std::span<double> out) {
  const std::size_t c = centers.size();
  double d2_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c; ++j) {
    out[j] = squared_distance(x, centers.center(j));
    d2_min = std::min(d2_min, out[j]);
  }
  if (d2_min < kZeroDistance * kZeroDistance) {
    bool taken = false;
    for (std::size_t j = 0; j < c; ++j) {
      const bool hit = !taken && out[j] < kZeroDistance * kZeroDistance;
      out[j] = hit ? 1.0 : 0.0;
      taken = taken || hit;
    }
    return;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < c; ++j) {
    const double ratio = d2_min / out[j];
    out[j] = exponent == 1.0 ? ratio : std::pow(ratio, exponent);
    sum += out[j];
  }
  for (std::size_t j = 0; j < c; ++j) out[j] /= sum;
}

struct WeightedCenters {
  std::vector<double> values;
  std::vector<std::size_t> dead;
};

WeightedCenters weighted_centers(const PixelDataset& dataset, const MembershipMatrix& memberships,
                                 double fuzzifier) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  const std::size_t c = memberships.cols();
  if (memberships.rows() != n) {
    throw Error(ErrorCode::invalid_argument, "membership rows differ from pixel count");
  }
  WeightedCenters out{std::vector<double>(c * d, 0.0), {}};
  std::vector<double> weight_sum(c, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = dataset.pixel(i);
    const auto row = memberships.row(i);
    for (std::size_t j = 0; j < c; ++j) {
      const double w = membership_power(row[j], fuzzifier);
      weight_sum[j] += w;
      for (std::size_t k = 0; k < d; ++k) out.values[j * d + k] += w * x[k];
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (weight_sum[j] > 0.0) {
      for (std::size_t k = 0; k < d; ++k) out.values[j * d + k] /= weight_sum[j];
    } else {
      out.dead.push_back(j);
    }
  }
  return out;
}

void reseed_dead(const PixelDataset& dataset, std::span<const std::size_t> dead,
                 std::vector<double>& values) {
  const std::size_t d = dataset.dim();
  const std::size_t c = values.size() / d;
  std::vector<bool> live(c, true);
  for (std::size_t j : dead) live[j] = false;

  for (std::size_t j : dead) {
    std::size_t farthest = 0;
    double farthest_d2 = -1.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const auto x = dataset.pixel(i);
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < c; ++k) {
        if (!live[k]) continue;
        nearest = std::min(nearest, squared_distance(x, {values.data() + k * d, d}));
      }
      if (nearest > farthest_d2) {
        farthest_d2 = nearest;
        farthest = i;
      }
    }
    const auto x = dataset.pixel(farthest);
    std::copy(x.begin(), x.end(), values.begin() + static_cast<std::ptrdiff_t>(j * d));
    live[j] = true;
  }
}

}  // namespace

MembershipMatrix compute_memberships(const PixelDataset& dataset, const CenterSet& centers,
                                     double fuzzifier, std::size_t threads) {
  if (!(fuzzifier > 1.0)) throw Error(ErrorCode::invalid_fuzzifier, "fuzzifier must exceed 1");
  check_shapes(dataset, centers);
  const std::size_t c = centers.size();
  const double exponent = 1.0 / (fuzzifier - 1.0);
  std::vector<double> u(dataset.size() * c);
  detail::parallel_for(dataset.size(), threads, [&](std::size_t i) {
    membership_row(dataset.pixel(i), centers, exponent, {u.data() + i * c, c});
  });
  return MembershipMatrix(std::move(u), dataset.size(), c);
}

CenterSet update_centers(const PixelDataset& dataset, const MembershipMatrix& memberships,
                         double fuzzifier) {
  if (!(fuzzifier > 1.0)) throw Error(ErrorCode::invalid_fuzzifier, "fuzzifier must exceed 1");
  auto result = weighted_centers(dataset, memberships, fuzzifier);
  if (!result.dead.empty()) {
    throw Error(ErrorCode::dead_cluster,
                "cluster " + std::to_string(result.dead.front()) + " has zero total membership");
  }
  return CenterSet(std::move(result.values), dataset.dim());
}

double fcm_objective(const PixelDataset& dataset, const CenterSet& centers,
                     const MembershipMatrix& memberships, double fuzzifier) {
  check_shapes(dataset, centers);
  if (memberships.rows() != dataset.size() || memberships.cols() != centers.size()) {
    throw Error(ErrorCode::invalid_argument, "membership shape differs from dataset/centers");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto x = dataset.pixel(i);
    const auto row = memberships.row(i);
    for (std::size_t j = 0; j < centers.size(); ++j) {
      total += membership_power(row[j], fuzzifier) * squared_distance(x, centers.center(j));
    }
  }
  return total;
}

Labeling argmax_labels(const MembershipMatrix& memberships) {
  std::vector<std::uint32_t> labels(memberships.rows());
  for (std::size_t i = 0; i < memberships.rows(); ++i) {
    const auto row = memberships.row(i);
    labels[i] = static_cast<std::uint32_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return Labeling(std::move(labels), memberships.cols());
}

FcmResult run_fcm(const PixelDataset& dataset, const CenterSet& initial_centers,
                  const ClusterConfig& config) {
  validate_config(config, dataset);
  check_shapes(dataset, initial_centers);
  if (initial_centers.size() != config.cluster_count) {
    throw Error(ErrorCode::invalid_argument, "initial center count differs from cluster count");
  }
  const double m = config.fuzzifier;

  CenterSet centers = initial_centers;
  centers.clamp_to_range();
  MembershipMatrix u = compute_memberships(dataset, centers, m, config.threads);
  std::vector<double> trajectory{fcm_objective(dataset, centers, u, m)};

  std::size_t iterations = 0;
  std::size_t dead_streak = 0;
  bool converged = false;
  while (iterations < config.fcm_max_iters) {
    auto next = weighted_centers(dataset, u, m);
    if (!next.dead.empty()) {
      if (++dead_streak >= config.cluster_count) {
        throw Error(ErrorCode::degenerate_clustering,
                    "clusters kept collapsing after re-seeding");
      }
      reseed_dead(dataset, next.dead, next.values);
    } else {
      dead_streak = 0;
    }
    centers = CenterSet(std::move(next.values), dataset.dim());
    centers.clamp_to_range();
    u = compute_memberships(dataset, centers, m, config.threads);
    ++iterations;

    const double previous = trajectory.back();
    const double current = fcm_objective(dataset, centers, u, m);
    trajectory.push_back(current);
    if (std::abs(previous - current) <= config.fcm_rel_tol * std::max(previous, kZeroDistance)) {
      converged = true;
      break;
    }
  }

  Labeling labels = argmax_labels(u);
  return FcmResult{std::move(centers), std::move(u),        std::move(labels),
                   std::move(trajectory), iterations, converged};
}

}  // namespace apsof
