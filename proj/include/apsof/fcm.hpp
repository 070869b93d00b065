#pragma once

#include <cstddef>
#include <vector>

#include "apsof/core_model.hpp"

namespace apsof {

struct FcmResult {
  CenterSet centers;
  /// Memberships of the final centers.
  MembershipMatrix memberships;
  /// Row-wise argmax of memberships, lowest index on ties.
  Labeling labels;
  /// J_m at the initial centers, then after every center update.
  std::vector<double> jm_trajectory;
  /// Number of center updates performed.
  std::size_t iterations = 0;
  bool converged = false;
};

/// u_ij = 1 / sum_k (|x_i - c_j| / |x_i - c_k|)^(2/(m-1)).
/// A pixel within kZeroDistance of some center gets a crisp row on the
/// first such center.
MembershipMatrix compute_memberships(const PixelDataset& dataset, const CenterSet& centers,
                                     double fuzzifier, std::size_t threads = 1);

/// Weighted means with weights u_ij^m. Throws dead_cluster when a cluster
/// has zero total weight.
CenterSet update_centers(const PixelDataset& dataset, const MembershipMatrix& memberships,
                         double fuzzifier);

/// sum_i sum_j u_ij^m |x_i - c_j|^2
double fcm_objective(const PixelDataset& dataset, const CenterSet& centers,
                     const MembershipMatrix& memberships, double fuzzifier);

Labeling argmax_labels(const MembershipMatrix& memberships);

/// Alternating optimization from `initial_centers`. Stops once the relative
/// change of J_m drops to config.fcm_rel_tol or after config.fcm_max_iters
/// center updates. Clusters that lose all weight are re-seeded at the pixel
/// farthest from its nearest live center; C consecutive iterations with a
/// dead cluster raise degenerate_clustering.
FcmResult run_fcm(const PixelDataset& dataset, const CenterSet& initial_centers,
                  const ClusterConfig& config);

}  // namespace apsof
