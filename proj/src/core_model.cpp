#include "apsof/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apsof/parallel.hpp"
#include "apsof/rng.hpp"

namespace apsof {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_fuzzifier: return "invalid-fuzzifier";
    case ErrorCode::invalid_cluster_count: return "invalid-cluster-count";
    case ErrorCode::too_many_clusters: return "too-many-clusters";
    case ErrorCode::bad_magic: return "bad-magic";
    case ErrorCode::bad_maxval: return "bad-maxval";
    case ErrorCode::bad_dimensions: return "bad-dimensions";
    case ErrorCode::malformed_header: return "malformed-header";
    case ErrorCode::truncated_payload: return "truncated-payload";
    case ErrorCode::dead_cluster: return "dead-cluster";
    case ErrorCode::degenerate_clustering: return "degenerate-clustering";
    case ErrorCode::undefined_normalization: return "undefined-normalization";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

PixelDataset::PixelDataset(std::vector<double> values, std::size_t dim, std::size_t width,
                           std::size_t height)
    : values_(std::move(values)), dim_(dim), width_(width), height_(height) {
  if (dim_ == 0 || values_.empty() || values_.size() % dim_ != 0) {
    throw Error(ErrorCode::invalid_argument, "dataset needs at least one complete pixel");
  }
  if (width_ * height_ != size()) {
    throw Error(ErrorCode::invalid_argument, "width x height does not match pixel count");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0 || v > kMaxComponent) {
      throw Error(ErrorCode::invalid_argument, "pixel component outside [0, 255]");
    }
  }
}

PixelDataset PixelDataset::from_scalars(std::vector<double> values) {
  const std::size_t n = values.size();
  return PixelDataset(std::move(values), 1, n, 1);
}

std::size_t PixelDataset::distinct_count() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto less = [this](std::size_t a, std::size_t b) {
    const auto pa = pixel(a);
    const auto pb = pixel(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = 1;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (less(order[k - 1], order[k])) ++distinct;
  }
  return distinct;
}

CenterSet::CenterSet(std::vector<double> values, std::size_t dim)
    : values_(std::move(values)), dim_(dim) {
  if (dim_ == 0 || values_.empty() || values_.size() % dim_ != 0) {
    throw Error(ErrorCode::invalid_argument, "center set needs at least one complete center");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "non-finite center component");
  }
}

CenterSet CenterSet::from_scalars(std::vector<double> values) {
  return CenterSet(std::move(values), 1);
}

void CenterSet::clamp_to_range() {
  for (double& v : values_) v = std::clamp(v, 0.0, kMaxComponent);
}

MembershipMatrix::MembershipMatrix(std::vector<double> values, std::size_t rows,
                                   std::size_t cols)
    : values_(std::move(values)), rows_(rows), cols_(cols) {
  if (cols_ == 0 || values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::invalid_argument, "membership shape mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    double sum = 0.0;
    for (double u : row(i)) {
      if (!(u >= 0.0 && u <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "membership outside [0, 1]");
      }
      sum += u;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw Error(ErrorCode::invalid_argument, "membership row does not sum to 1");
    }
  }
}

Labeling::Labeling(std::vector<std::uint32_t> labels, std::size_t cluster_count)
    : labels_(std::move(labels)), cluster_count_(cluster_count) {
  for (std::uint32_t label : labels_) {
    if (label >= cluster_count_) throw Error(ErrorCode::invalid_argument, "label out of range");
  }
}

ClusterConfig validate_config(const ClusterConfig& config, const PixelDataset& dataset) {
  if (config.cluster_count < 1) {
    throw Error(ErrorCode::invalid_cluster_count, "cluster count must be at least 1");
  }
  if (!(config.fuzzifier > 1.0) || !std::isfinite(config.fuzzifier)) {
    throw Error(ErrorCode::invalid_fuzzifier, "fuzzifier must be a finite real greater than 1");
  }
  if (config.fcm_max_iters < 1 || !(config.fcm_rel_tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "iteration cap and tolerance must be positive");
  }
  if (config.cluster_count > dataset.distinct_count()) {
    throw Error(ErrorCode::too_many_clusters,
                "cluster count exceeds number of distinct pixel colors");
  }
  return config;
}

std::size_t nearest_center(std::span<const double> point, const CenterSet& centers) {
  std::size_t best = 0;
  double best_d2 = squared_distance(point, centers.center(0));
  for (std::size_t j = 1; j < centers.size(); ++j) {
    const double d2 = squared_distance(point, centers.center(j));
    if (d2 < best_d2) {
      best_d2 = d2;
      best = j;
    }
  }
  return best;
}

Labeling assign_nearest(const PixelDataset& dataset, const CenterSet& centers,
                        std::size_t threads) {
  if (centers.dim() != dataset.dim()) {
    throw Error(ErrorCode::invalid_argument, "center dimension differs from pixel dimension");
  }
  std::vector<std::uint32_t> labels(dataset.size());
  detail::parallel_for(dataset.size(), threads, [&](std::size_t i) {
    labels[i] = static_cast<std::uint32_t>(nearest_center(dataset.pixel(i), centers));
  });
  return Labeling(std::move(labels), centers.size());
}

CenterSet sample_distinct_centers(const PixelDataset& dataset, std::size_t count, Rng& rng) {
  if (count < 1) throw Error(ErrorCode::invalid_cluster_count, "cluster count must be at least 1");
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::vector<double> chosen;
  chosen.reserve(count * d);
  std::size_t picked = 0;
  for (std::size_t k = 0; k < n && picked < count; ++k) {
    std::swap(order[k], order[k + rng.below(n - k)]);
    const auto candidate = dataset.pixel(order[k]);
    bool seen = false;
    for (std::size_t j = 0; j < picked && !seen; ++j) {
      seen = std::equal(candidate.begin(), candidate.end(), chosen.begin() + j * d);
    }
    if (!seen) {
      chosen.insert(chosen.end(), candidate.begin(), candidate.end());
      ++picked;
    }
  }
  if (picked < count) {
    throw Error(ErrorCode::too_many_clusters,
                "cluster count exceeds number of distinct pixel colors");
  }
  return CenterSet(std::move(chosen), d);
}

}  // namespace apsof
