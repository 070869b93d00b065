#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apsof {

/// Distances below this are treated as exact coincidence with a center.
inline constexpr double kZeroDistance = 1e-12;

/// Upper bound of every color component.
inline constexpr double kMaxComponent = 255.0;

enum class ErrorCode {
  invalid_argument,
  invalid_fuzzifier,
  invalid_cluster_count,
  too_many_clusters,
  bad_magic,
  bad_maxval,
  bad_dimensions,
  malformed_header,
  truncated_payload,
  dead_cluster,
  degenerate_clustering,
  undefined_normalization,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// N points of dimension d stored row-major, plus the image grid they came from.
class PixelDataset {
 public:
  PixelDataset(std::vector<double> values, std::size_t dim, std::size_t width,
               std::size_t height);

  /// One-dimensional dataset laid out as an N x 1 strip.
  static PixelDataset from_scalars(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  std::span<const double> pixel(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Number of distinct color vectors (exact comparison).
  std::size_t distinct_count() const;

 private:
  std::vector<double> values_;
  std::size_t dim_;
  std::size_t width_;
  std::size_t height_;
};

/// C cluster prototypes of dimension d stored row-major.
class CenterSet {
 public:
  CenterSet(std::vector<double> values, std::size_t dim);

  static CenterSet from_scalars(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> center(std::size_t j) const {
    return {values_.data() + j * dim_, dim_};
  }
  std::span<double> center(std::size_t j) { return {values_.data() + j * dim_, dim_}; }
  std::span<const double> values() const noexcept { return values_; }

  void clamp_to_range();

  friend bool operator==(const CenterSet&, const CenterSet&) = default;

 private:
  std::vector<double> values_;
  std::size_t dim_;
};

/// Row-stochastic N x C fuzzy partition.
class MembershipMatrix {
 public:
  /// Validates entries in [0, 1] and every row summing to 1 within 1e-9.
  MembershipMatrix(std::vector<double> values, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  std::size_t rows_;
  std::size_t cols_;
};

class Labeling {
 public:
  Labeling(std::vector<std::uint32_t> labels, std::size_t cluster_count);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t cluster_count() const noexcept { return cluster_count_; }
  std::uint32_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::uint32_t> labels() const noexcept { return labels_; }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<std::uint32_t> labels_;
  std::size_t cluster_count_;
};

struct ClusterConfig {
  std::size_t cluster_count = 5;
  double fuzzifier = 2.0;
  std::size_t fcm_max_iters = 300;
  double fcm_rel_tol = 1e-6;
  std::uint64_t seed = 42;
  /// Worker threads for per-pixel and per-particle work. Results do not depend on it.
  std::size_t threads = 1;
};

/// Throws Error on the first violated invariant; otherwise returns config unchanged.
ClusterConfig validate_config(const ClusterConfig& config, const PixelDataset& dataset);

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return sum;
}

/// Index of the nearest center; lowest index wins ties.
std::size_t nearest_center(std::span<const double> point, const CenterSet& centers);

Labeling assign_nearest(const PixelDataset& dataset, const CenterSet& centers,
                        std::size_t threads = 1);

class Rng;

/// Picks `count` pixels with pairwise-distinct colors, uniformly over a random
/// permutation of pixel indices. Throws too_many_clusters when impossible.
CenterSet sample_distinct_centers(const PixelDataset& dataset, std::size_t count, Rng& rng);

}  // namespace apsof
