#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apsof/core_model.hpp"
#include "apsof/pipeline.hpp"

namespace apsof {

/// Divides each value by the mean of the two, so the pair sums to 2.
/// Throws undefined_normalization when both are zero.
std::pair<double, double> normalized_jm_pair(double jm_a, double jm_b);

/// J_m at the memberships that are optimal for `centers`. The common yardstick
/// for every algorithm, K-means included.
double evaluate_jm(const PixelDataset& dataset, const CenterSet& centers, double fuzzifier,
                   std::size_t threads = 1);

struct ReportEntry {
  std::string name;
  double final_jm = 0.0;
  std::size_t iterations = 0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
};

struct NormalizedPair {
  std::string a;
  std::string b;
  double norm_a = 0.0;
  double norm_b = 0.0;
};

struct ComparisonReport {
  std::string image;
  std::uint64_t seed = 0;
  std::vector<ReportEntry> algorithms;
  std::vector<NormalizedPair> normalized;
};

/// Entries carry evaluate_jm recomputed from each result's centers. Each
/// pairing (a, b) must name algorithms present in `results`.
ComparisonReport build_report(const std::string& image, const PixelDataset& dataset,
                              std::span<const SegmentationResult> results,
                              std::span<const std::pair<std::string, std::string>> pairings,
                              double fuzzifier, std::size_t threads = 1);

nlohmann::json to_json(const ComparisonReport& report);

struct BenchAlgorithmSummary {
  std::string name;
  double mean_jm = 0.0;
  double min_jm = 0.0;
  double max_jm = 0.0;
  /// Share of runs where this algorithm had the lowest J_m; exact ties split the credit.
  double win_rate = 0.0;
};

struct BenchPairSummary {
  std::string a;
  std::string b;
  double mean_norm_a = 0.0;
  double mean_norm_b = 0.0;
  /// Share of runs with J_m(b) <= J_m(a).
  double b_not_worse_rate = 0.0;
};

struct BenchSummary {
  std::vector<std::string> images;
  std::vector<std::uint64_t> seeds;
  std::size_t runs = 0;
  std::vector<BenchAlgorithmSummary> algorithms;
  std::vector<BenchPairSummary> normalized;
};

/// Aggregates compare reports that all list the same algorithms and pairings in the same order.
BenchSummary summarize_bench(std::span<const ComparisonReport> reports);

nlohmann::json to_json(const BenchSummary& summary);

}  // namespace apsof
