#include "apsof/metrics.hpp"

#include <algorithm>
#include <limits>

#include "apsof/fcm.hpp"

namespace apsof {

std::pair<double, double> normalized_jm_pair(double jm_a, double jm_b) {
  if (!(jm_a >= 0.0) || !(jm_b >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "J_m values must be non-negative");
  }
  if (jm_a + jm_b <= 0.0) {
    throw Error(ErrorCode::undefined_normalization, "both J_m values are zero");
  }
  const double mean = (jm_a + jm_b) / 2.0;
  return {jm_a / mean, jm_b / mean};
}

double evaluate_jm(const PixelDataset& dataset, const CenterSet& centers, double fuzzifier,
                   std::size_t threads) {
  const MembershipMatrix u = compute_memberships(dataset, centers, fuzzifier, threads);
  return fcm_objective(dataset, centers, u, fuzzifier);
}

ComparisonReport build_report(const std::string& image, const PixelDataset& dataset,
                              std::span<const SegmentationResult> results,
                              std::span<const std::pair<std::string, std::string>> pairings,
                              double fuzzifier, std::size_t threads) {
  if (results.empty()) throw Error(ErrorCode::invalid_argument, "no results to report");
  ComparisonReport report{image, results.front().seed, {}, {}};
  for (const SegmentationResult& r : results) {
    report.algorithms.push_back(ReportEntry{
        r.algorithm, evaluate_jm(dataset, r.centers, fuzzifier, threads), r.iterations,
        std::chrono::duration<double, std::milli>(r.wall_time).count(), r.seed});
  }
  const auto find = [&](const std::string& name) -> const ReportEntry& {
    const auto it = std::find_if(report.algorithms.begin(), report.algorithms.end(),
                                 [&](const ReportEntry& e) { return e.name == name; });
    if (it == report.algorithms.end()) {
      throw Error(ErrorCode::invalid_argument, "pairing names unknown algorithm '" + name + "'");
    }
    return *it;
  };
  for (const auto& [a, b] : pairings) {
    const auto [norm_a, norm_b] = normalized_jm_pair(find(a).final_jm, find(b).final_jm);
    report.normalized.push_back(NormalizedPair{a, b, norm_a, norm_b});
  }
  return report;
}

nlohmann::json to_json(const ComparisonReport& report) {
  nlohmann::json algorithms = nlohmann::json::array();
  for (const ReportEntry& e : report.algorithms) {
    algorithms.push_back({{"name", e.name},
                          {"final_jm", e.final_jm},
                          {"iterations", e.iterations},
                          {"wall_time_ms", e.wall_time_ms}});
  }
  nlohmann::json normalized = nlohmann::json::array();
  for (const NormalizedPair& p : report.normalized) {
    normalized.push_back({{"a", p.a}, {"b", p.b}, {"norm_a", p.norm_a}, {"norm_b", p.norm_b}});
  }
  return {{"image", report.image},
          {"seed", report.seed},
          {"algorithms", std::move(algorithms)},
          {"normalized", std::move(normalized)}};
}

BenchSummary summarize_bench(std::span<const ComparisonReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::invalid_argument, "no runs to summarize");
  const ComparisonReport& first = reports.front();
  BenchSummary summary;
  summary.runs = reports.size();
  for (const ComparisonReport& r : reports) {
    if (r.algorithms.size() != first.algorithms.size() ||
        r.normalized.size() != first.normalized.size()) {
      throw Error(ErrorCode::invalid_argument, "reports list different algorithms");
    }
    if (std::find(summary.images.begin(), summary.images.end(), r.image) == summary.images.end()) {
      summary.images.push_back(r.image);
    }
    if (std::find(summary.seeds.begin(), summary.seeds.end(), r.seed) == summary.seeds.end()) {
      summary.seeds.push_back(r.seed);
    }
  }

  const double runs = static_cast<double>(reports.size());
  for (std::size_t k = 0; k < first.algorithms.size(); ++k) {
    BenchAlgorithmSummary s{first.algorithms[k].name, 0.0,
                            std::numeric_limits<double>::infinity(),
                            -std::numeric_limits<double>::infinity(), 0.0};
    for (const ComparisonReport& r : reports) {
      const double jm = r.algorithms[k].final_jm;
      s.mean_jm += jm;
      s.min_jm = std::min(s.min_jm, jm);
      s.max_jm = std::max(s.max_jm, jm);
    }
    s.mean_jm /= runs;
    summary.algorithms.push_back(std::move(s));
  }
  for (const ComparisonReport& r : reports) {
    double best = std::numeric_limits<double>::infinity();
    for (const ReportEntry& e : r.algorithms) best = std::min(best, e.final_jm);
    const auto winners = std::count_if(r.algorithms.begin(), r.algorithms.end(),
                                       [&](const ReportEntry& e) { return e.final_jm == best; });
    for (std::size_t k = 0; k < r.algorithms.size(); ++k) {
      if (r.algorithms[k].final_jm == best) {
        summary.algorithms[k].win_rate += 1.0 / static_cast<double>(winners) / runs;
      }
    }
  }

  for (std::size_t k = 0; k < first.normalized.size(); ++k) {
    BenchPairSummary p{first.normalized[k].a, first.normalized[k].b, 0.0, 0.0, 0.0};
    for (const ComparisonReport& r : reports) {
      p.mean_norm_a += r.normalized[k].norm_a / runs;
      p.mean_norm_b += r.normalized[k].norm_b / runs;
      if (r.normalized[k].norm_b <= r.normalized[k].norm_a) p.b_not_worse_rate += 1.0 / runs;
    }
    summary.normalized.push_back(std::move(p));
  }
  return summary;
}

nlohmann::json to_json(const BenchSummary& summary) {
  nlohmann::json algorithms = nlohmann::json::array();
  for (const BenchAlgorithmSummary& a : summary.algorithms) {
    algorithms.push_back({{"name", a.name},
                          {"mean_jm", a.mean_jm},
                          {"min_jm", a.min_jm},
                          {"max_jm", a.max_jm},
                          {"win_rate", a.win_rate}});
  }
  nlohmann::json normalized = nlohmann::json::array();
  for (const BenchPairSummary& p : summary.normalized) {
    normalized.push_back({{"a", p.a},
                          {"b", p.b},
                          {"mean_norm_a", p.mean_norm_a},
                          {"mean_norm_b", p.mean_norm_b},
                          {"b_not_worse_rate", p.b_not_worse_rate}});
  }
  return {{"images", summary.images},
          {"seeds", summary.seeds},
          {"runs", summary.runs},
          {"algorithms", std::move(algorithms)},
          {"normalized", std::move(normalized)}};
}

}  // namespace apsof
