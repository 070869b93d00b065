// apsof: color-image segmentation with swarm-seeded fuzzy c-means.
//
//   apsof segment [options] <in.ppm> <out.ppm>
//   apsof compare [options] <in.ppm> <out_dir>
//   apsof bench   [options] <in.ppm>...
//
// Exit status: 0 success, 1 runtime error, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "apsof/imaging.hpp"
#include "apsof/metrics.hpp"
#include "apsof/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string algo = "apsof";
  std::size_t clusters = 5;
  std::uint64_t seed = 42;
  double fuzzifier = 2.0;
  std::optional<std::size_t> max_side;
  std::size_t threads = 1;
  std::string report;
  apsof::SwarmConfig swarm;

  std::string input;
  std::string output;
  std::vector<std::string> inputs;
  std::string seeds;
  std::size_t runs = 0;
};

void add_common_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--clusters", o.clusters, "Number of clusters C")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd.add_option("--fuzzifier", o.fuzzifier, "FCM fuzzifier m (> 1)")
      ->check(CLI::Validator(
          [](std::string& s) {
            try {
              if (std::stod(s) > 1.0) return std::string{};
            } catch (const std::logic_error&) {
            }
            return std::string("fuzzifier must be a number greater than 1");
          },
          "> 1"))
      ->capture_default_str();
  cmd.add_option("--max-side", o.max_side, "Downscale so the longer side is at most this")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--threads", o.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--swarm-size", o.swarm.swarm_size, "Particles per swarm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--iters", o.swarm.n_max, "Swarm iteration cap n_max")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--w-max", o.swarm.w_max, "Maximum inertia weight")->capture_default_str();
  cmd.add_option("--w-min", o.swarm.w_min, "Minimum inertia weight")->capture_default_str();
  cmd.add_option("--c1-init", o.swarm.c1_init, "Initial cognitive factor")->capture_default_str();
  cmd.add_option("--c1-final", o.swarm.c1_final, "Final cognitive factor")->capture_default_str();
  cmd.add_option("--c2-init", o.swarm.c2_init, "Initial social factor")->capture_default_str();
  cmd.add_option("--c2-final", o.swarm.c2_final, "Final social factor")->capture_default_str();
  cmd.add_option("--variance-tol", o.swarm.variance_tol,
                 "Relative swarm fitness variance that stops the search")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd.add_option("--vmax-frac", o.swarm.v_max_fraction, "Velocity clamp as a fraction of 255")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

apsof::ClusterConfig cluster_config(const Options& o, std::uint64_t seed) {
  apsof::ClusterConfig config;
  config.cluster_count = o.clusters;
  config.fuzzifier = o.fuzzifier;
  config.seed = seed;
  config.threads = o.threads;
  return config;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw apsof::Error(apsof::ErrorCode::io_error, "cannot write " + path);
  out << text;
}

const std::vector<std::pair<std::string, std::string>> kComparePairings = {{"fcm", "apsof"}};

std::vector<apsof::SegmentationResult> run_all(const apsof::PixelDataset& dataset,
                                               const Options& o, std::uint64_t seed) {
  std::vector<apsof::SegmentationResult> results;
  for (apsof::Algorithm a : apsof::kAllAlgorithms) {
    results.push_back(apsof::run_algorithm(a, dataset, cluster_config(o, seed), o.swarm));
  }
  return results;
}

int cmd_segment(const Options& o) {
  const apsof::PixelDataset dataset =
      apsof::to_dataset(apsof::read_ppm_file(o.input), o.max_side);
  const apsof::SegmentationResult result =
      apsof::run_algorithm(o.algo, dataset, cluster_config(o, o.seed), o.swarm);
  apsof::write_ppm_file(o.output,
                        apsof::reconstruct_quantized(dataset, result.labels, result.centers));
  if (!o.report.empty()) {
    const auto report =
        apsof::build_report(fs::path(o.input).filename().string(), dataset,
                            std::span(&result, 1), {}, o.fuzzifier, o.threads);
    write_json(apsof::to_json(report), o.report);
  }
  return 0;
}

int cmd_compare(const Options& o) {
  const apsof::PixelDataset dataset =
      apsof::to_dataset(apsof::read_ppm_file(o.input), o.max_side);
  const auto results = run_all(dataset, o, o.seed);

  const fs::path out_dir(o.output);
  fs::create_directories(out_dir);
  const std::string stem = fs::path(o.input).stem().string();
  for (const apsof::SegmentationResult& r : results) {
    apsof::write_ppm_file(out_dir / (stem + "_" + r.algorithm + ".ppm"),
                          apsof::reconstruct_quantized(dataset, r.labels, r.centers));
  }
  const auto report = apsof::build_report(fs::path(o.input).filename().string(), dataset,
                                          results, kComparePairings, o.fuzzifier, o.threads);
  const std::string report_path =
      o.report.empty() ? (out_dir / (stem + "_report.json")).string() : o.report;
  write_json(apsof::to_json(report), report_path);
  return 0;
}

// Accepts "1,2,5" and ranges such as "1-20".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item));
      } else {
        const std::uint64_t lo = std::stoull(item.substr(0, dash));
        const std::uint64_t hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw UsageError("descending seed range '" + item + "'");
        for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad seed list entry '" + item + "'");
    }
  }
  if (seeds.empty()) throw UsageError("empty seed list");
  return seeds;
}

int cmd_bench(const Options& o) {
  std::vector<std::uint64_t> seeds;
  if (!o.seeds.empty()) {
    seeds = parse_seed_list(o.seeds);
  } else {
    for (std::size_t k = 0; k < std::max<std::size_t>(o.runs, 1); ++k) seeds.push_back(o.seed + k);
  }
  std::vector<apsof::ComparisonReport> reports;
  for (const std::string& input : o.inputs) {
    const apsof::PixelDataset dataset = apsof::to_dataset(apsof::read_ppm_file(input), o.max_side);
    for (std::uint64_t seed : seeds) {
      const auto results = run_all(dataset, o, seed);
      reports.push_back(apsof::build_report(fs::path(input).filename().string(), dataset, results,
                                            kComparePairings, o.fuzzifier, o.threads));
    }
  }
  write_json(apsof::to_json(apsof::summarize_bench(reports)), o.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Color image segmentation: K-means, FCM, PSO+FCM and adaptive PSO+FCM"};
  app.require_subcommand(1);
  Options o;

  auto* segment = app.add_subcommand("segment", "Segment one image with one algorithm");
  add_common_flags(*segment, o);
  segment->add_option("--algo", o.algo, "kmeans | fcm | psofcm | apsof")
      ->check(CLI::IsMember({"kmeans", "fcm", "psofcm", "apsof"}))
      ->capture_default_str();
  segment->add_option("--report", o.report, "Write a single-entry JSON report here");
  segment->add_option("input", o.input, "Input PPM (P6)")->required();
  segment->add_option("output", o.output, "Quantized output PPM")->required();

  auto* compare = app.add_subcommand("compare", "Run all four algorithms on one image");
  add_common_flags(*compare, o);
  compare->add_option("--report", o.report, "JSON report path (default <out_dir>/<stem>_report.json)");
  compare->add_option("input", o.input, "Input PPM (P6)")->required();
  compare->add_option("output", o.output, "Output directory")->required();

  auto* bench = app.add_subcommand("bench", "Repeat the comparison over seeds and images");
  add_common_flags(*bench, o);
  bench->add_option("--report", o.report, "JSON summary path (default stdout)");
  bench->add_option("--seeds", o.seeds, "Seed list, e.g. 1-20 or 3,5,8");
  bench->add_option("--runs", o.runs, "Number of consecutive seeds starting at --seed")
      ->check(CLI::PositiveNumber);
  bench->add_option("inputs", o.inputs, "Input PPM files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    apsof::validate_swarm_config(o.swarm);
  } catch (const apsof::Error& e) {
    std::cerr << "apsof: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*segment) return cmd_segment(o);
    if (*compare) return cmd_compare(o);
    return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "apsof: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "apsof: " << e.what() << "\n";
    return kRuntimeError;
  }
}
