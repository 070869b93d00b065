#include <doctest.h>

#include <random>

#include "apsof/core_model.hpp"
#include "apsof/rng.hpp"

using apsof::CenterSet;
using apsof::ErrorCode;
using apsof::PixelDataset;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const apsof::Error& e) {
    return e.code();
  }
  FAIL("expected apsof::Error");
  return ErrorCode::io_error;
}

}  // namespace

TEST_CASE("assign_nearest picks the strictly nearer center") {
  const PixelDataset data({0, 0, 0}, 3, 1, 1);
  const CenterSet centers({1, 1, 1, 9, 9, 9}, 3);
  CHECK(apsof::assign_nearest(data, centers)[0] == 0);
}

TEST_CASE("assign_nearest breaks ties toward the lowest index") {
  const PixelDataset data({5, 5, 5}, 3, 1, 1);
  const CenterSet centers({0, 0, 0, 10, 10, 10}, 3);
  CHECK(apsof::assign_nearest(data, centers)[0] == 0);
}

TEST_CASE("assign_nearest agrees with an exhaustive distance table") {
  const PixelDataset data({10, 20, 30, 200, 100, 50, 60, 60, 60}, 3, 3, 1);
  const CenterSet centers({10, 20, 30, 200, 100, 50}, 3);
  const auto labels = apsof::assign_nearest(data, centers);
  CHECK(labels[0] == 0);
  CHECK(labels[1] == 1);
  // (60,60,60): d2 to c0 = 2500+1600+900 = 5000, to c1 = 19600+1600+100 = 21300.
  CHECK(labels[2] == 0);
}

TEST_CASE("assign_nearest property: chosen center is never beaten, and scaling is harmless") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> comp(0.0, 255.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 30;
    const std::size_t c = 1 + gen() % 6;
    std::vector<double> xs(n * 3);
    std::vector<double> cs(c * 3);
    for (auto& v : xs) v = comp(gen);
    for (auto& v : cs) v = comp(gen);
    const PixelDataset data(xs, 3, n, 1);
    const auto labels = apsof::assign_nearest(data, CenterSet(cs, 3), 3);
    for (std::size_t i = 0; i < n; ++i) {
      const double chosen = apsof::squared_distance(data.pixel(i), CenterSet(cs, 3).center(labels[i]));
      for (std::size_t k = 0; k < c; ++k) {
        CHECK(chosen <= apsof::squared_distance(data.pixel(i), CenterSet(cs, 3).center(k)));
      }
    }
    // Halving every coordinate scales all distances by 1/4.
    for (auto& v : xs) v *= 0.5;
    for (auto& v : cs) v *= 0.5;
    CHECK(apsof::assign_nearest(PixelDataset(xs, 3, n, 1), CenterSet(cs, 3)) == labels);
  }
}

TEST_CASE("assign_nearest rejects mismatched dimensions") {
  const PixelDataset data({1, 2, 3}, 3, 1, 1);
  CHECK(error_of([&] { (void)apsof::assign_nearest(data, CenterSet::from_scalars({1})); }) ==
        ErrorCode::invalid_argument);
  CHECK(error_of([] { CenterSet({}, 3); }) == ErrorCode::invalid_argument);
}

TEST_CASE("PixelDataset enforces its invariants") {
  CHECK(error_of([] { PixelDataset({1, 2, 3}, 3, 2, 1); }) == ErrorCode::invalid_argument);
  CHECK(error_of([] { PixelDataset({1, 2, 300}, 3, 1, 1); }) == ErrorCode::invalid_argument);
  CHECK(error_of([] { PixelDataset({}, 3, 0, 0); }) == ErrorCode::invalid_argument);
  CHECK(PixelDataset({1, 2, 3, 1, 2, 3, 4, 5, 6}, 3, 3, 1).distinct_count() == 2);
}

TEST_CASE("validate_config") {
  std::vector<double> xs;
  for (int i = 0; i < 64 * 64; ++i) {
    xs.insert(xs.end(), {double(i % 7) * 30, double(i % 5) * 40, 10.0});
  }
  const PixelDataset image(xs, 3, 64, 64);
  apsof::ClusterConfig config;
  config.cluster_count = 5;

  SUBCASE("ok") { CHECK(apsof::validate_config(config, image).cluster_count == 5); }
  SUBCASE("fuzzifier of exactly one") {
    config.fuzzifier = 1.0;
    CHECK(error_of([&] { apsof::validate_config(config, image); }) == ErrorCode::invalid_fuzzifier);
  }
  SUBCASE("zero clusters") {
    config.cluster_count = 0;
    CHECK(error_of([&] { apsof::validate_config(config, image); }) ==
          ErrorCode::invalid_cluster_count);
  }
  SUBCASE("more clusters than colors") {
    const PixelDataset three({0, 0, 0, 1, 1, 1, 2, 2, 2, 0, 0, 0}, 3, 2, 2);
    config.cluster_count = 4;
    CHECK(error_of([&] { apsof::validate_config(config, three); }) ==
          ErrorCode::too_many_clusters);
  }
}

TEST_CASE("sample_distinct_centers returns pairwise distinct pixel colors") {
  const PixelDataset data = PixelDataset::from_scalars({3, 3, 3, 3, 7, 7, 9, 3});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    apsof::Rng rng(seed);
    const CenterSet c = apsof::sample_distinct_centers(data, 3, rng);
    std::vector<double> v(c.values().begin(), c.values().end());
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<double>{3, 7, 9});
  }
  apsof::Rng rng(1);
  CHECK(error_of([&] { apsof::sample_distinct_centers(data, 4, rng); }) ==
        ErrorCode::too_many_clusters);
}

TEST_CASE("Rng is reproducible and uniform01 stays in [0, 1)") {
  apsof::Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u == b.uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(7) == b.below(7));
  }
}
