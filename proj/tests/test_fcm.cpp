#include <doctest.h>

#include <algorithm>
#include <random>

#include "apsof/fcm.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using apsof::CenterSet;
using apsof::MembershipMatrix;
using apsof::PixelDataset;

TEST_CASE("compute_memberships: equidistant scalar pixel splits evenly") {
  const auto u = apsof::compute_memberships(PixelDataset::from_scalars({5}),
                                            CenterSet::from_scalars({0, 10}), 2.0);
  CHECK(u.at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u.at(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("compute_memberships: a pixel on a center gets a crisp row") {
  const auto u = apsof::compute_memberships(PixelDataset::from_scalars({4}),
                                            CenterSet::from_scalars({1, 4, 9}), 2.0);
  CHECK(u.at(0, 0) == 0.0);
  CHECK(u.at(0, 1) == 1.0);
  CHECK(u.at(0, 2) == 0.0);
  // Duplicate centers: the first coincident one takes the pixel.
  const auto dup = apsof::compute_memberships(PixelDataset::from_scalars({4}),
                                              CenterSet::from_scalars({4, 4}), 2.0);
  CHECK(dup.at(0, 0) == 1.0);
  CHECK(dup.at(0, 1) == 0.0);
}

TEST_CASE("compute_memberships matches the scalar formula") {
  const auto u = apsof::compute_memberships(PixelDataset::from_scalars({0}),
                                            CenterSet::from_scalars({1, 3}), 2.0);
  const auto expected = oracle::memberships(0, {1, 3}, 2.0);
  CHECK(std::abs(expected[0] - 0.9) < 1e-12);
  CHECK(std::abs(u.at(0, 0) - expected[0]) < 1e-12);
  CHECK(std::abs(u.at(0, 1) - expected[1]) < 1e-12);

  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> pos(0.0, 255.0);
  std::uniform_real_distribution<double> fuzz(1.1, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = pos(gen);
    std::vector<double> cs(1 + gen() % 5);
    for (auto& c : cs) c = pos(gen);
    const double m = fuzz(gen);
    const auto got = apsof::compute_memberships(PixelDataset::from_scalars({x}),
                                                CenterSet::from_scalars(cs), m);
    const auto want = oracle::memberships(x, cs, m);
    for (std::size_t j = 0; j < cs.size(); ++j) CHECK(got.at(0, j) == doctest::Approx(want[j]).epsilon(1e-9));
  }
}

TEST_CASE("compute_memberships rows sum to one and stay in [0, 1]") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pos(0.0, 255.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen() % 50;
    const std::size_t c = 1 + gen() % 5;
    std::vector<double> xs(n * 3), cs(c * 3);
    for (auto& v : xs) v = pos(gen);
    for (auto& v : cs) v = pos(gen);
    // The MembershipMatrix constructor re-checks both invariants.
    const auto u = apsof::compute_memberships(PixelDataset(xs, 3, n, 1), CenterSet(cs, 3),
                                              1.05 + 3.0 * (gen() % 100) / 100.0);
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (double v : u.row(i)) s += v;
      CHECK(std::abs(s - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("update_centers") {
  SUBCASE("crisp memberships give arithmetic means") {
    const MembershipMatrix u({1, 0, 1, 0, 0, 1}, 3, 2);
    const auto c = apsof::update_centers(PixelDataset::from_scalars({0, 2, 10}), u, 2.0);
    CHECK(c.center(0)[0] == 1.0);
    CHECK(c.center(1)[0] == 10.0);
  }
  SUBCASE("equal weights give the midpoint") {
    const MembershipMatrix u({0.5, 0.5, 0.5, 0.5}, 2, 2);
    const auto c = apsof::update_centers(PixelDataset::from_scalars({0, 10}), u, 2.0);
    CHECK(c.center(0)[0] == 5.0);
    CHECK(c.center(1)[0] == 5.0);
  }
  SUBCASE("weighted case against the scalar formula") {
    const std::vector<double> u{0.9, 0.1, 0.1, 0.9};
    const auto c = apsof::update_centers(PixelDataset::from_scalars({0, 10}),
                                         MembershipMatrix(u, 2, 2), 2.0);
    const auto want = oracle::centers({0, 10}, u, 2, 2.0);
    CHECK(std::abs(want[0] - 0.1 / 0.82) < 1e-15);
    CHECK(std::abs(c.center(0)[0] - want[0]) < 1e-12);
    CHECK(std::abs(c.center(1)[0] - want[1]) < 1e-12);
    CHECK(c.center(0)[0] == doctest::Approx(0.121951219512195));
    CHECK(c.center(1)[0] == doctest::Approx(9.878048780487805));
  }
  SUBCASE("a cluster without weight is reported") {
    const MembershipMatrix u({1, 0, 1, 0}, 2, 2);
    try {
      (void)apsof::update_centers(PixelDataset::from_scalars({0, 10}), u, 2.0);
      FAIL("expected dead_cluster");
    } catch (const apsof::Error& e) {
      CHECK(e.code() == apsof::ErrorCode::dead_cluster);
    }
  }
}

TEST_CASE("fcm_objective") {
  const PixelDataset data = PixelDataset::from_scalars({1, 7});
  CHECK(apsof::fcm_objective(data, CenterSet::from_scalars({1, 7}),
                             MembershipMatrix({1, 0, 0, 1}, 2, 2), 2.0) == 0.0);
  CHECK(apsof::fcm_objective(PixelDataset::from_scalars({3}), CenterSet::from_scalars({1}),
                             MembershipMatrix({1}, 1, 1), 2.0) == 4.0);
  const std::vector<double> u{0.9, 0.1};
  const double got = apsof::fcm_objective(PixelDataset::from_scalars({0}),
                                          CenterSet::from_scalars({1, 3}),
                                          MembershipMatrix(u, 1, 2), 2.0);
  CHECK(std::abs(got - oracle::objective({0}, {1, 3}, u, 2.0)) < 1e-12);
  CHECK(std::abs(got - 0.9) < 1e-12);
}

TEST_CASE("Closed-form memberships minimize J_m for fixed centers") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> pos(0.0, 255.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const std::size_t c = 1 + gen() % 3;
    std::vector<double> xs(n), cs(c);
    for (auto& v : xs) v = pos(gen);
    for (auto& v : cs) v = pos(gen);
    const PixelDataset data = PixelDataset::from_scalars(xs);
    const CenterSet centers = CenterSet::from_scalars(cs);
    const auto best = apsof::compute_memberships(data, centers, 2.0);
    const double best_jm = apsof::fcm_objective(data, centers, best, 2.0);
    for (int sample = 0; sample < 200; ++sample) {
      std::vector<double> u(n * c);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c; ++j) s += (u[i * c + j] = unit(gen) + 1e-12);
        for (std::size_t j = 0; j < c; ++j) u[i * c + j] /= s;
      }
      const double jm = apsof::fcm_objective(data, centers, MembershipMatrix(u, n, c), 2.0);
      CHECK(best_jm <= jm * (1 + 1e-12));
    }
  }
}

TEST_CASE("run_fcm matches the alternating-optimization oracle") {
  const std::vector<double> xs{0, 1, 9, 10};
  const auto fixed = oracle::fcm_fixed_point(xs, {0.3, 9.7}, 2.0);
  apsof::ClusterConfig config;
  config.cluster_count = 2;
  const auto result = apsof::run_fcm(PixelDataset::from_scalars(xs),
                                     CenterSet::from_scalars({0, 10}), config);
  CHECK(result.converged);
  CHECK(std::abs(result.centers.center(0)[0] - fixed.centers[0]) < 1e-6);
  CHECK(std::abs(result.centers.center(1)[0] - fixed.centers[1]) < 1e-6);
  CHECK(std::abs(result.jm_trajectory.back() - fixed.jm) < 1e-6);
}

TEST_CASE("run_fcm from a fixed point stays put") {
  const std::vector<double> xs{0, 1, 9, 10};
  const auto fixed = oracle::fcm_fixed_point(xs, {0.3, 9.7}, 2.0);
  apsof::ClusterConfig config;
  config.cluster_count = 2;
  const auto result = apsof::run_fcm(PixelDataset::from_scalars(xs),
                                     CenterSet::from_scalars(fixed.centers), config);
  CHECK(result.converged);
  CHECK(result.jm_trajectory.size() <= 2);
  CHECK(std::abs(result.centers.center(0)[0] - fixed.centers[0]) < 1e-9);
  CHECK(std::abs(result.centers.center(1)[0] - fixed.centers[1]) < 1e-9);
}

TEST_CASE("run_fcm with one cluster returns the mean") {
  const auto data = apsof::to_dataset(synthetic::random_image(5, 4, 9));
  apsof::ClusterConfig config;
  config.cluster_count = 1;
  const auto result = apsof::run_fcm(data, CenterSet({0, 0, 0}, 3), config);
  for (std::size_t k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) mean += data.pixel(i)[k];
    mean /= static_cast<double>(data.size());
    CHECK(result.centers.center(0)[k] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("run_fcm: monotone trajectory, argmax labels, permutation equivariance") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto data = apsof::to_dataset(synthetic::random_image(12, 12, gen()));
    apsof::ClusterConfig config;
    config.cluster_count = 4;
    std::vector<double> init;
    for (std::size_t j = 0; j < 4; ++j) {
      const auto p = data.pixel(gen() % data.size());
      init.insert(init.end(), p.begin(), p.end());
    }
    const auto a = apsof::run_fcm(data, CenterSet(init, 3), config);
    for (std::size_t t = 1; t < a.jm_trajectory.size(); ++t) {
      CHECK(a.jm_trajectory[t] <= a.jm_trajectory[t - 1] * (1 + 1e-9));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto row = a.memberships.row(i);
      CHECK(a.labels[i] == std::max_element(row.begin(), row.end()) - row.begin());
    }
    // Swap centers 0 and 2 in the start; outputs swap the same way.
    std::vector<double> swapped = init;
    std::swap_ranges(swapped.begin(), swapped.begin() + 3, swapped.begin() + 6);
    const auto b = apsof::run_fcm(data, CenterSet(swapped, 3), config);
    const std::size_t perm[4] = {2, 1, 0, 3};
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(b.centers.center(perm[j])[k] == doctest::Approx(a.centers.center(j)[k]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("run_fcm re-seeds a cluster whose weight underflows") {
  // With m close to 1 the far center's weights underflow to exactly zero.
  apsof::ClusterConfig config;
  config.cluster_count = 3;
  config.fuzzifier = 1.001;
  const auto data = PixelDataset::from_scalars({0, 1, 100});
  const auto result = apsof::run_fcm(data, CenterSet::from_scalars({0.5, 50.5, 250}), config);
  CHECK(result.centers.size() == 3);
  for (double v : result.centers.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 100.0);
  }
}

TEST_CASE("run_fcm rejects mismatched starts") {
  apsof::ClusterConfig config;
  config.cluster_count = 2;
  CHECK_THROWS_AS(apsof::run_fcm(PixelDataset::from_scalars({0, 1, 2}),
                                 CenterSet::from_scalars({0, 1, 2}), config),
                  apsof::Error);
}
