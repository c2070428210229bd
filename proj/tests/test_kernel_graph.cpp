#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "lapsel/graph_laplacian.hpp"
#include "lapsel/kernel.hpp"
#include "lapsel/rng.hpp"
#include "lapsel/sphere.hpp"

using namespace lapsel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gaussian kernel values") {
  const double zero[3] = {0, 0, 0};
  CHECK(gaussian_kernel(std::span(zero), 2) ==
        doctest::Approx(0.079577471545947668).epsilon(1e-14));

  const double len2[3] = {0, 2, 0};  // ||y|| = 2
  CHECK(gaussian_kernel(std::span(len2), 2) ==
        doctest::Approx(0.029274915762159580).epsilon(1e-14));

  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    double y[3], neg[3];
    for (int c = 0; c < 3; ++c) {
      y[c] = 4.0 * rng.uniform01() - 2.0;
      neg[c] = -y[c];
    }
    CHECK(gaussian_kernel(std::span<const double>(y), 2) ==
          gaussian_kernel(std::span<const double>(neg), 2));
  }
}

TEST_CASE("constant functions are annihilated exactly") {
  const PointCloud estimation = sample_uniform_sphere(500, 4);
  const PointCloud queries = sample_uniform_sphere(100, 5);
  const Eigen::VectorXd f_est = Eigen::VectorXd::Constant(500, 3.25);
  const Eigen::VectorXd f_qry = Eigen::VectorXd::Constant(100, 3.25);
  for (double h : {0.02, 0.15, 0.8}) {
    const Eigen::VectorXd out =
        graph_laplacian_apply(estimation, f_est, queries, f_qry, h);
    for (long j = 0; j < out.size(); ++j) CHECK(out(j) == 0.0);
  }
}

TEST_CASE("single-point sum matches the closed formula") {
  PointCloud estimation;
  estimation.intrinsic_dim = 2;
  estimation.points.resize(1, 3);
  estimation.points << 0, 0, 1;
  PointCloud query;
  query.intrinsic_dim = 2;
  query.points.resize(1, 3);
  const double h = 0.3;
  query.points << h, 0, 1;  // distance exactly h
  Eigen::VectorXd f_est(1), f_qry(1);
  f_est << 1.0;
  f_qry << 0.0;
  const Eigen::VectorXd out =
      graph_laplacian_apply(estimation, f_est, query, f_qry, h);
  const double expected =
      std::pow(h, -4.0) / (4.0 * kPi) * std::exp(-0.25);
  CHECK(out(0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("linearity in f") {
  const PointCloud estimation = sample_uniform_sphere(300, 6);
  const PointCloud queries = sample_uniform_sphere(60, 7);
  Rng rng(8);
  Eigen::VectorXd f1(300), f2(300), q1(60), q2(60);
  for (long i = 0; i < 300; ++i) {
    f1(i) = rng.normal();
    f2(i) = rng.normal();
  }
  for (long j = 0; j < 60; ++j) {
    q1(j) = rng.normal();
    q2(j) = rng.normal();
  }
  const double alpha = 1.3, beta = -2.1;
  const double h = 0.25;
  const Eigen::VectorXd combined = graph_laplacian_apply(
      estimation, alpha * f1 + beta * f2, queries, alpha * q1 + beta * q2, h);
  const Eigen::VectorXd split =
      alpha * graph_laplacian_apply(estimation, f1, queries, q1, h) +
      beta * graph_laplacian_apply(estimation, f2, queries, q2, h);
  for (long j = 0; j < 60; ++j)
    CHECK(combined(j) ==
          doctest::Approx(split(j))
              .epsilon(1e-10));
}

TEST_CASE("power-of-two scaling is exact") {
  const PointCloud estimation = sample_uniform_sphere(200, 9);
  const PointCloud queries = sample_uniform_sphere(40, 10);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_qry = eval_test_function(queries);
  const Eigen::VectorXd base =
      graph_laplacian_apply(estimation, f_est, queries, f_qry, 0.2);
  const Eigen::VectorXd scaled =
      graph_laplacian_apply(estimation, 4.0 * f_est, queries, 4.0 * f_qry, 0.2);
  for (long j = 0; j < 40; ++j) CHECK(scaled(j) == 4.0 * base(j));
}

TEST_CASE("permutation of estimation points is summation-order noise only") {
  const long n = 400;
  const PointCloud estimation = sample_uniform_sphere(n, 12);
  const PointCloud queries = sample_uniform_sphere(50, 13);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_qry = eval_test_function(queries);

  std::vector<long> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(99));
  PointCloud shuffled = estimation;
  Eigen::VectorXd f_shuffled(n);
  for (long i = 0; i < n; ++i) {
    shuffled.points.row(i) = estimation.points.row(perm[static_cast<size_t>(i)]);
    f_shuffled(i) = f_est(perm[static_cast<size_t>(i)]);
  }

  const Eigen::VectorXd a =
      graph_laplacian_apply(estimation, f_est, queries, f_qry, 0.15);
  const Eigen::VectorXd b =
      graph_laplacian_apply(shuffled, f_shuffled, queries, f_qry, 0.15);
  for (long j = 0; j < 50; ++j)
    CHECK(std::abs(a(j) - b(j)) <= 1e-12 * std::max(1.0, std::abs(a(j))));
}

TEST_CASE("cutoff mode stays within the Gaussian tail bound") {
  const PointCloud estimation = sample_uniform_sphere(2000, 14);
  const PointCloud queries = sample_uniform_sphere(200, 15);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_qry = eval_test_function(queries);
  ApplyOptions cutoff;
  cutoff.cutoff_factor = 10.0;
  for (double h : {0.1, 0.2}) {
    const Eigen::VectorXd exact =
        graph_laplacian_apply(estimation, f_est, queries, f_qry, h);
    const Eigen::VectorXd truncated =
        graph_laplacian_apply(estimation, f_est, queries, f_qry, h, cutoff);
    for (long j = 0; j < 200; ++j)
      CHECK(std::abs(exact(j) - truncated(j)) <=
            1e-10 * std::max(1.0, std::abs(exact(j))));
  }
}

TEST_CASE("results do not depend on the thread count") {
  const PointCloud estimation = sample_uniform_sphere(500, 16);
  const PointCloud queries = sample_uniform_sphere(64, 17);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_qry = eval_test_function(queries);
  const BandwidthGrid grid({0.05, 0.2, 0.6});
  ApplyOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const EstimatorFamily a =
      build_family(estimation, f_est, queries, f_qry, grid, one);
  const EstimatorFamily b =
      build_family(estimation, f_est, queries, f_qry, grid, four);
  CHECK((a.values.array() == b.values.array()).all());
}

TEST_CASE("input validation") {
  const PointCloud estimation = sample_uniform_sphere(10, 1);
  const PointCloud queries = sample_uniform_sphere(5, 2);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_qry = eval_test_function(queries);

  PointCloud empty;
  empty.intrinsic_dim = 2;
  empty.points.resize(0, 3);
  CHECK_THROWS_AS(graph_laplacian_apply(empty, Eigen::VectorXd(), queries,
                                        f_qry, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      graph_laplacian_apply(estimation, f_est.head(5), queries, f_qry, 0.1),
      std::invalid_argument);
  CHECK_THROWS_AS(graph_laplacian_apply(estimation, f_est, queries,
                                        Eigen::VectorXd(), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      graph_laplacian_apply(estimation, f_est, queries, f_qry, -0.1),
      std::invalid_argument);
  CHECK_THROWS_AS(build_family(estimation, f_est, queries, f_qry,
                               BandwidthGrid{}, ApplyOptions{}),
                  std::invalid_argument);
}

TEST_CASE("bandwidth grid validation") {
  CHECK_THROWS_AS(BandwidthGrid({0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(BandwidthGrid({-0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(BandwidthGrid({0.1, 0.1}), std::invalid_argument);
  const BandwidthGrid grid = log_spaced_grid(0.02, 0.8, 15);
  CHECK(grid.size() == 15);
  CHECK(grid.min() == doctest::Approx(0.02));
  CHECK(grid.max() == 0.8);
}

TEST_CASE("estimation error is smallest at a moderate bandwidth") {
  // overfit at h=0.02, oversmooth at h=0.8
  const PointCloud estimation = sample_uniform_sphere(50000, 18);
  const PointCloud validation = sample_uniform_sphere_nonpolar(300, 19);
  const Eigen::VectorXd f_est = eval_test_function(estimation);
  const Eigen::VectorXd f_val = eval_test_function(validation);
  const BandwidthGrid grid({0.02, 0.15, 0.8});
  const EstimatorFamily family =
      build_family(estimation, f_est, validation, f_val, grid);
  const Eigen::VectorXd target =
      target_operator(validation, TargetConvention::analytic);
  auto mse = [&](long row) {
    return (family.values.row(row).transpose() - target).squaredNorm() /
           static_cast<double>(target.size());
  };
  const double at_002 = mse(0), at_015 = mse(1), at_08 = mse(2);
  CHECK(std::isfinite(at_015));
  CHECK(at_015 < at_002);
  CHECK(at_015 < at_08);
}

TEST_CASE("family CSV layout") {
  const PointCloud estimation = sample_uniform_sphere(20, 3);
  const PointCloud validation = sample_uniform_sphere(4, 4);
  const EstimatorFamily family =
      build_family(estimation, eval_test_function(estimation), validation,
                   eval_test_function(validation), BandwidthGrid({0.1, 0.4}));
  std::stringstream ss;
  write_family_csv(ss, family);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "h,query_index,value");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 8);
}
