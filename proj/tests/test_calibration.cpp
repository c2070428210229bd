#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "lapsel/calibration.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/rng.hpp"

using namespace lapsel;

namespace {

EstimatorFamily noisy_family(std::uint64_t seed, size_t nh = 10, long n2 = 60) {
  Rng rng(seed);
  std::vector<double> h(nh);
  for (size_t k = 0; k < nh; ++k)
    h[k] = 0.02 * std::pow(40.0, static_cast<double>(k) / (nh - 1));
  EstimatorFamily family;
  family.grid = BandwidthGrid(h);
  family.n1 = 50000;
  family.n2 = n2;
  family.values.resize(static_cast<long>(nh), n2);
  // crude variance/bias shape: wilder rows at small h, flatter at large h
  for (size_t k = 0; k < nh; ++k) {
    const double noise = 1.0 / (std::sqrt(50000.0) * h[k] * h[k]);
    const double level = 1.0 / (1.0 + h[k] * h[k]);
    for (long j = 0; j < n2; ++j)
      family.values(static_cast<long>(k), j) = level + noise * rng.normal();
  }
  return family;
}

}  // namespace

TEST_CASE("a grid default shape") {
  const std::vector<double> a = default_a_grid();
  REQUIRE(a.size() == 40);
  CHECK(a.front() == 100.0);
  CHECK(a.back() == doctest::Approx(0.1).epsilon(1e-12));
  for (size_t i = 1; i < a.size(); ++i) CHECK(a[i] < a[i - 1]);
}

TEST_CASE("path is constant at h_max for enormous a") {
  const EstimatorFamily family = noisy_family(1);
  const std::vector<double> a_grid = {1e15, 5e14, 2e14};
  const SelectionPath path = selection_path(family, a_grid, {});
  for (double h : path.h_of_a) CHECK(h == family.grid.max());
  for (double h : path.h_of_a_2a) CHECK(h == family.grid.max());
  CHECK_THROWS_AS(detect_jump(path), no_jump_error);
}

TEST_CASE("single-entry path") {
  const EstimatorFamily family = noisy_family(2);
  const SelectionPath path = selection_path(family, {3.0}, {});
  CHECK(path.h_of_a.size() == 1);
  CHECK_THROWS_AS(detect_jump(path), std::invalid_argument);
}

TEST_CASE("a grid validation") {
  const EstimatorFamily family = noisy_family(3);
  CHECK_THROWS_AS(selection_path(family, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(selection_path(family, {1.0, 2.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(selection_path(family, {2.0, -1.0}, {}), std::invalid_argument);
}

TEST_CASE("synthetic two-level path") {
  SelectionPath path;
  path.a_grid = {10, 8, 6, 4, 2, 1};
  path.h_of_a = {0.4, 0.4, 0.4, 0.4, 0.05, 0.05};
  path.h_of_a_2a = path.h_of_a;
  CHECK(detect_jump(path) == 4.0);

  // invariant under rescaling every h (drops are log-differences)
  for (double& h : path.h_of_a) h *= 7.0;
  CHECK(detect_jump(path) == 4.0);

  // tie between two equal drops resolves toward larger a
  SelectionPath tie;
  tie.a_grid = {10, 8, 6, 4};
  tie.h_of_a = {0.8, 0.4, 0.4, 0.2};
  tie.h_of_a_2a = tie.h_of_a;
  CHECK(detect_jump(tie) == 10.0);
}

TEST_CASE("constant path signals calibration failure") {
  SelectionPath path;
  path.a_grid = {4, 2, 1};
  path.h_of_a = {0.2, 0.2, 0.2};
  path.h_of_a_2a = path.h_of_a;
  CHECK_THROWS_AS(detect_jump(path), no_jump_error);

  // a rising path has no drop either
  path.h_of_a = {0.1, 0.2, 0.4};
  CHECK_THROWS_AS(detect_jump(path), no_jump_error);
}

TEST_CASE("calibrate_and_select recomputes the selection at (a0, 2a0)") {
  const EstimatorFamily family = noisy_family(4);
  const std::vector<double> a_grid = default_a_grid();
  const CalibrationResult result = calibrate_and_select(family, a_grid, {});
  CHECK(result.a0 > 0.0);
  const LepskiSelection direct =
      select_bandwidth(family, result.a0, 2.0 * result.a0, {});
  CHECK(result.selection.h_hat == direct.h_hat);
  // selected bandwidth is a member of the family grid
  CHECK_NOTHROW(family.grid.index_of(result.selection.h_hat));
  // path entries all live on the grid too
  for (double h : result.path.h_of_a) CHECK_NOTHROW(family.grid.index_of(h));
}

TEST_CASE("single-bandwidth family with an override") {
  EstimatorFamily family;
  family.grid = BandwidthGrid({0.3});
  family.n1 = 100;
  family.n2 = 10;
  family.values.resize(1, 10);
  family.values.setConstant(1.0);
  const CalibrationResult result =
      calibrate_and_select(family, {5.0, 1.0}, {}, 3.0);
  CHECK(result.a0 == 3.0);
  CHECK(result.selection.h_hat == 0.3);
}

TEST_CASE("strict admissibility filters the path too") {
  const EstimatorFamily family = noisy_family(7);
  SelectOptions strict;
  strict.strict_admissibility = true;
  strict.theory.rho = 0.8;  // knocks out the largest bandwidths
  const std::vector<double> a_grid = {1e15, 1e14};  // B = 0 regime
  const SelectionPath path = selection_path(family, a_grid, strict);
  for (double h : path.h_of_a)
    CHECK(check_admissible(h, strict.theory).admissible);
  // and the filtered maximum differs from the unfiltered one
  const SelectionPath loose = selection_path(family, a_grid, {});
  CHECK(path.h_of_a[0] < loose.h_of_a[0]);
}

TEST_CASE("path CSV format") {
  SelectionPath path;
  path.a_grid = {4, 2};
  path.h_of_a = {0.4, 0.1};
  path.h_of_a_2a = {0.4, 0.2};
  std::stringstream ss;
  write_path_csv(ss, path);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "a,h_aa,h_a2a");
  std::getline(ss, line);
  CHECK(line == "4,0.40000000000000002,0.40000000000000002");
  std::getline(ss, line);
  CHECK(line == "2,0.10000000000000001,0.20000000000000001");
}
