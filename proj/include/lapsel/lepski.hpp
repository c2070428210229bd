#pragma once

#include <string>
#include <vector>

#include "lapsel/empirical_norms.hpp"
#include "lapsel/graph_laplacian.hpp"
#include "lapsel/theory_constants.hpp"

#include "json.hpp"

namespace lapsel {

/// Theoretical bandwidth grid {e^{-k} : ceil(log log n) <= k <= floor(log n)},
/// ascending in h. Requires n >= 3.
BandwidthGrid theoretical_grid(long n);

enum class VarianceMode {
  practical,    // 1/(n h^{d+2}); every multiplicative constant moved into a, b
  theoretical,  // (2 C_F^2/(n h^{d+2})) [omega_d ||K_d||^2_2 + alpha_d(h)]
};

/// Variance term V(h) for an estimation sample of size n.
double variance_term(double h, long n, const TheoryConfig& cfg, VarianceMode mode);

struct Admissibility {
  bool admissible = false;
  bool domain_ok = false;  // false when h >= 1 (log(1/h) <= 0)
  double lhs = 0.0;        // 2 sqrt(d+4) h sqrt(log(1/h))
};

/// Bandwidth regularity condition 2 sqrt(d+4) h log(h^{-1})^{1/2} <= rho(M).
/// h >= 1 is reported inadmissible-by-domain.
Admissibility check_admissible(double h, const TheoryConfig& cfg);

/// Bias proxy B(h) = max_{h' <= h in grid} [ N(h',h) - a V(h') ]_+ where
/// N is the empirical squared norm between family rows. V is indexed like
/// the family grid. h must be a grid member.
double bias_term(const EstimatorFamily& family, double h, double a,
                 const std::vector<double>& V);

struct SelectOptions {
  VarianceMode mode = VarianceMode::practical;
  TheoryConfig theory;
  /// Admissibility violations warn by default; strict mode excludes the
  /// offending bandwidths from the argmin instead.
  bool strict_admissibility = false;
  int threads = 0;
};

struct LepskiSelection {
  double h_hat = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> grid;
  std::vector<double> B;
  std::vector<double> V;
  std::vector<double> objective;
  std::vector<size_t> tie_set;  // all indices attaining the minimum
  std::vector<std::string> warnings;
};

/// Lepski's rule: h_hat = argmin_h { B(h) + b V(h) }, 0 < a <= b, ties broken
/// toward the largest h (prefer the smoothest admissible estimator).
LepskiSelection select_bandwidth(const EstimatorFamily& family, double a,
                                 double b, const SelectOptions& options = {});

/// The argmin rule on raw tables (shared by select_bandwidth, the
/// calibration path and brute-force property checks): minimizes
/// B[k] + b*V[k] over non-excluded indices, ties toward the largest index.
size_t select_index_from_tables(const std::vector<double>& B,
                                const std::vector<double>& V, double b,
                                const std::vector<bool>* excluded = nullptr);

/// Pairwise empirical squared norms between family rows (symmetric, zero
/// diagonal). Computed once and reused across many (a, b) evaluations.
/// Parallel over rows; the per-pair sums are sequential, so the result does
/// not depend on the thread count.
Eigen::MatrixXd pairwise_sq_norms(const EstimatorFamily& family, int threads = 1);

/// B-table for every grid bandwidth given precomputed pairwise norms.
std::vector<double> bias_table(const Eigen::MatrixXd& norms,
                               const std::vector<double>& V, double a);

/// V-table over the family grid.
std::vector<double> variance_table(const EstimatorFamily& family,
                                   const SelectOptions& options);

nlohmann::json to_json(const LepskiSelection& selection);

}  // namespace lapsel
