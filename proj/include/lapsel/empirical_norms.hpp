#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lapsel/graph_laplacian.hpp"
#include "lapsel/sphere.hpp"

namespace lapsel {

/// Split-sample L^2 norm: mean of squared componentwise differences,
/// approximating ||(L_h - L_{h'}) f||^2_{2,M} / mu(M) over the validation
/// sample. Symmetric in (a, b) exactly.
double empirical_sq_norm_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct RiskRow {
  double h = 0.0;
  double risk = 0.0;    // mean over replicates of the empirical squared error
  double mc_std = 0.0;  // Monte-Carlo standard error of that mean
  long n1 = 0;
  long n2 = 0;
  int replicates = 0;
};

/// Rows sorted by h ascending.
struct RiskTable {
  std::vector<RiskRow> rows;
};

struct RiskParams {
  BandwidthGrid grid;
  long n1 = 0;
  long n2 = 0;
  int replicates = 5;
  std::uint64_t seed = 0;
  TargetConvention convention = TargetConvention::analytic;
  ApplyOptions apply;
  BenchFunction bench = default_bench();
};

/// Monte-Carlo risk curve on the sphere bench: per replicate r, a fresh
/// estimation sample (substream 2r) and validation sample (substream 2r+1)
/// are drawn, the estimator family is built, and each bandwidth's empirical
/// squared error against target_operator is recorded.
RiskTable monte_carlo_risk(const RiskParams& params);

/// Bandwidth of minimal risk; ties broken toward larger h.
double oracle_bandwidth(const RiskTable& table);

/// Risk at an exact grid bandwidth; throws if h is not in the table.
double risk_at(const RiskTable& table, double h);

/// CSV `h,risk,mc_std,n1,n2,replicates`.
void write_risk_csv(std::ostream& os, const RiskTable& table);

}  // namespace lapsel
