#pragma once

#include <iosfwd>

#include "lapsel/bandwidth.hpp"
#include "lapsel/point_cloud.hpp"

namespace lapsel {

struct ApplyOptions {
  /// 0 disables truncation (default; every estimation point contributes).
  /// A positive value r skips pairs with distance > r * h; r = 10 keeps the
  /// result within Gaussian-tail e^{-25} of the exact sum.
  double cutoff_factor = 0.0;
  /// Worker threads over queries; 0 = all hardware threads. Results are
  /// identical for every thread count: each query is one sequential
  /// compensated sum in estimation-point order.
  int threads = 0;
};

/// Unnormalized graph Laplacian with Gaussian kernel,
///   (L_h f)(y) = (1/(n h^{d+2})) sum_i K((y - X_i)/h) [f(X_i) - f(y)],
/// evaluated at each query point. f_query must be supplied: query points
/// with unknown function values are rejected, not imputed.
Eigen::VectorXd graph_laplacian_apply(const PointCloud& estimation,
                                      const Eigen::VectorXd& f_estimation,
                                      const PointCloud& queries,
                                      const Eigen::VectorXd& f_query, double h,
                                      const ApplyOptions& options = {});

/// One graph-Laplacian estimator per grid bandwidth, all evaluated on the
/// same validation sample. Row k of values is the h_k estimator.
struct EstimatorFamily {
  BandwidthGrid grid;
  RowMat values;  // |grid| x n2
  long n1 = 0;    // estimation-sample size
  long n2 = 0;    // validation-sample size
};

/// Builds the whole family in one pass (pair distances are computed once and
/// shared across bandwidths).
EstimatorFamily build_family(const PointCloud& estimation,
                             const Eigen::VectorXd& f_estimation,
                             const PointCloud& validation,
                             const Eigen::VectorXd& f_validation,
                             const BandwidthGrid& grid,
                             const ApplyOptions& options = {});

/// CSV `h,query_index,value`, rows grouped by bandwidth.
void write_family_csv(std::ostream& os, const EstimatorFamily& family);

}  // namespace lapsel
