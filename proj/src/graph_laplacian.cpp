#include "lapsel/graph_laplacian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lapsel/csv.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/parallel.hpp"

namespace lapsel {

namespace {

// Compensated accumulator. Adding an exact zero is a no-op by construction,
// so terms known to underflow can be skipped without changing the result.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double value) {
    if (value == 0.0) return;
    const double y = value - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// exp(-x) is exactly +0.0 in double arithmetic beyond this point (the
// subnormal range ends near e^-744.4).
constexpr double kExpUnderflow = 746.0;

void check_inputs(const PointCloud& estimation, const Eigen::VectorXd& f_est,
                  const PointCloud& queries, const Eigen::VectorXd& f_query) {
  if (estimation.n() == 0)
    throw std::invalid_argument("graph Laplacian: empty estimation sample");
  if (f_est.size() != estimation.n())
    throw std::invalid_argument("graph Laplacian: f misaligned with estimation points");
  if (f_query.size() != queries.n())
    throw std::invalid_argument(
        "graph Laplacian: query f values missing or misaligned");
  if (queries.ambient_dim() != estimation.ambient_dim())
    throw std::invalid_argument("graph Laplacian: ambient dimensions differ");
}

}  // namespace

EstimatorFamily build_family(const PointCloud& estimation,
                             const Eigen::VectorXd& f_estimation,
                             const PointCloud& validation,
                             const Eigen::VectorXd& f_validation,
                             const BandwidthGrid& grid,
                             const ApplyOptions& options) {
  check_inputs(estimation, f_estimation, validation, f_validation);
  if (grid.empty())
    throw std::invalid_argument("graph Laplacian: empty bandwidth grid");

  const long n1 = estimation.n();
  const long n2 = validation.n();
  const int m = estimation.ambient_dim();
  const int d = estimation.intrinsic_dim;
  const size_t nh = grid.size();
  const double norm_const = std::pow(4.0 * std::numbers::pi, -0.5 * d);

  std::vector<double> inv_4h2(nh), scale(nh), cutoff_sq(nh);
  for (size_t k = 0; k < nh; ++k) {
    const double h = grid[k];
    inv_4h2[k] = 1.0 / (4.0 * h * h);
    scale[k] = norm_const / (static_cast<double>(n1) * std::pow(h, d + 2));
    cutoff_sq[k] = options.cutoff_factor > 0.0
                       ? options.cutoff_factor * options.cutoff_factor * h * h
                       : std::numeric_limits<double>::infinity();
  }

  EstimatorFamily family;
  family.grid = grid;
  family.n1 = n1;
  family.n2 = n2;
  family.values.resize(static_cast<long>(nh), n2);

  const double* est = estimation.points.data();
  const double* qry = validation.points.data();

  parallel_for(n2, options.threads, [&](long lo, long hi) {
    std::vector<double> sq_dist(static_cast<size_t>(n1));
    std::vector<double> f_diff(static_cast<size_t>(n1));
    for (long j = lo; j < hi; ++j) {
      const double* q = qry + j * m;
      const double fq = f_validation(j);
      for (long i = 0; i < n1; ++i) {
        const double* x = est + i * m;
        double sq = 0.0;
        for (int c = 0; c < m; ++c) {
          const double diff = q[c] - x[c];
          sq += diff * diff;
        }
        sq_dist[static_cast<size_t>(i)] = sq;
        f_diff[static_cast<size_t>(i)] = f_estimation(i) - fq;
      }
      for (size_t k = 0; k < nh; ++k) {
        KahanSum acc;
        const double w = inv_4h2[k];
        const double rc2 = cutoff_sq[k];
        for (long i = 0; i < n1; ++i) {
          const double sq = sq_dist[static_cast<size_t>(i)];
          if (sq > rc2) continue;
          const double expo = sq * w;
          if (expo > kExpUnderflow) continue;
          acc.add(std::exp(-expo) * f_diff[static_cast<size_t>(i)]);
        }
        family.values(static_cast<long>(k), j) = scale[k] * acc.sum;
      }
    }
  });

  if (!family.values.allFinite())
    throw numeric_error("graph Laplacian produced non-finite values");
  return family;
}

Eigen::VectorXd graph_laplacian_apply(const PointCloud& estimation,
                                      const Eigen::VectorXd& f_estimation,
                                      const PointCloud& queries,
                                      const Eigen::VectorXd& f_query, double h,
                                      const ApplyOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bandwidth must be positive and finite");
  const EstimatorFamily one = build_family(estimation, f_estimation, queries,
                                           f_query, BandwidthGrid({h}), options);
  return one.values.row(0).transpose();
}

void write_family_csv(std::ostream& os, const EstimatorFamily& family) {
  os << "h,query_index,value\n";
  for (size_t k = 0; k < family.grid.size(); ++k)
    for (long j = 0; j < family.n2; ++j)
      os << format_g17(family.grid[k]) << ',' << j << ','
         << format_g17(family.values(static_cast<long>(k), j)) << '\n';
}

}  // namespace lapsel
