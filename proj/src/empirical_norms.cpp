#include "lapsel/empirical_norms.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "lapsel/csv.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/rng.hpp"

namespace lapsel {

double empirical_sq_norm_diff(const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b) {
  if (a.size() == 0) throw std::invalid_argument("empty vectors");
  if (a.size() != b.size())
    throw std::invalid_argument("length mismatch in empirical norm");
  double sum = 0.0, c = 0.0;
  for (long i = 0; i < a.size(); ++i) {
    const double diff = a(i) - b(i);
    const double y = diff * diff - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(a.size());
}

RiskTable monte_carlo_risk(const RiskParams& params) {
  if (params.grid.empty()) throw std::invalid_argument("empty bandwidth grid");
  if (params.n1 < 1 || params.n2 < 1 || params.replicates < 1)
    throw std::invalid_argument("n1, n2 and replicates must be >= 1");

  const size_t nh = params.grid.size();
  // per-replicate risks, [replicate][bandwidth]
  std::vector<std::vector<double>> risks(
      static_cast<size_t>(params.replicates), std::vector<double>(nh, 0.0));

  for (int r = 0; r < params.replicates; ++r) {
    const std::uint64_t est_seed =
        substream_seed(params.seed, 2 * static_cast<std::uint64_t>(r));
    const std::uint64_t val_seed =
        substream_seed(params.seed, 2 * static_cast<std::uint64_t>(r) + 1);
    const PointCloud estimation = sample_uniform_sphere(params.n1, est_seed);
    const PointCloud validation =
        sample_uniform_sphere_nonpolar(params.n2, val_seed);
    const Eigen::VectorXd f_est = eval_on_cloud(estimation, params.bench.f);
    const Eigen::VectorXd f_val = eval_on_cloud(validation, params.bench.f);
    const EstimatorFamily family = build_family(
        estimation, f_est, validation, f_val, params.grid, params.apply);
    const Eigen::VectorXd target =
        target_operator(validation, params.convention, params.bench.polar);
    for (size_t k = 0; k < nh; ++k)
      risks[static_cast<size_t>(r)][k] = empirical_sq_norm_diff(
          family.values.row(static_cast<long>(k)).transpose(), target);
  }

  RiskTable table;
  table.rows.resize(nh);
  for (size_t k = 0; k < nh; ++k) {
    double mean = 0.0;
    for (int r = 0; r < params.replicates; ++r)
      mean += risks[static_cast<size_t>(r)][k];
    mean /= params.replicates;
    double var = 0.0;
    for (int r = 0; r < params.replicates; ++r) {
      const double dev = risks[static_cast<size_t>(r)][k] - mean;
      var += dev * dev;
    }
    const double mc_std =
        params.replicates > 1
            ? std::sqrt(var / (static_cast<double>(params.replicates) *
                               (params.replicates - 1)))
            : 0.0;
    table.rows[k] = {params.grid[k], mean,   mc_std,
                     params.n1,      params.n2, params.replicates};
  }
  return table;
}

double oracle_bandwidth(const RiskTable& table) {
  if (table.rows.empty()) throw std::invalid_argument("empty risk table");
  size_t best = 0;
  for (size_t k = 1; k < table.rows.size(); ++k)
    if (table.rows[k].risk <= table.rows[best].risk) best = k;
  return table.rows[best].h;
}

double risk_at(const RiskTable& table, double h) {
  for (const RiskRow& row : table.rows)
    if (row.h == h) return row.risk;
  throw std::invalid_argument("bandwidth not present in risk table");
}

void write_risk_csv(std::ostream& os, const RiskTable& table) {
  os << "h,risk,mc_std,n1,n2,replicates\n";
  for (const RiskRow& row : table.rows)
    os << format_g17(row.h) << ',' << format_g17(row.risk) << ','
       << format_g17(row.mc_std) << ',' << row.n1 << ',' << row.n2 << ','
       << row.replicates << '\n';
}

}  // namespace lapsel
