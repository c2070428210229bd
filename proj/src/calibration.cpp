#include "lapsel/calibration.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lapsel/csv.hpp"
#include "lapsel/errors.hpp"

namespace lapsel {

std::vector<double> default_a_grid() {
  // 40 geometric points, 100 down to 0.1; Fig-3-scale a values live in the
  // single digits and geometric spacing keeps log-jump detection scale-free.
  const int n = 40;
  std::vector<double> a(n);
  const double ratio = std::log(0.1 / 100.0);
  for (int i = 0; i < n; ++i)
    a[static_cast<size_t>(i)] = 100.0 * std::exp(ratio * i / (n - 1));
  return a;
}

SelectionPath selection_path(const EstimatorFamily& family,
                             const std::vector<double>& a_grid,
                             const SelectOptions& options) {
  if (a_grid.empty()) throw std::invalid_argument("empty a grid");
  for (size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0))
      throw std::invalid_argument("a grid must be positive");
    if (i > 0 && !(a_grid[i] < a_grid[i - 1]))
      throw std::invalid_argument("a grid must be strictly descending");
  }
  // One pass over the pairwise norms serves every (a, b) pair.
  const Eigen::MatrixXd norms = pairwise_sq_norms(family, options.threads);
  const std::vector<double> V = variance_table(family, options);

  std::vector<bool> excluded(family.grid.size(), false);
  if (options.strict_admissibility)
    for (size_t k = 0; k < family.grid.size(); ++k)
      excluded[k] = !check_admissible(family.grid[k], options.theory).admissible;
  const std::vector<bool>* filter =
      options.strict_admissibility ? &excluded : nullptr;

  SelectionPath path;
  path.a_grid = a_grid;
  path.h_of_a.resize(a_grid.size());
  path.h_of_a_2a.resize(a_grid.size());
  for (size_t i = 0; i < a_grid.size(); ++i) {
    const double a = a_grid[i];
    const std::vector<double> B = bias_table(norms, V, a);
    path.h_of_a[i] = family.grid[select_index_from_tables(B, V, a, filter)];
    path.h_of_a_2a[i] =
        family.grid[select_index_from_tables(B, V, 2.0 * a, filter)];
  }
  return path;
}

double detect_jump(const SelectionPath& path) {
  if (path.a_grid.size() < 2)
    throw std::invalid_argument("jump detection requires a path of length >= 2");
  double best_drop = 0.0;
  size_t best = path.a_grid.size();
  for (size_t i = 0; i + 1 < path.a_grid.size(); ++i) {
    const double drop = std::log(path.h_of_a[i]) - std::log(path.h_of_a[i + 1]);
    if (drop > best_drop) {  // strict: ties keep the earlier (larger) a
      best_drop = drop;
      best = i;
    }
  }
  if (best == path.a_grid.size())
    throw no_jump_error("selection path has no bandwidth drop; widen the a grid");
  return path.a_grid[best];
}

CalibrationResult calibrate_and_select(const EstimatorFamily& family,
                                       const std::vector<double>& a_grid,
                                       const SelectOptions& options,
                                       std::optional<double> a0_override) {
  CalibrationResult result;
  result.path = selection_path(family, a_grid, options);
  result.a0 = a0_override ? *a0_override : detect_jump(result.path);
  result.selection = select_bandwidth(family, result.a0, 2.0 * result.a0, options);
  return result;
}

void write_path_csv(std::ostream& os, const SelectionPath& path) {
  os << "a,h_aa,h_a2a\n";
  for (size_t i = 0; i < path.a_grid.size(); ++i)
    os << format_g17(path.a_grid[i]) << ',' << format_g17(path.h_of_a[i]) << ','
       << format_g17(path.h_of_a_2a[i]) << '\n';
}

}  // namespace lapsel
