#include "lapsel/lepski.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lapsel/csv.hpp"
#include "lapsel/parallel.hpp"

namespace lapsel {

BandwidthGrid theoretical_grid(long n) {
  if (n < 3) throw std::invalid_argument("theoretical grid requires n >= 3");
  const double log_n = std::log(static_cast<double>(n));
  const long k_lo = static_cast<long>(std::ceil(std::log(log_n)));
  const long k_hi = static_cast<long>(std::floor(log_n));
  std::vector<double> h;
  for (long k = k_hi; k >= k_lo; --k)  // descending k = ascending h
    h.push_back(std::exp(-static_cast<double>(k)));
  return BandwidthGrid(std::move(h));
}

double variance_term(double h, long n, const TheoryConfig& cfg,
                     VarianceMode mode) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("variance term requires h > 0");
  if (n < 1) throw std::invalid_argument("variance term requires n >= 1");
  const double base =
      1.0 / (static_cast<double>(n) * std::pow(h, cfg.d + 2));
  if (mode == VarianceMode::practical) return base;
  const KernelNorms norms = kernel_norms(cfg.d);
  return 2.0 * cfg.C_F * cfg.C_F * base *
         (omega_d(cfg.d) * norms.l2_sq + compute_alpha_d(h, cfg));
}

Admissibility check_admissible(double h, const TheoryConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("admissibility requires h > 0");
  Admissibility result;
  if (h >= 1.0) {
    result.domain_ok = false;  // log(1/h) <= 0: outside the condition's domain
    result.admissible = false;
    result.lhs = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.domain_ok = true;
  result.lhs = 2.0 * std::sqrt(cfg.d + 4.0) * h * std::sqrt(std::log(1.0 / h));
  result.admissible = result.lhs <= cfg.rho;
  return result;
}

Eigen::MatrixXd pairwise_sq_norms(const EstimatorFamily& family, int threads) {
  const long nh = static_cast<long>(family.grid.size());
  Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(nh, nh);
  parallel_for(nh, threads, [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k)
      for (long l = k + 1; l < nh; ++l)
        norms(k, l) = empirical_sq_norm_diff(family.values.row(k).transpose(),
                                             family.values.row(l).transpose());
  });
  for (long k = 0; k < nh; ++k)
    for (long l = k + 1; l < nh; ++l) norms(l, k) = norms(k, l);
  return norms;
}

std::vector<double> bias_table(const Eigen::MatrixXd& norms,
                               const std::vector<double>& V, double a) {
  const size_t nh = V.size();
  std::vector<double> B(nh, 0.0);
  for (size_t k = 0; k < nh; ++k) {
    double best = 0.0;  // the h' = h term is [0 - aV]_+ = 0
    for (size_t l = 0; l <= k; ++l)
      best = std::max(best, norms(static_cast<long>(l), static_cast<long>(k)) -
                                a * V[l]);
    B[k] = best;
  }
  return B;
}

std::vector<double> variance_table(const EstimatorFamily& family,
                                   const SelectOptions& options) {
  std::vector<double> V(family.grid.size());
  for (size_t k = 0; k < family.grid.size(); ++k)
    V[k] = variance_term(family.grid[k], family.n1, options.theory, options.mode);
  return V;
}

double bias_term(const EstimatorFamily& family, double h, double a,
                 const std::vector<double>& V) {
  if (!(a > 0.0)) throw std::invalid_argument("bias term requires a > 0");
  if (V.size() != family.grid.size())
    throw std::invalid_argument("V table misaligned with grid");
  const size_t k = family.grid.index_of(h);
  const Eigen::MatrixXd norms = pairwise_sq_norms(family);
  return bias_table(norms, V, a)[k];
}

size_t select_index_from_tables(const std::vector<double>& B,
                                const std::vector<double>& V, double b,
                                const std::vector<bool>* excluded) {
  if (B.empty() || B.size() != V.size())
    throw std::invalid_argument("selection tables empty or misaligned");
  size_t best = B.size();
  double best_obj = 0.0;
  for (size_t k = 0; k < B.size(); ++k) {
    if (excluded && (*excluded)[k]) continue;
    const double obj = B[k] + b * V[k];
    if (best == B.size() || obj <= best_obj) {  // ties -> largest h
      best = k;
      best_obj = obj;
    }
  }
  if (best == B.size())
    throw std::invalid_argument("no admissible bandwidth to select from");
  return best;
}

LepskiSelection select_bandwidth(const EstimatorFamily& family, double a,
                                 double b, const SelectOptions& options) {
  if (!(a > 0.0) || !(a <= b))
    throw std::invalid_argument("selection requires 0 < a <= b");
  if (family.grid.empty())
    throw std::invalid_argument("selection requires a nonempty family");

  LepskiSelection sel;
  sel.a = a;
  sel.b = b;
  sel.grid = family.grid.values();
  sel.V = variance_table(family, options);
  sel.B = bias_table(pairwise_sq_norms(family, options.threads), sel.V, a);

  std::vector<bool> excluded(family.grid.size(), false);
  for (size_t k = 0; k < family.grid.size(); ++k) {
    const Admissibility adm = check_admissible(family.grid[k], options.theory);
    if (adm.admissible) continue;
    if (!adm.domain_ok)
      sel.warnings.push_back("h=" + format_g17(family.grid[k]) +
                             " inadmissible by domain (h >= 1)");
    else
      sel.warnings.push_back(
          "h=" + format_g17(family.grid[k]) + " violates bandwidth condition (" +
          format_g17(adm.lhs) + " > rho=" + format_g17(options.theory.rho) + ")");
    if (options.strict_admissibility) excluded[k] = true;
  }

  sel.objective.resize(sel.B.size());
  for (size_t k = 0; k < sel.B.size(); ++k)
    sel.objective[k] = sel.B[k] + b * sel.V[k];

  const size_t best = select_index_from_tables(
      sel.B, sel.V, b, options.strict_admissibility ? &excluded : nullptr);
  sel.h_hat = family.grid[best];
  for (size_t k = 0; k < sel.objective.size(); ++k)
    if (!(options.strict_admissibility && excluded[k]) &&
        sel.objective[k] == sel.objective[best])
      sel.tie_set.push_back(k);
  return sel;
}

nlohmann::json to_json(const LepskiSelection& selection) {
  nlohmann::json j;
  j["h_hat"] = selection.h_hat;
  j["a"] = selection.a;
  j["b"] = selection.b;
  j["grid"] = selection.grid;
  j["B"] = selection.B;
  j["V"] = selection.V;
  j["objective"] = selection.objective;
  j["tie_set"] = selection.tie_set;
  j["warnings"] = selection.warnings;
  return j;
}

}  // namespace lapsel
