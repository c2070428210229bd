#include "lapsel/theory_constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lapsel/csv.hpp"
#include "lapsel/errors.hpp"
#include "lapsel/quadrature.hpp"

namespace lapsel {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw numeric_error(std::string(name) + " is non-finite or negative");
}

}  // namespace

void TheoryConfig::validate() const {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (m < d) throw std::invalid_argument("m must be >= d");
  if (C < 0.0 || C1 < 0.0) throw std::invalid_argument("C, C1 must be >= 0");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  if (!(p_inf > 0.0)) throw std::invalid_argument("p_inf must be > 0");
  if (p1_inf < 0.0 || p2_inf < 0.0)
    throw std::invalid_argument("derivative sup-norms must be >= 0");
  if (!(C_F > 0.0)) throw std::invalid_argument("C_F must be > 0");
}

double omega_d(int d) { return 3.0 * std::pow(2.0, 0.5 * d - 1.0); }

KernelNorms kernel_norms(int d) {
  if (d < 1) throw std::invalid_argument("kernel_norms: d must be >= 1");
  const double norm_const = std::pow(4.0 * kPi, -0.5 * d);
  KernelNorms norms;
  norms.l1 = radial_integral(
      [norm_const](double r) { return norm_const * std::exp(-0.25 * r * r); }, d);
  norms.l2_sq = radial_integral(
      [norm_const](double r) {
        const double k = norm_const * std::exp(-0.25 * r * r);
        return k * k;
      },
      d);
  return norms;
}

double compute_D(double alpha, const TheoryConfig& cfg) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const double C = cfg.C, C1 = cfg.C1;
  const double outer = std::pow(4.0 * kPi, -static_cast<double>(cfg.d));
  if (C == 0.0 && C1 == 0.0) return 0.0;
  return outer * radial_integral(
                     [=](double r) {
                       return (0.5 * C * std::pow(r, alpha + 2.0) +
                               C1 * std::pow(r, alpha)) *
                              std::exp(-0.25 * r * r);
                     },
                     cfg.d);
}

double compute_D_tilde(double alpha, const TheoryConfig& cfg) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const double C = cfg.C, C1 = cfg.C1;
  const double outer = std::pow(4.0 * kPi, -0.5 * cfg.d);
  if (C == 0.0 && C1 == 0.0) return 0.0;
  return outer * radial_integral(
                     [=](double r) {
                       return (0.25 * C * std::pow(r, alpha + 2.0) +
                               C1 * std::pow(r, alpha)) *
                              std::exp(-0.125 * r * r);
                     },
                     cfg.d);
}

double compute_alpha_d(double h, const TheoryConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
  const KernelNorms norms = kernel_norms(cfg.d);
  const double d4 = compute_D(4.0, cfg);
  const double d6 = compute_D(6.0, cfg);
  const double quadratic = d4 + 1.5 * omega_d(cfg.d) * norms.l2_sq +
                           2.0 * cfg.mu * std::pow(4.0 * kPi, -cfg.d);
  return h * h * quadratic + 0.25 * h * h * h * h * d6;
}

double compute_beta_d(double h, const TheoryConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
  const KernelNorms norms = kernel_norms(cfg.d);
  const double linear = omega_d(cfg.d) * norms.l1 +
                        2.0 * cfg.mu * std::pow(4.0 * kPi, -0.5 * cfg.d);
  return h * linear + h * h * compute_D_tilde(3.0, cfg) +
         0.5 * h * h * h * compute_D_tilde(4.0, cfg);
}

double compute_gamma_d(double h, const TheoryConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
  if (!(cfg.p_inf > 0.0)) throw std::invalid_argument("p_inf must be > 0");
  const KernelNorms norms = kernel_norms(cfg.d);
  const double numer = omega_d(cfg.d) * norms.l2_sq + compute_alpha_d(h, cfg);
  const double denom = omega_d(cfg.d) * norms.l1 + compute_beta_d(h, cfg);
  return numer / (denom * denom) / (std::pow(h, cfg.d) * cfg.p_inf);
}

double compute_delta_eps(double h, const BandwidthGrid& grid, double eps,
                         long n, const TheoryConfig& cfg) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(eps > 0.0)) throw std::domain_error("epsilon must be > 0");
  const double exponent_n =
      std::min(eps * eps, eps) * std::sqrt(static_cast<double>(n)) / 24.0;
  double sum = 0.0;
  for (double hp : grid) {
    if (hp > h) break;
    const double gamma = compute_gamma_d(hp, cfg);
    sum += std::max(std::exp(-exponent_n),
                    std::exp(-(eps * eps / 3.0) * gamma));
  }
  return sum;
}

double compute_delta(double h, const BandwidthGrid& grid, double a, long n,
                     const TheoryConfig& cfg) {
  const double eps = 0.5 * std::sqrt(a) - 1.0;
  if (!(eps > 0.0))
    throw std::domain_error(
        "a <= 4: epsilon = sqrt(a)/2 - 1 out of theorem range");
  return compute_delta_eps(h, grid, eps, n, cfg);
}

double success_probability(const BandwidthGrid& grid, double a, long n,
                           const TheoryConfig& cfg) {
  double total = 0.0;
  for (double h : grid) total += compute_delta(h, grid, a, n, cfg);
  return 1.0 - 2.0 * total;
}

double compute_tau(int d) {
  const double outer = std::pow(4.0 * kPi, -0.5 * d);
  return outer * radial_integral(
                     [](double r) { return std::exp(-0.125 * r * r); }, d);
}

double compute_F(int q, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("F requires x > 0");
  const double numer = tail_integral(
      [q](double t) { return std::pow(t, q + 1) * std::exp(-0.25 * t * t); },
      x);
  const double denom = std::pow(x, q) * std::exp(-0.25 * x * x);
  return numer / denom;
}

double compute_kappa(int d, int sigma) {
  const int q = d + sigma;
  if (q < 0) throw std::invalid_argument("kappa requires d + sigma >= 0");
  if (q == 0) {
    // The reference point sqrt(2q) degenerates at q = 0 (d=1, sigma=-1),
    // but F_0(x) = int_x^inf t e^{-t^2/4} dt / e^{-x^2/4} = 2 at every x,
    // so the limit is exact.
    return 2.0 * 2.0 / std::tgamma(0.5);
  }
  const double x = std::sqrt(2.0 * q);
  return 2.0 * compute_F(q, x) / std::tgamma(0.5 * (q + 1.0));
}

nlohmann::json constants_report(const ConstantsRequest& request) {
  const TheoryConfig& cfg = request.cfg;
  cfg.validate();

  nlohmann::json out;
  out["d"] = cfg.d;
  out["omega_d"] = omega_d(cfg.d);
  const KernelNorms norms = kernel_norms(cfg.d);
  require_finite_nonneg(norms.l1, "K1_norm");
  require_finite_nonneg(norms.l2_sq, "K2_norm_sq");
  out["K1_norm"] = norms.l1;
  out["K2_norm_sq"] = norms.l2_sq;
  out["tau_d"] = compute_tau(cfg.d);

  nlohmann::json d_alpha;
  for (double alpha : request.D_alphas) {
    const double v = compute_D(alpha, cfg);
    require_finite_nonneg(v, "D_alpha");
    d_alpha[format_g17(alpha)] = v;
  }
  out["D_alpha"] = d_alpha;

  nlohmann::json dt_alpha;
  for (double alpha : request.D_tilde_alphas) {
    const double v = compute_D_tilde(alpha, cfg);
    require_finite_nonneg(v, "D_tilde_alpha");
    dt_alpha[format_g17(alpha)] = v;
  }
  out["D_tilde_alpha"] = dt_alpha;

  nlohmann::json kappas;
  for (int sigma : request.kappa_sigmas) {
    const double v = compute_kappa(cfg.d, sigma);
    require_finite_nonneg(v, "kappa");
    kappas[std::to_string(cfg.d + sigma)] = v;
  }
  out["kappa"] = kappas;

  if (!request.h_values.empty()) {
    std::vector<double> hs = request.h_values;
    std::sort(hs.begin(), hs.end());
    BandwidthGrid grid(hs);
    nlohmann::json alpha_h, beta_h, gamma_h, delta_h;
    const bool delta_ok = request.a > 4.0 && request.n >= 1;
    for (double h : grid) {
      const std::string key = format_g17(h);
      alpha_h[key] = compute_alpha_d(h, cfg);
      beta_h[key] = compute_beta_d(h, cfg);
      gamma_h[key] = compute_gamma_d(h, cfg);
      if (delta_ok) delta_h[key] = compute_delta(h, grid, request.a, request.n, cfg);
    }
    out["alpha_d"] = alpha_h;
    out["beta_d"] = beta_h;
    out["gamma_d"] = gamma_h;
    if (delta_ok) {
      out["delta"] = delta_h;
      out["success_probability"] =
          success_probability(grid, request.a, request.n, cfg);
    } else {
      out["delta_status"] =
          "out of theorem range (requires a > 4 and n >= 1)";
    }
  }
  return out;
}

}  // namespace lapsel
