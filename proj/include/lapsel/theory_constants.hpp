#pragma once

#include <numbers>
#include <vector>

#include "lapsel/bandwidth.hpp"

#include "json.hpp"

namespace lapsel {

/// User-supplied geometric and density constants. None of these are
/// estimable from data here; defaults describe the uniform unit-sphere bench
/// (flat-space limit C = C1 = 0, mu(S^2) = 4*pi, p = 1/(4*pi)).
struct TheoryConfig {
  int d = 2;  // intrinsic dimension
  int m = 3;  // ambient dimension
  double C = 0.0;
  double C1 = 0.0;
  double rho = 1.0;  // geometric scale from reach / injectivity radius
  double mu = 4.0 * std::numbers::pi;
  double p_inf = 1.0 / (4.0 * std::numbers::pi);  // ||p||_inf
  double p1_inf = 0.0;                            // ||p'||_inf
  double p2_inf = 0.0;                            // ||p''||_inf
  double C_F = 1.0;  // smoothness bound on f and its derivatives

  void validate() const;
};

/// omega_d = 3 * 2^{d/2 - 1}.
double omega_d(int d);

struct KernelNorms {
  double l1 = 0.0;     // ||K_d||_{1,d}
  double l2_sq = 0.0;  // ||K_d||^2_{2,d}
};

/// L^1 and squared L^2 norms of the d-dimensional Gaussian kernel, by radial
/// quadrature (dual-rule checked). ||K_d||_1 = 1 for every d by construction.
KernelNorms kernel_norms(int d);

/// D_alpha = (4*pi)^{-d} Int_{R^d} (C ||u||^{a+2}/2 + C1 ||u||^a) e^{-||u||^2/4} du
double compute_D(double alpha, const TheoryConfig& cfg);

/// Same with (4*pi)^{-d/2}, C/4 and e^{-||u||^2/8}.
double compute_D_tilde(double alpha, const TheoryConfig& cfg);

/// alpha_d(h) = h^2 (D_4 + (3/2) omega_d ||K_d||^2_2 + 2 mu/(4*pi)^d) + h^4 D_6/4
double compute_alpha_d(double h, const TheoryConfig& cfg);

/// beta_d(h) = h (omega_d ||K_d||_1 + 2 mu/(4*pi)^{d/2}) + h^2 Dt_3 + h^3 Dt_4/2
double compute_beta_d(double h, const TheoryConfig& cfg);

/// gamma_d(h) = (1/(h^d ||p||_inf)) (omega_d ||K_d||^2_2 + alpha_d(h))
///                                 / (omega_d ||K_d||_1 + beta_d(h))^2
double compute_gamma_d(double h, const TheoryConfig& cfg);

/// delta(h) = sum_{h' <= h} max{ exp(-min(eps^2,eps) sqrt(n)/24),
///                               exp(-(eps^2/3) gamma_d(h')) }
/// with eps = sqrt(a)/2 - 1. Requires a > 4 (else eps <= 0: out of theorem
/// range, reported via std::domain_error rather than clamped).
double compute_delta(double h, const BandwidthGrid& grid, double a, long n,
                     const TheoryConfig& cfg);

/// Same sum for an explicit eps > 0. The two concentration bounds behind the
/// oracle inequality use different epsilons (sqrt(a)/2 - 1 and sqrt(a) - 1);
/// exposing eps lets diagnostics probe either.
double compute_delta_eps(double h, const BandwidthGrid& grid, double eps,
                         long n, const TheoryConfig& cfg);

/// 1 - 2 sum_{h in grid} delta(h); may be negative for coarse grids.
double success_probability(const BandwidthGrid& grid, double a, long n,
                           const TheoryConfig& cfg);

/// tau_d = (4*pi)^{-d/2} Int e^{-||u||^2/8} du, by quadrature
/// (closed form 2^{d/2}).
double compute_tau(int d);

/// F_q(x) = Int_x^inf t^{q+1} e^{-t^2/4} dt / (x^q e^{-x^2/4}), quadrature
/// with tail truncation below 1e-10 relative.
double compute_F(int q, double x);

/// kappa_{d+sigma} = 2 F_{d+sigma}(sqrt(2(d+sigma))) / Gamma((d+sigma+1)/2).
double compute_kappa(int d, int sigma);

struct ConstantsRequest {
  TheoryConfig cfg;
  std::vector<double> D_alphas = {4.0, 6.0};
  std::vector<double> D_tilde_alphas = {3.0, 4.0};
  std::vector<int> kappa_sigmas = {-1, 0};
  std::vector<double> h_values;  // where to tabulate alpha/beta/gamma/delta
  double a = 0.0;                // Lepski a for delta; <= 4 reports out-of-range
  long n = 0;                    // sample size for delta
};

/// Everything evaluated and keyed by symbol name, ready for serialization.
nlohmann::json constants_report(const ConstantsRequest& request);

}  // namespace lapsel
