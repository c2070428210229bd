#pragma once

// Test-side reference computations, kept independent of the library paths
// they are used to check.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracles {

// Gaussian radial moment: Int_{R^d} ||u||^q e^{-||u||^2/s} du
//   = pi^{d/2} s^{(q+d)/2} Gamma((q+d)/2) / Gamma(d/2).
inline double gaussian_moment(int d, double q, double s) {
  const double half_qd = 0.5 * (q + d);
  return std::pow(std::numbers::pi, 0.5 * d) * std::pow(s, half_qd) *
         std::exp(std::lgamma(half_qd) - std::lgamma(0.5 * d));
}

// Closed form of the D_alpha integral.
inline double D_closed(int d, double alpha, double C, double C1) {
  return std::pow(4.0 * std::numbers::pi, -d) *
         (0.5 * C * gaussian_moment(d, alpha + 2.0, 4.0) +
          C1 * gaussian_moment(d, alpha, 4.0));
}

inline double D_tilde_closed(int d, double alpha, double C, double C1) {
  return std::pow(4.0 * std::numbers::pi, -0.5 * d) *
         (0.25 * C * gaussian_moment(d, alpha + 2.0, 8.0) +
          C1 * gaussian_moment(d, alpha, 8.0));
}

// I_q(x) = Int_x^inf t^{q+1} e^{-t^2/4} dt by integration by parts:
//   I_q = 2 x^q e^{-x^2/4} + 2 q I_{q-2},
//   I_0 = 2 e^{-x^2/4},  I_{-1} = sqrt(pi) erfc(x/2).
inline double tail_moment(int q, double x) {
  if (q == -1) return std::sqrt(std::numbers::pi) * std::erfc(0.5 * x);
  if (q == 0) return 2.0 * std::exp(-0.25 * x * x);
  return 2.0 * std::pow(x, q) * std::exp(-0.25 * x * x) +
         2.0 * q * tail_moment(q - 2, x);
}

inline double F_closed(int q, double x) {
  return tail_moment(q, x) / (std::pow(x, q) * std::exp(-0.25 * x * x));
}

// Richardson-extrapolated 5-point stencils (independent of the library's
// finite-difference fallback: different steps and an extra extrapolation
// level).
inline double fd_second(const std::function<double(double)>& f, double x,
                        double h0 = 2e-3) {
  auto d2 = [&](double h) {
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2 * h)) /
           (12.0 * h * h);
  };
  return (16.0 * d2(0.5 * h0) - d2(h0)) / 15.0;
}

inline double fd_first(const std::function<double(double)>& f, double x,
                       double h0 = 2e-3) {
  auto d1 = [&](double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
           (12.0 * h);
  };
  return (16.0 * d1(0.5 * h0) - d1(h0)) / 15.0;
}

// Spherical Laplacian of a plain polar function by numeric differentiation.
inline double sphere_laplacian_fd(
    const std::function<double(double, double)>& u, double theta, double phi) {
  const double u_tt = fd_second([&](double t) { return u(t, phi); }, theta);
  const double u_p = fd_first([&](double p) { return u(theta, p); }, phi);
  const double u_pp = fd_second([&](double p) { return u(theta, p); }, phi);
  const double sp = std::sin(phi);
  return u_tt / (sp * sp) + u_pp + std::cos(phi) / sp * u_p;
}

}  // namespace oracles
