#pragma once

#include <functional>

namespace lapsel {

/// Fixed high-order rule: composite 40-point Gauss-Legendre over `panels`
/// equal subintervals of [a, b].
double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int panels = 24);

/// Adaptive Gauss-Kronrod (61-point, Boost.Math) on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b);

/// Int_{R^d} g(||u||) du reduced to S_{d-1} Int_0^inf g(r) r^{d-1} dr.
/// Evaluated with both rules above; throws numeric_error if they disagree
/// beyond 1e-8 relative. Integrands must decay at least like exp(-r^2/8)
/// (the domain is truncated where the Gaussian tail underflows).
double radial_integral(const std::function<double(double)>& g, int d);

/// Int_a^inf f with the same dual-rule cross-check, truncated at a + 80.
double tail_integral(const std::function<double(double)>& f, double a);

/// Surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double sphere_surface(int d);

}  // namespace lapsel
