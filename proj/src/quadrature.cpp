#include "lapsel/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lapsel/errors.hpp"

namespace lapsel {

namespace {

// 40-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre40 {
  std::array<double, 40> node{};
  std::array<double, 40> weight{};

  GaussLegendre40() {
    constexpr int n = 40;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[static_cast<size_t>(i)] = x;
      weight[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
  }
};

const GaussLegendre40& gl40() {
  static const GaussLegendre40 table;
  return table;
}

}  // namespace

double integrate_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int panels) {
  const auto& rule = gl40();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double panel = 0.0;
    for (size_t i = 0; i < rule.node.size(); ++i)
      panel += rule.weight[i] * f(mid + 0.5 * width * rule.node[i]);
    total += 0.5 * width * panel;
  }
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 12, 1e-12);
}

namespace {

double dual_rule(const std::function<double(double)>& f, double a, double b,
                 const char* what) {
  const double adaptive = integrate_adaptive(f, a, b);
  const double fixed = integrate_gauss_legendre(f, a, b);
  const double scale = std::max({std::abs(adaptive), std::abs(fixed), 1e-300});
  if (std::abs(adaptive - fixed) > 1e-8 * scale)
    throw numeric_error(std::string(what) +
                        ": quadrature rules disagree beyond 1e-8 relative");
  if (!std::isfinite(adaptive))
    throw numeric_error(std::string(what) + ": non-finite integral");
  return adaptive;
}

}  // namespace

double sphere_surface(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

double radial_integral(const std::function<double(double)>& g, int d) {
  // All integrands here decay at least like exp(-r^2/8); past r = 60 even
  // r^20 exp(-r^2/8) underflows relative to any O(1) integral value.
  const double upper = 60.0;
  const auto integrand = [&g, d](double r) {
    return g(r) * std::pow(r, d - 1);
  };
  return sphere_surface(d) * dual_rule(integrand, 0.0, upper, "radial_integral");
}

double tail_integral(const std::function<double(double)>& f, double a) {
  return dual_rule(f, a, a + 80.0, "tail_integral");
}

}  // namespace lapsel
