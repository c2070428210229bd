#include "lapsel/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lapsel/errors.hpp"
#include "lapsel/rng.hpp"

namespace lapsel {

namespace {

constexpr double kPi = std::numbers::pi;

// Draws one uniform point on S^2 as a normalized Gaussian triple; redraws on
// the (measure-zero) event that the triple is too short to normalize stably.
void draw_sphere_point(Rng& rng, double& x, double& y, double& z) {
  while (true) {
    const double gx = rng.normal();
    const double gy = rng.normal();
    const double gz = rng.normal();
    const double norm = std::sqrt(gx * gx + gy * gy + gz * gz);
    if (norm > 1e-150) {
      x = gx / norm;
      y = gy / norm;
      z = gz / norm;
      return;
    }
  }
}

PointCloud sample_sphere_impl(long n, std::uint64_t seed, double pole_margin) {
  if (n < 0) throw std::invalid_argument("sample size must be >= 0");
  PointCloud cloud;
  cloud.intrinsic_dim = 2;
  cloud.points.resize(n, 3);
  Rng rng(seed);
  for (long i = 0; i < n; ++i) {
    double x, y, z;
    do {
      draw_sphere_point(rng, x, y, z);
    } while (pole_margin > 0.0 && x * x + y * y < pole_margin * pole_margin);
    cloud.points(i, 0) = x;
    cloud.points(i, 1) = y;
    cloud.points(i, 2) = z;
  }
  return cloud;
}

}  // namespace

PointCloud sample_uniform_sphere(long n, std::uint64_t seed) {
  return sample_sphere_impl(n, seed, 0.0);
}

PointCloud sample_uniform_sphere_nonpolar(long n, std::uint64_t seed,
                                          double pole_margin) {
  return sample_sphere_impl(n, seed, pole_margin);
}

double test_function(double x, double y, double z) {
  return (x * x + y * y + z) * std::sin(x) * std::cos(x);
}

Eigen::VectorXd eval_test_function(const PointCloud& cloud) {
  if (cloud.ambient_dim() != 3)
    throw std::invalid_argument("test function requires ambient dimension 3");
  Eigen::VectorXd out(cloud.n());
  for (long i = 0; i < cloud.n(); ++i)
    out(i) = test_function(cloud.points(i, 0), cloud.points(i, 1),
                           cloud.points(i, 2));
  return out;
}

PolarFunction sphere_test_function_polar() {
  // u = A(phi) g(s) with A = sin^2 phi + cos phi, g(s) = sin(2s)/2,
  // s = sin phi cos theta.
  PolarFunction f;
  f.u = [](double theta, double phi) {
    const double s = std::sin(phi) * std::cos(theta);
    return (std::sin(phi) * std::sin(phi) + std::cos(phi)) * std::sin(s) *
           std::cos(s);
  };
  f.d2_theta = [](double theta, double phi) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double s = sp * ct;
    const double A = sp * sp + cp;
    // g'' s_t^2 + g' s_tt with s_t = -sp*st, s_tt = -sp*ct
    return A * (-2.0 * std::sin(2.0 * s) * sp * sp * st * st -
                std::cos(2.0 * s) * sp * ct);
  };
  f.d1_phi = [](double theta, double phi) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double ct = std::cos(theta);
    const double s = sp * ct;
    const double A_p = std::sin(2.0 * phi) - sp;
    const double A = sp * sp + cp;
    return A_p * 0.5 * std::sin(2.0 * s) + A * std::cos(2.0 * s) * cp * ct;
  };
  f.d2_phi = [](double theta, double phi) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double ct = std::cos(theta);
    const double s = sp * ct;
    const double A = sp * sp + cp;
    const double A_p = std::sin(2.0 * phi) - sp;
    const double A_pp = 2.0 * std::cos(2.0 * phi) - cp;
    const double s_p = cp * ct;
    const double s_pp = -sp * ct;
    return A_pp * 0.5 * std::sin(2.0 * s) + 2.0 * A_p * std::cos(2.0 * s) * s_p +
           A * (-2.0 * std::sin(2.0 * s) * s_p * s_p +
                std::cos(2.0 * s) * s_pp);
  };
  return f;
}

namespace {

constexpr double kFdStep = 1e-4;

double stencil_d2(const std::function<double(double, double)>& u, double theta,
                  double phi, bool along_theta, double step) {
  auto at = [&](double offset) {
    return along_theta ? u(theta + offset, phi) : u(theta, phi + offset);
  };
  return (-at(2 * step) + 16.0 * at(step) - 30.0 * at(0.0) + 16.0 * at(-step) -
          at(-2 * step)) /
         (12.0 * step * step);
}

double stencil_d1(const std::function<double(double, double)>& u, double theta,
                  double phi, double step) {
  auto at = [&](double offset) { return u(theta, phi + offset); };
  return (at(-2 * step) - 8.0 * at(-step) + 8.0 * at(step) - at(2 * step)) /
         (12.0 * step);
}

// 5-point central differences at the base step, with a step-doubling
// consistency check (both stencils are 4th order; gross disagreement means
// the function is not smooth enough for the operator).
double fd_with_check(const std::function<double(double)>& eval_at_step) {
  const double fine = eval_at_step(kFdStep);
  const double coarse = eval_at_step(2.0 * kFdStep);
  const double scale = std::max({std::abs(fine), std::abs(coarse), 1.0});
  if (std::abs(fine - coarse) > 1e-3 * scale)
    throw numeric_error(
        "finite-difference derivative failed step-doubling check");
  return fine;
}

}  // namespace

double analytic_sphere_laplacian(const PolarFunction& u, const SphericalPoint& p,
                                 double pole_margin) {
  const double sp = std::sin(p.phi);
  if (sp < pole_margin)
    throw pole_error("spherical Laplacian requested within pole margin");
  const double cp = std::cos(p.phi);

  double u_tt, u_p, u_pp;
  if (u.has_closed_forms()) {
    u_tt = u.d2_theta(p.theta, p.phi);
    u_p = u.d1_phi(p.theta, p.phi);
    u_pp = u.d2_phi(p.theta, p.phi);
  } else {
    u_tt = fd_with_check(
        [&](double s) { return stencil_d2(u.u, p.theta, p.phi, true, s); });
    u_p = fd_with_check(
        [&](double s) { return stencil_d1(u.u, p.theta, p.phi, s); });
    u_pp = fd_with_check(
        [&](double s) { return stencil_d2(u.u, p.theta, p.phi, false, s); });
  }
  // (1/sin^2) u_tt + (1/sin) d/dphi (sin * u_phi) expanded via the product
  // rule: u_pp + (cos/sin) u_p.
  return u_tt / (sp * sp) + u_pp + (cp / sp) * u_p;
}

Eigen::VectorXd target_operator(const PointCloud& cloud,
                                TargetConvention convention,
                                const PolarFunction& u, double pole_margin) {
  if (cloud.ambient_dim() != 3)
    throw std::invalid_argument("target operator requires a sphere cloud");
  const double scale =
      convention == TargetConvention::weighted ? 1.0 / (4.0 * kPi) : 1.0;
  Eigen::VectorXd out(cloud.n());
  for (long i = 0; i < cloud.n(); ++i) {
    const SphericalPoint p = to_spherical(
        cloud.points(i, 0), cloud.points(i, 1), cloud.points(i, 2));
    out(i) = scale * analytic_sphere_laplacian(u, p, pole_margin);
  }
  return out;
}

Eigen::VectorXd target_operator(const PointCloud& cloud,
                                TargetConvention convention,
                                double pole_margin) {
  return target_operator(cloud, convention, sphere_test_function_polar(),
                         pole_margin);
}

Eigen::VectorXd eval_on_cloud(
    const PointCloud& cloud,
    const std::function<double(double, double, double)>& f) {
  if (cloud.ambient_dim() != 3)
    throw std::invalid_argument("eval_on_cloud requires ambient dimension 3");
  Eigen::VectorXd out(cloud.n());
  for (long i = 0; i < cloud.n(); ++i)
    out(i) = f(cloud.points(i, 0), cloud.points(i, 1), cloud.points(i, 2));
  return out;
}

BenchFunction default_bench() {
  return BenchFunction{
      [](double x, double y, double z) { return test_function(x, y, z); },
      sphere_test_function_polar()};
}

}  // namespace lapsel
