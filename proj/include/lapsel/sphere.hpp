#pragma once

#include <cstdint>
#include <functional>

#include "lapsel/point_cloud.hpp"

namespace lapsel {

/// Default exclusion margin around the poles for spherical-coordinate
/// operations: points with sin(phi) below this are rejected or resampled.
inline constexpr double kPoleMargin = 1e-6;

/// n i.i.d. uniform points on the unit sphere S^2 in R^3 (m=3, d=2),
/// generated as normalized standard Gaussian triples. Deterministic for a
/// fixed seed (see rng.hpp for the generator contract).
PointCloud sample_uniform_sphere(long n, std::uint64_t seed);

/// Same sampler, but points landing within `pole_margin` of a pole are
/// redrawn from the same stream. Used for validation samples on which the
/// analytic operator is evaluated.
PointCloud sample_uniform_sphere_nonpolar(long n, std::uint64_t seed,
                                          double pole_margin = kPoleMargin);

/// The benchmark function f(x,y,z) = (x^2 + y^2 + z) sin(x) cos(x).
double test_function(double x, double y, double z);

/// test_function at every point of a cloud with ambient dimension 3.
Eigen::VectorXd eval_test_function(const PointCloud& cloud);

/// A smooth function of spherical coordinates. Closed-form partials are
/// optional; when absent they are taken by 5-point central differences
/// (step 1e-4) with a step-doubling consistency check.
struct PolarFunction {
  std::function<double(double, double)> u;         // u(theta, phi)
  std::function<double(double, double)> d2_theta;  // d^2 u / d theta^2
  std::function<double(double, double)> d1_phi;    // d u / d phi
  std::function<double(double, double)> d2_phi;    // d^2 u / d phi^2

  bool has_closed_forms() const {
    return static_cast<bool>(d2_theta) && static_cast<bool>(d1_phi) &&
           static_cast<bool>(d2_phi);
  }
};

/// The benchmark function restricted to the sphere,
/// u(theta,phi) = (sin^2 phi + cos phi) sin(sin phi cos theta) cos(sin phi cos theta),
/// with its closed-form partials registered.
PolarFunction sphere_test_function_polar();

/// Laplace-Beltrami operator on S^2 in spherical coordinates:
///   (1/sin^2 phi) u_tt + (1/sin phi) d/dphi (sin phi * u_phi).
/// Throws pole_error when sin(phi) < pole_margin.
double analytic_sphere_laplacian(const PolarFunction& u, const SphericalPoint& p,
                                 double pole_margin = kPoleMargin);

/// What the estimator is compared against on the sphere bench.
/// `analytic` is the spherical-formula operator applied to the benchmark
/// function; `weighted` rescales by the uniform density p = 1/(4*pi), the
/// limit object of the graph Laplacian under uniform sampling.
enum class TargetConvention { analytic, weighted };

/// Ground-truth operator values at every point of a sphere cloud, for the
/// benchmark function.
Eigen::VectorXd target_operator(const PointCloud& cloud, TargetConvention convention,
                                double pole_margin = kPoleMargin);

/// Same, for an arbitrary registered function.
Eigen::VectorXd target_operator(const PointCloud& cloud, TargetConvention convention,
                                const PolarFunction& u,
                                double pole_margin = kPoleMargin);

/// Pointwise evaluation of a cartesian function over a cloud (m = 3).
Eigen::VectorXd eval_on_cloud(const PointCloud& cloud,
                              const std::function<double(double, double, double)>& f);

/// A function under test on the sphere bench: its cartesian form (evaluated
/// at sample points) paired with its polar form (fed to the analytic
/// operator).
struct BenchFunction {
  std::function<double(double, double, double)> f;
  PolarFunction polar;
};

/// The default bench pair: the benchmark function and its restriction.
BenchFunction default_bench();

}  // namespace lapsel
