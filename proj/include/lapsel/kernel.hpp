#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace lapsel {

/// Gaussian kernel K(y) = (4*pi)^{-d/2} exp(-||y||^2 / 4).
/// The normalization uses the intrinsic dimension d while the norm is taken
/// in the ambient space.
inline double gaussian_kernel_from_sq(double sq_norm, int intrinsic_dim) {
  const double norm_const =
      std::pow(4.0 * std::numbers::pi, -0.5 * intrinsic_dim);
  return norm_const * std::exp(-0.25 * sq_norm);
}

inline double gaussian_kernel(std::span<const double> y, int intrinsic_dim) {
  double sq = 0.0;
  for (double c : y) sq += c * c;
  return gaussian_kernel_from_sq(sq, intrinsic_dim);
}

}  // namespace lapsel
