#pragma once

#include <Eigen/Core>
#include <iosfwd>

namespace lapsel {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n points in ambient R^m with known intrinsic dimension d, plus optionally
/// cached function values (size 0 or n).
struct PointCloud {
  RowMat points;           // n x m
  int intrinsic_dim = 0;   // d, positive and <= m
  Eigen::VectorXd f;       // empty or one value per point

  long n() const { return points.rows(); }
  int ambient_dim() const { return static_cast<int>(points.cols()); }
  bool has_f() const { return f.size() == points.rows() && points.rows() > 0; }

  /// Checks finiteness, dimension bounds and f alignment; throws
  /// std::invalid_argument on violation.
  void validate() const;
};

/// Spherical coordinates: theta azimuth in [0, 2*pi), phi polar in [0, pi].
struct SphericalPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Cartesian (unit-norm assumed) to spherical coordinates.
SphericalPoint to_spherical(double x, double y, double z);

/// phi within `margin` of either pole, where theta is degenerate.
bool is_coordinate_singular(const SphericalPoint& p, double margin);

/// CSV with header `x,y,z[,f]`, one row per point, 17 significant digits.
void write_cloud_csv(std::ostream& os, const PointCloud& cloud);

/// Reads the format written by write_cloud_csv. intrinsic_dim is not stored
/// in the file and must be supplied.
PointCloud read_cloud_csv(std::istream& is, int intrinsic_dim);

}  // namespace lapsel
