#include "lapsel/point_cloud.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapsel/csv.hpp"

namespace lapsel {

void PointCloud::validate() const {
  if (intrinsic_dim < 1 || intrinsic_dim > ambient_dim())
    throw std::invalid_argument("intrinsic_dim must satisfy 1 <= d <= m");
  if (!points.allFinite())
    throw std::invalid_argument("point cloud contains non-finite coordinates");
  if (f.size() != 0 && f.size() != points.rows())
    throw std::invalid_argument("cached f values misaligned with points");
  if (f.size() != 0 && !f.allFinite())
    throw std::invalid_argument("cached f values contain non-finite entries");
}

SphericalPoint to_spherical(double x, double y, double z) {
  SphericalPoint p;
  p.phi = std::acos(std::clamp(z, -1.0, 1.0));
  p.theta = std::atan2(y, x);
  if (p.theta < 0.0) p.theta += 2.0 * std::numbers::pi;
  return p;
}

bool is_coordinate_singular(const SphericalPoint& p, double margin) {
  return std::sin(p.phi) < margin;
}

void write_cloud_csv(std::ostream& os, const PointCloud& cloud) {
  if (cloud.ambient_dim() != 3)
    throw std::invalid_argument("cloud CSV format is for ambient dimension 3");
  const bool with_f = cloud.has_f();
  os << (with_f ? "x,y,z,f\n" : "x,y,z\n");
  for (long i = 0; i < cloud.n(); ++i) {
    os << format_g17(cloud.points(i, 0)) << ',' << format_g17(cloud.points(i, 1))
       << ',' << format_g17(cloud.points(i, 2));
    if (with_f) os << ',' << format_g17(cloud.f(i));
    os << '\n';
  }
}

PointCloud read_cloud_csv(std::istream& is, int intrinsic_dim) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("empty point-cloud CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_f = false;
  if (line == "x,y,z,f")
    with_f = true;
  else if (line != "x,y,z")
    throw std::invalid_argument("expected header x,y,z[,f], got '" + line + "'");

  std::vector<std::array<double, 4>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != (with_f ? 4u : 3u))
      throw std::invalid_argument("wrong field count in row: '" + line + "'");
    std::array<double, 4> row{0.0, 0.0, 0.0, 0.0};
    for (size_t j = 0; j < fields.size(); ++j) row[j] = parse_double(fields[j]);
    rows.push_back(row);
  }

  PointCloud cloud;
  cloud.intrinsic_dim = intrinsic_dim;
  cloud.points.resize(static_cast<long>(rows.size()), 3);
  if (with_f) cloud.f.resize(static_cast<long>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    const long r = static_cast<long>(i);
    cloud.points(r, 0) = rows[i][0];
    cloud.points(r, 1) = rows[i][1];
    cloud.points(r, 2) = rows[i][2];
    if (with_f) cloud.f(r) = rows[i][3];
  }
  cloud.validate();
  return cloud;
}

}  // namespace lapsel
