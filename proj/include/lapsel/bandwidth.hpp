#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lapsel {

/// Strictly increasing list of positive bandwidths.
class BandwidthGrid {
public:
  BandwidthGrid() = default;

  explicit BandwidthGrid(std::vector<double> values) : h_(std::move(values)) {
    for (size_t i = 0; i < h_.size(); ++i) {
      if (!(h_[i] > 0.0) || !std::isfinite(h_[i]))
        throw std::invalid_argument("bandwidths must be positive and finite");
      if (i > 0 && !(h_[i] > h_[i - 1]))
        throw std::invalid_argument("bandwidth grid must be strictly increasing");
    }
  }

  const std::vector<double>& values() const { return h_; }
  size_t size() const { return h_.size(); }
  bool empty() const { return h_.empty(); }
  double operator[](size_t k) const { return h_[k]; }
  double min() const { return h_.front(); }
  double max() const { return h_.back(); }

  /// Index of an exact grid member; throws if h is not on the grid.
  size_t index_of(double h) const {
    for (size_t k = 0; k < h_.size(); ++k)
      if (h_[k] == h) return k;
    throw std::invalid_argument("bandwidth not in grid");
  }

  auto begin() const { return h_.begin(); }
  auto end() const { return h_.end(); }

private:
  std::vector<double> h_;
};

/// n log-spaced bandwidths on [lo, hi] inclusive.
inline BandwidthGrid log_spaced_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_spaced_grid requires 0 < lo < hi, n >= 2");
  std::vector<double> h(static_cast<size_t>(n));
  const double ratio = std::log(hi / lo);
  for (int k = 0; k < n; ++k)
    h[static_cast<size_t>(k)] = lo * std::exp(ratio * k / (n - 1));
  h.back() = hi;
  return BandwidthGrid(std::move(h));
}

}  // namespace lapsel
