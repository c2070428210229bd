#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "lapsel/lepski.hpp"

namespace lapsel {

/// The two step functions of the bandwidth-jump heuristic, indexed by a
/// strictly descending a-grid.
struct SelectionPath {
  std::vector<double> a_grid;    // descending
  std::vector<double> h_of_a;    // h_hat(a, a)
  std::vector<double> h_of_a_2a; // h_hat(a, 2a)
};

/// 40 geometric points from 100 down to 0.1.
std::vector<double> default_a_grid();

/// Traces a -> h_hat(a,a) and a -> h_hat(a,2a) by repeated selection.
/// a_grid must be strictly descending and positive.
SelectionPath selection_path(const EstimatorFamily& family,
                             const std::vector<double>& a_grid,
                             const SelectOptions& options = {});

/// Location of the main bandwidth jump: scanning a from large to small,
/// returns the a immediately before the largest single-step drop of
/// log h_hat(a,a); ties toward larger a. Throws no_jump_error when the path
/// has no drop (caller should widen the a-grid).
double detect_jump(const SelectionPath& path);

struct CalibrationResult {
  double a0 = 0.0;
  LepskiSelection selection;  // h_hat(a0, 2*a0)
  SelectionPath path;
};

/// The full heuristic: trace the path, locate a0, select h_hat(a0, 2a0).
/// a0_override (test hook) skips jump detection entirely.
CalibrationResult calibrate_and_select(const EstimatorFamily& family,
                                       const std::vector<double>& a_grid,
                                       const SelectOptions& options = {},
                                       std::optional<double> a0_override = {});

/// CSV `a,h_aa,h_a2a` (plot-ready).
void write_path_csv(std::ostream& os, const SelectionPath& path);

}  // namespace lapsel
