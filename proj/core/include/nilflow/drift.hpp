#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nilflow/integrals.hpp"

namespace nilflow {

struct DriftEntry {
  std::string name;
  /// max_t |F(t) - F(0)| / max(1, |F(0)|)
  double max_relative_drift = 0.0;
};

/// Drift of each named integral from a trajectory's diagnostics. Throws
/// std::out_of_range if a name was not tracked.
template <class State>
std::vector<DriftEntry> drift_report(const Trajectory<State>& traj,
                                     const std::vector<std::string>& names);

std::vector<DriftEntry> drift_report(const Trajectory<ProductState>& traj,
                                     const std::vector<IntegralId>& ids);

/// Relative drift of an arbitrary sampled series.
double relative_drift(const std::vector<double>& series);

struct NuBoundReport {
  bool bound_holds = true;
  std::optional<std::size_t> first_violation;
  /// Largest ratio |x| / bound_x or |y| / bound_y seen (<= 1 when the bound holds).
  double max_ratio = 0.0;
  double nu_drift = 0.0;
  double min_abs_c = 0.0;
  bool ok(double drift_tol = 1e-7) const { return bound_holds && nu_drift < drift_tol; }
};

/// Checks |x| <= (|b| + |nu2|)/|nu3| + tol and |y| <= (|a| + |nu1|)/|nu3| + tol
/// at every sample, with nu taken at t = 0, and reports the drift of nu.
/// Throws DomainError if nu3 = c vanishes at t = 0.
NuBoundReport nu_bound_check(const Trajectory<ProductState>& traj, double tol = 1e-9);

}  // namespace nilflow
