#pragma once

#include <optional>
#include <vector>

#include "nilflow/states.hpp"

namespace nilflow {

/// Euclidean distance between the images of two product states on the
/// universal cover of the reduced space: positions (x, y), the sphere point
/// rotated by 2 pi z about the polar axis (its polar coordinates are (r, s)),
/// the correspondingly rotated sphere momentum, and (p_x, p_y).
double cover_distance(const ProductState& a, const ProductState& b);

/// First sample time at which distance <= eps after having been > eps.
std::optional<double> first_return(const std::vector<double>& times,
                                   const std::vector<double>& distances, double eps);

struct RecurrenceConfig {
  double dt = 0.01;
  double t_max = 1e4;
  std::vector<double> epsilons{0.5, 0.2, 0.1};
  double min_abs_c = 0.1;
};

struct ReturnTime {
  double epsilon = 0.0;
  std::optional<double> forward;
  std::optional<double> backward;
};

struct RecurrenceReport {
  std::vector<ReturnTime> table;
  /// Closest approach after the first exit from the largest ball.
  double min_distance_forward = 0.0;
  double min_distance_backward = 0.0;
};

/// Integrates forward and backward in time with the exact product flow and
/// tabulates first returns for each epsilon. Absence of a return within t_max
/// is reported, not thrown. Throws DomainError when |c| < min_abs_c.
RecurrenceReport recurrence_stat(const ProductState& initial, const RecurrenceConfig& cfg);

}  // namespace nilflow
