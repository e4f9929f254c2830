#pragma once

#include <cstdint>
#include <vector>

#include "nilflow/states.hpp"

namespace nilflow {

struct LyapunovConfig {
  double separation = 1e-8;
  double renorm_interval = 1.0;
  double dt = 0.1;
  double t_max = 1e4;
  /// Times at which lambda(t) is reported; rounded up to renormalization times.
  std::vector<double> checkpoints;
  std::uint64_t seed = 1;
};

struct LyapunovSample {
  double t = 0.0;
  double lambda = 0.0;
};

/// Logarithmically spaced times from t_first to t_last inclusive.
std::vector<double> log_checkpoints(double t_first, double t_last, int per_decade);

/// Benettin estimate of the largest exponent of the product flow: a shadow
/// state at distance `separation` (in the flat coordinates x, y, z, p, xi,
/// p_sphere) is advanced alongside, and renormalized every renorm_interval.
/// The shadow is kept on the sphere constraints and on the horizontal level.
std::vector<LyapunovSample> lyapunov_max(const ProductState& initial, const LyapunovConfig& cfg);

}  // namespace nilflow
