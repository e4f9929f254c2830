#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nilflow/fibration.hpp"

namespace nilflow {

/// An angle observable in turns (values taken mod 1).
struct AngleObservable {
  std::string name;
  std::function<double(const ProductState&)> fn;
};

AngleObservable angle_x();
AngleObservable angle_y();
/// s = z + phi mod 1; requires the sphere point off the poles.
AngleObservable angle_s();
/// arg(a + i b) / 2 pi, the phase of the rotating left momenta.
AngleObservable angle_nil_phase();
/// z with its periodic part removed: on a regular fibre it advances at the
/// constant rate c + (k/2)(a^2 + b^2)/(k c). Requires c != 0.
AngleObservable angle_fibre();
/// Phase of xi in the (fixed) plane of its great circle, measured from the
/// initial point of the orbit.
AngleObservable angle_sphere_phase(const SphereCotangent& initial);

struct RotationEstimate {
  std::vector<std::string> names;
  /// Least-squares slope of each unwrapped angle, turns per unit time.
  std::vector<double> frequencies;
  /// Per-angle max deviation from the fitted line, in turns.
  std::vector<double> residuals;
  double residual = 0.0;
  double window = 0.0;
};

/// Fit each unwrapped series against time after dropping the first
/// skip_fraction of the samples. Throws DomainError when consecutive samples
/// move more than max_increment turns (the unwrapping would alias).
RotationEstimate rotation_vector(const std::vector<double>& times,
                                 const std::vector<std::vector<double>>& angles,
                                 const std::vector<std::string>& names,
                                 double skip_fraction = 0.0, double max_increment = 0.4);

/// Same on a product trajectory. Throws NotOnRegularFiber unless the
/// trajectory is regular and every f'1 component drifts less than fiber_tol.
RotationEstimate rotation_vector(const Trajectory<ProductState>& traj,
                                 const std::vector<AngleObservable>& angles,
                                 double fiber_tol = 1e-6, double skip_fraction = 0.0);

enum class MinimalityVerdict { likely_minimal, resonant, inconclusive };

std::string to_string(MinimalityVerdict v);

/// Inconclusive if the fit residual exceeds tol. Otherwise resonant when some
/// frequency, or some ratio of two frequencies minus a continued-fraction
/// convergent p/q with q <= max_denominator, vanishes within the frequency
/// resolution of the fit (residual / window, floored at 1e-12 relative).
MinimalityVerdict minimality_heuristic(const RotationEstimate& est, double tol,
                                       long max_denominator = 10000);

}  // namespace nilflow
