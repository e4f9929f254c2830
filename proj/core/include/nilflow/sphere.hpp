#pragma once

#include "nilflow/states.hpp"

namespace nilflow {

inline constexpr double kDefaultPoleMargin = 1e-3;

/// mu_i xi = e_i x xi, with axis = i - 1 (axis 0 is the polar axis of mu_1).
Eigen::Vector3d rotation_generator(int axis, const Eigen::Vector3d& xi);

/// Psi_2 = <p, mu_1 xi>, the momentum map of the rotation about e_1
/// parametrized by angle in radians. Equals p_phi / (2 pi).
double sphere_momentum(const SphereCotangent& s);

/// Throws PoleProximity when r < pole_margin or r > pi - pole_margin.
PolarPoint polar_from_embedded(const SphereCotangent& s,
                               double pole_margin = kDefaultPoleMargin);
SphereCotangent embedded_from_polar(const PolarPoint& p);

/// Polar angle from the first axis; no margin check.
double polar_angle(const Eigen::Vector3d& xi);

}  // namespace nilflow
