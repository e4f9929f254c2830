#pragma once

// The anti-diagonal circle action theta * (z, phi) = (z + theta, phi - theta),
// theta in R/Z, and the passage to the reduced chart (x, y, r, s = z + phi).

#include "nilflow/sphere.hpp"

namespace nilflow {

inline constexpr double kDefaultHorizontalTol = 1e-9;

/// Momentum map of the anti-diagonal action: p_z - p_phi = Psi_1 - 2 pi Psi_2.
double anti_diagonal_momentum(const ProductState& ps);

ReducedState reduced_from_product(const ProductState& ps,
                                  double horizontal_tol = kDefaultHorizontalTol,
                                  double pole_margin = kDefaultPoleMargin);

/// Horizontal lift at fibre coordinate t = z: phi = s - t, p_z = p_phi = p_s.
ProductState product_from_reduced(const ReducedState& rs, double t = 0.0);

}  // namespace nilflow
