#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "nilflow/heisenberg.hpp"

namespace nilflow {

/// Left-trivialized momenta: a, b, c are the values of the covector on the
/// left-invariant fields generated by log alpha, log beta, log gamma.
struct LeftMomenta {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Point of T*N in universal-cover coordinates with canonical momenta
/// (p_x, p_y, p_z) conjugate to (x, y, z).
struct NilCotangent {
  NilAlgebraVector q;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  EulerNumber k{1};

  /// a = p_x - (k/2) y p_z, b = p_y + (k/2) x p_z, c = p_z.
  LeftMomenta left() const;
  static NilCotangent from_left(const NilAlgebraVector& q, const LeftMomenta& m,
                                EulerNumber k = EulerNumber{1});
};

/// Embedded point of T*S^2: |xi| = 1 and <xi, p> = 0.
struct SphereCotangent {
  Eigen::Vector3d xi = Eigen::Vector3d::UnitX();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  double norm_residual() const { return std::abs(xi.norm() - 1.0); }
  double tangency_residual() const { return std::abs(xi.dot(p)); }
};

/// Polar chart of S^2 about the first axis: xi = (cos r, sin r cos 2 pi phi,
/// sin r sin 2 pi phi), phi taken mod 1.
struct PolarPoint {
  double r = 0.5 * std::numbers::pi;
  double phi = 0.0;
  double p_r = 0.0;
  double p_phi = 0.0;
};

struct ProductState {
  NilCotangent nil;
  SphereCotangent sphere;
};

/// Chart point on the cover R^2 x S^2 of the reduced space; s = z + phi.
struct ReducedState {
  double x = 0.0;
  double y = 0.0;
  double r = 0.5 * std::numbers::pi;
  double s = 0.0;
  double p_x = 0.0;
  double p_y = 0.0;
  double p_r = 0.0;
  double p_s = 0.0;
  EulerNumber k{1};
};

}  // namespace nilflow
