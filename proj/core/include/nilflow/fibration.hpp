#pragma once

// Torus fibrations of the regular set. With theta1 = a/c + y, theta2 = b/c - x
// (both mod 1), e1 = 2 H1 - c^2 and e2 = 2 H2 - psi2^2:
//   f'1 = (theta1, theta2, c, e2, e1)   fibres are invariant 3-tori
//   f1  = (theta1, c, e2, e1)           fibres are invariant 4-tori
// The singular set is {c e1 e2 = 0}.

#include <string>
#include <vector>

#include "nilflow/brackets.hpp"
#include "nilflow/drift.hpp"

namespace nilflow {

enum class FibrationKind { fprime1, f1 };

std::string to_string(FibrationKind kind);
FibrationKind fibration_from_string(const std::string& name);

struct FibrationValue {
  FibrationKind kind = FibrationKind::fprime1;
  std::vector<double> components;
  /// c != 0, e1 > margin, e2 > margin.
  bool regular = false;

  /// Number of leading angle components (2 for f'1, 1 for f1).
  int angle_count() const { return kind == FibrationKind::fprime1 ? 2 : 1; }
};

/// Throws NotHorizontal when |psi| exceeds horizontal_tol. On c = 0 the angle
/// components are reported as 0 and the value is flagged singular.
FibrationValue fibration_value(FibrationKind kind, const ProductState& s, double margin = 0.0,
                               double horizontal_tol = kDefaultHorizontalTol);

/// Component functions on the chart, with the angles left unwrapped so they
/// can be differentiated.
std::vector<Observable> fibration_observables(FibrationKind kind, EulerNumber k = EulerNumber{1});

/// Rank of the differential on the tangent space of the zero level of psi.
int rank_of_fibration(FibrationKind kind, const ProductState& s,
                      double h = kDefaultBracketStep);

/// Max drift of each component along a trajectory; angle components use the
/// circular distance on R/Z.
std::vector<DriftEntry> fibration_drift(FibrationKind kind, const Trajectory<ProductState>& traj);

/// Signed distance on R/Z, in [-1/2, 1/2).
double circular_difference(double a, double b);

}  // namespace nilflow
