#pragma once

// First integrals and momentum maps, evaluated on product states.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "nilflow/hamiltonians.hpp"
#include "nilflow/trajectory.hpp"

namespace nilflow {

enum class IntegralId {
  f1,
  f2,
  f3,
  psi1,
  psi2,
  psi,
  nu1,
  nu2,
  nu3,
  H1,
  H2,
  H1_variant,
  H,  // H1 + H2
};

std::string to_string(IntegralId id);
IntegralId integral_from_string(const std::string& name);
const std::vector<IntegralId>& all_integrals();

/// Below this |c| the flat factor exp(-1/c^2) is replaced by exactly 0.
/// Corresponds to c^-2 > 700.
inline const double kFlatThreshold = 1.0 / std::sqrt(700.0);

/// exp(-1/c^2), identically zero for |c| below kFlatThreshold.
double flat_factor(double c);

/// f1 = c; f2 = exp(-1/c^2) sin 2 pi (a/c + y); f3 = exp(-1/c^2) sin 2 pi (b/c - x).
/// psi1 = c, psi2 = <p, mu_1 xi>, psi = psi1 - 2 pi psi2;
/// nu = (a + c y, b - c x, c) on the cover.
double evaluate(IntegralId id, const ProductState& s);
/// Nil-only ids on a nil state; throws DomainError for sphere ids.
double evaluate(IntegralId id, const NilCotangent& s);
/// psi2 and H2 on a sphere state; throws DomainError otherwise.
double evaluate(IntegralId id, const SphereCotangent& s);

template <class State>
TrackedList<State> tracked_integrals(const std::vector<IntegralId>& ids) {
  TrackedList<State> out;
  for (IntegralId id : ids) {
    out.emplace_back(to_string(id), [id](const State& s) { return evaluate(id, s); });
  }
  return out;
}

/// Canonical chart of the product phase space:
/// (x, y, z, r, phi, p_x, p_y, p_z, p_r, p_phi).
using ChartPoint = std::array<double, 10>;

ChartPoint chart_from_product(const ProductState& s, double pole_margin = kDefaultPoleMargin);
ProductState product_from_chart(const ChartPoint& c, EulerNumber k = EulerNumber{1});

using Observable = std::function<double(const ChartPoint&)>;

/// The integral as a function on the chart; the chart-to-state conversion is
/// the only thing shared with the evaluation path.
Observable observable(IntegralId id, EulerNumber k = EulerNumber{1});

}  // namespace nilflow
