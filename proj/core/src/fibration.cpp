#include "nilflow/fibration.hpp"

#include <algorithm>
#include <cmath>

namespace nilflow {

namespace {

double wrap_unit(double v) {
  const double w = v - std::floor(v);
  return w >= 1.0 ? 0.0 : w;
}

struct RawComponents {
  double theta1, theta2, c, e2, e1;
};

RawComponents raw(const ProductState& s) {
  const LeftMomenta m = s.nil.left();
  const double psi2 = sphere_momentum(s.sphere);
  RawComponents out{};
  out.c = m.c;
  out.e1 = 2.0 * h1(s.nil) - m.c * m.c;
  out.e2 = 2.0 * h2(s.sphere) - psi2 * psi2;
  if (m.c != 0.0) {
    out.theta1 = m.a / m.c + s.nil.q.y;
    out.theta2 = m.b / m.c - s.nil.q.x;
  }
  return out;
}

}  // namespace

std::string to_string(FibrationKind kind) {
  return kind == FibrationKind::fprime1 ? "fprime1" : "f1";
}

FibrationKind fibration_from_string(const std::string& name) {
  if (name == "fprime1") return FibrationKind::fprime1;
  if (name == "f1") return FibrationKind::f1;
  throw DomainError("unknown fibration '" + name + "'");
}

double circular_difference(double a, double b) {
  double d = a - b;
  d -= std::floor(d + 0.5);
  return d;
}

FibrationValue fibration_value(FibrationKind kind, const ProductState& s, double margin,
                               double horizontal_tol) {
  const double psi = anti_diagonal_momentum(s);
  if (std::abs(psi) > horizontal_tol) {
    throw NotHorizontal("fibration_value needs a horizontal state (psi=" +
                        std::to_string(psi) + ")");
  }
  const RawComponents rc = raw(s);
  FibrationValue v;
  v.kind = kind;
  v.regular = std::abs(rc.c) > margin && rc.c != 0.0 && rc.e1 > margin && rc.e2 > margin;
  if (kind == FibrationKind::fprime1) {
    v.components = {wrap_unit(rc.theta1), wrap_unit(rc.theta2), rc.c, rc.e2, rc.e1};
  } else {
    v.components = {wrap_unit(rc.theta1), rc.c, rc.e2, rc.e1};
  }
  return v;
}

std::vector<Observable> fibration_observables(FibrationKind kind, EulerNumber k) {
  auto component = [k](double RawComponents::*field) -> Observable {
    return [k, field](const ChartPoint& p) { return raw(product_from_chart(p, k)).*field; };
  };
  std::vector<Observable> out{component(&RawComponents::theta1)};
  if (kind == FibrationKind::fprime1) out.push_back(component(&RawComponents::theta2));
  out.push_back(component(&RawComponents::c));
  out.push_back(component(&RawComponents::e2));
  out.push_back(component(&RawComponents::e1));
  return out;
}

int rank_of_fibration(FibrationKind kind, const ProductState& s, double h) {
  return rank_report(fibration_observables(kind, s.nil.k), chart_from_product(s), h, true,
                     s.nil.k)
      .rank;
}

std::vector<DriftEntry> fibration_drift(FibrationKind kind,
                                        const Trajectory<ProductState>& traj) {
  static const char* names5[] = {"theta1", "theta2", "c", "e2", "e1"};
  static const char* names4[] = {"theta1", "c", "e2", "e1"};
  const bool five = kind == FibrationKind::fprime1;
  const int n = five ? 5 : 4;
  const int angles = five ? 2 : 1;
  std::vector<DriftEntry> out;
  if (traj.states.empty()) return out;

  const FibrationValue v0 = fibration_value(kind, traj.states.front(), 0.0, 1e300);
  std::vector<double> worst(static_cast<std::size_t>(n), 0.0);
  for (const auto& s : traj.states) {
    const FibrationValue v = fibration_value(kind, s, 0.0, 1e300);
    for (int j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double d =
          j < angles ? std::abs(circular_difference(v.components[ju], v0.components[ju]))
                     : std::abs(v.components[ju] - v0.components[ju]) /
                           std::max(1.0, std::abs(v0.components[ju]));
      worst[ju] = std::max(worst[ju], d);
    }
  }
  for (int j = 0; j < n; ++j) {
    out.push_back({five ? names5[j] : names4[j], worst[static_cast<std::size_t>(j)]});
  }
  return out;
}

}  // namespace nilflow
