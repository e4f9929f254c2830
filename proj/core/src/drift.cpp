#include "nilflow/drift.hpp"

#include <algorithm>
#include <cmath>

namespace nilflow {

double relative_drift(const std::vector<double>& series) {
  if (series.empty()) return 0.0;
  const double f0 = series.front();
  const double scale = std::max(1.0, std::abs(f0));
  double worst = 0.0;
  for (double v : series) worst = std::max(worst, std::abs(v - f0) / scale);
  return worst;
}

template <class State>
std::vector<DriftEntry> drift_report(const Trajectory<State>& traj,
                                     const std::vector<std::string>& names) {
  std::vector<DriftEntry> out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back({name, relative_drift(traj.integral(name))});
  return out;
}

template std::vector<DriftEntry> drift_report(const Trajectory<ProductState>&,
                                              const std::vector<std::string>&);
template std::vector<DriftEntry> drift_report(const Trajectory<NilCotangent>&,
                                              const std::vector<std::string>&);
template std::vector<DriftEntry> drift_report(const Trajectory<SphereCotangent>&,
                                              const std::vector<std::string>&);
template std::vector<DriftEntry> drift_report(const Trajectory<ReducedState>&,
                                              const std::vector<std::string>&);

std::vector<DriftEntry> drift_report(const Trajectory<ProductState>& traj,
                                     const std::vector<IntegralId>& ids) {
  std::vector<DriftEntry> out;
  out.reserve(ids.size());
  for (IntegralId id : ids) {
    std::vector<double> series;
    series.reserve(traj.size());
    for (const auto& s : traj.states) series.push_back(evaluate(id, s));
    out.push_back({to_string(id), relative_drift(series)});
  }
  return out;
}

NuBoundReport nu_bound_check(const Trajectory<ProductState>& traj, double tol) {
  NuBoundReport rep;
  if (traj.states.empty()) return rep;
  const ProductState& s0 = traj.states.front();
  const double nu1 = evaluate(IntegralId::nu1, s0);
  const double nu2 = evaluate(IntegralId::nu2, s0);
  const double nu3 = evaluate(IntegralId::nu3, s0);
  if (nu3 == 0.0) throw DomainError("nu_bound_check requires nu3 = c != 0");

  rep.min_abs_c = std::abs(nu3);
  std::vector<double> n1, n2, n3;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const ProductState& s = traj.states[i];
    const LeftMomenta m = s.nil.left();
    rep.min_abs_c = std::min(rep.min_abs_c, std::abs(m.c));
    const double bound_x = (std::abs(m.b) + std::abs(nu2)) / std::abs(nu3);
    const double bound_y = (std::abs(m.a) + std::abs(nu1)) / std::abs(nu3);
    const double ax = std::abs(s.nil.q.x), ay = std::abs(s.nil.q.y);
    if (bound_x > 0.0) rep.max_ratio = std::max(rep.max_ratio, ax / bound_x);
    if (bound_y > 0.0) rep.max_ratio = std::max(rep.max_ratio, ay / bound_y);
    if ((ax > bound_x + tol || ay > bound_y + tol) && rep.bound_holds) {
      rep.bound_holds = false;
      rep.first_violation = i;
    }
    n1.push_back(evaluate(IntegralId::nu1, s));
    n2.push_back(evaluate(IntegralId::nu2, s));
    n3.push_back(evaluate(IntegralId::nu3, s));
  }
  rep.nu_drift = std::max({relative_drift(n1), relative_drift(n2), relative_drift(n3)});
  return rep;
}

}  // namespace nilflow
