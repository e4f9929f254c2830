#pragma once

// Finite-difference Poisson bracket and rank auditor. Derivatives here are
// central differences in the canonical chart with one Richardson refinement;
// nothing in this file touches the analytic vector fields.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nilflow/integrals.hpp"

namespace nilflow {

inline constexpr double kDefaultBracketStep = 1e-5;

/// Richardson-refined central difference gradient of F at p.
Eigen::Matrix<double, 10, 1> chart_gradient(const Observable& F, const ChartPoint& p, double h);

/// Sum over the five canonical pairs of dF/dq dG/dp - dF/dp dG/dq.
/// Throws SingularProximity within 10 h of a pole or of c = p_z = 0.
double poisson_bracket(const Observable& F, const Observable& G, const ChartPoint& p,
                       double h = kDefaultBracketStep);
double poisson_bracket(IntegralId F, IntegralId G, const ProductState& s,
                       double h = kDefaultBracketStep);

struct BracketReport {
  std::string first;
  std::string second;
  double h = kDefaultBracketStep;
  /// Distance kept from the poles and from c = 0 (10 h).
  double margin = 0.0;
  std::vector<double> values;
  double max_abs = 0.0;
  bool asserted_commuting = false;

  std::size_t samples() const noexcept { return values.size(); }
};

/// Pairs the construction asserts to Poisson commute.
bool asserted_commuting(IntegralId F, IntegralId G);

/// One report per unordered pair i < j, in lexicographic order of ids.
std::vector<BracketReport> commutation_matrix(const std::vector<IntegralId>& ids,
                                              const std::vector<ProductState>& states,
                                              double h = kDefaultBracketStep);

struct RankReport {
  int rank = 0;
  std::vector<double> singular_values;
};

/// Numerical rank (singular values above 1e-8 of the largest) of the chart
/// gradients. With restrict_to_level set the rank is taken on the tangent
/// space of the zero level of psi: rank([dF; dpsi]) - 1.
/// Only the pole margin is enforced here, so the c = 0 stratum can be probed.
RankReport rank_report(const std::vector<Observable>& fns, const ChartPoint& p, double h,
                       bool restrict_to_level, EulerNumber k = EulerNumber{1});

int independence_rank(const std::vector<IntegralId>& ids, const ProductState& s,
                      double h = kDefaultBracketStep);

}  // namespace nilflow
