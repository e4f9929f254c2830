#include "nilflow/brackets.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace nilflow {

namespace {

constexpr int kDim = 10;
constexpr int kDof = 5;
constexpr int kPolarIndex = 3;
constexpr int kPzIndex = 7;

double central(const Observable& F, ChartPoint p, int i, double h) {
  const double x0 = p[i];
  p[i] = x0 + h;
  const double fp = F(p);
  p[i] = x0 - h;
  const double fm = F(p);
  return (fp - fm) / (2.0 * h);
}

void check_pole_margin(const ChartPoint& p, double margin) {
  const double r = p[kPolarIndex];
  if (!(r > margin && r < std::numbers::pi - margin)) {
    throw SingularProximity("bracket stencil too close to a pole (r=" + std::to_string(r) + ")");
  }
}

}  // namespace

Eigen::Matrix<double, 10, 1> chart_gradient(const Observable& F, const ChartPoint& p, double h) {
  Eigen::Matrix<double, 10, 1> g;
  for (int i = 0; i < kDim; ++i) {
    const double coarse = central(F, p, i, h);
    const double fine = central(F, p, i, 0.5 * h);
    g(i) = (4.0 * fine - coarse) / 3.0;
  }
  return g;
}

double poisson_bracket(const Observable& F, const Observable& G, const ChartPoint& p, double h) {
  const double margin = 10.0 * h;
  check_pole_margin(p, std::max(margin, kDefaultPoleMargin));
  if (std::abs(p[kPzIndex]) < margin) {
    throw SingularProximity("bracket stencil too close to c = 0");
  }
  const auto dF = chart_gradient(F, p, h);
  const auto dG = chart_gradient(G, p, h);
  double sum = 0.0;
  for (int i = 0; i < kDof; ++i) {
    sum += dF(i) * dG(i + kDof) - dF(i + kDof) * dG(i);
  }
  return sum;
}

double poisson_bracket(IntegralId F, IntegralId G, const ProductState& s, double h) {
  return poisson_bracket(observable(F, s.nil.k), observable(G, s.nil.k), chart_from_product(s),
                         h);
}

bool asserted_commuting(IntegralId F, IntegralId G) {
  using I = IntegralId;
  if (F == G) return true;
  static const std::vector<std::pair<I, I>> pairs = [] {
    std::vector<std::pair<I, I>> v;
    const I commuting[] = {I::H1, I::H2, I::f1, I::f2};
    for (I a : commuting)
      for (I b : commuting) v.emplace_back(a, b);
    for (I a : {I::H1, I::H2, I::f1})
      for (I b : {I::f2, I::f3}) v.emplace_back(a, b);
    for (I a : {I::H1_variant})
      for (I b : {I::H2, I::f1, I::f2}) v.emplace_back(a, b);
    // momentum maps against the Hamiltonians
    for (I a : {I::psi, I::psi1, I::psi2})
      for (I b : {I::H, I::H1, I::H2}) v.emplace_back(a, b);
    for (I a : {I::nu1, I::nu2, I::nu3}) v.emplace_back(a, I::H1);
    return v;
  }();
  for (const auto& [a, b] : pairs) {
    if ((a == F && b == G) || (a == G && b == F)) return true;
  }
  return false;
}

std::vector<BracketReport> commutation_matrix(const std::vector<IntegralId>& ids,
                                              const std::vector<ProductState>& states,
                                              double h) {
  std::vector<ChartPoint> points;
  points.reserve(states.size());
  for (const auto& s : states) points.push_back(chart_from_product(s));
  const EulerNumber k = states.empty() ? EulerNumber{1} : states.front().nil.k;

  std::vector<BracketReport> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      BracketReport rep;
      rep.first = to_string(ids[i]);
      rep.second = to_string(ids[j]);
      rep.h = h;
      rep.margin = 10.0 * h;
      rep.asserted_commuting = asserted_commuting(ids[i], ids[j]);
      const Observable F = observable(ids[i], k), G = observable(ids[j], k);
      for (const auto& p : points) {
        const double v = poisson_bracket(F, G, p, h);
        rep.values.push_back(v);
        rep.max_abs = std::max(rep.max_abs, std::abs(v));
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

RankReport rank_report(const std::vector<Observable>& fns, const ChartPoint& p, double h,
                       bool restrict_to_level, EulerNumber k) {
  check_pole_margin(p, std::max(10.0 * h, kDefaultPoleMargin));
  const auto rows = static_cast<Eigen::Index>(fns.size() + (restrict_to_level ? 1 : 0));
  Eigen::MatrixXd J(rows, kDim);
  for (std::size_t i = 0; i < fns.size(); ++i) {
    J.row(static_cast<Eigen::Index>(i)) = chart_gradient(fns[i], p, h).transpose();
  }
  if (restrict_to_level) {
    J.row(rows - 1) = chart_gradient(observable(IntegralId::psi, k), p, h).transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const Eigen::VectorXd sv = svd.singularValues();
  RankReport rep;
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double largest = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-8 * largest) ++rank;
  }
  // d psi never vanishes, so it always contributes one direction.
  rep.rank = restrict_to_level ? rank - 1 : rank;
  return rep;
}

int independence_rank(const std::vector<IntegralId>& ids, const ProductState& s, double h) {
  std::vector<Observable> fns;
  for (IntegralId id : ids) fns.push_back(observable(id, s.nil.k));
  return rank_report(fns, chart_from_product(s), h, true, s.nil.k).rank;
}

}  // namespace nilflow
