#include "nilflow/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nilflow/integrators.hpp"

namespace nilflow {

namespace {

// Rotation about e1 by angle 2 pi z: carries the sphere point of the product
// state to the fibre coordinates (r, s = z + phi) of the reduced space.
Eigen::Vector3d rotate_about_axis(const Eigen::Vector3d& v, double turns) {
  const double ang = 2.0 * std::numbers::pi * turns;
  const double c = std::cos(ang), s = std::sin(ang);
  return {v.x(), c * v.y() - s * v.z(), s * v.y() + c * v.z()};
}

struct CoverImage {
  double x, y, px, py;
  Eigen::Vector3d xi, p;
};

CoverImage image(const ProductState& s) {
  const double frac = s.nil.q.z - std::floor(s.nil.q.z);
  return {s.nil.q.x, s.nil.q.y, s.nil.p.x(), s.nil.p.y(),
          rotate_about_axis(s.sphere.xi, frac), rotate_about_axis(s.sphere.p, frac)};
}

double distance(const CoverImage& a, const CoverImage& b) {
  const double d2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                    (a.px - b.px) * (a.px - b.px) + (a.py - b.py) * (a.py - b.py) +
                    (a.xi - b.xi).squaredNorm() + (a.p - b.p).squaredNorm();
  return std::sqrt(d2);
}

struct Sweep {
  std::vector<std::optional<double>> returns;
  double min_after_exit = std::numeric_limits<double>::infinity();
};

Sweep sweep(const ProductState& initial, const RecurrenceConfig& cfg, double direction) {
  const CoverImage origin = image(initial);
  const std::size_t ne = cfg.epsilons.size();
  const double eps_max = *std::max_element(cfg.epsilons.begin(), cfg.epsilons.end());
  Sweep out;
  out.returns.assign(ne, std::nullopt);
  std::vector<bool> exited(ne, false);
  std::size_t pending = ne;

  IntegratorConfig icfg;
  icfg.dt = cfg.dt;
  icfg.t_max = cfg.t_max;
  const std::size_t steps = icfg.step_count();
  ProductState s = initial;
  bool exited_max = false;
  for (std::size_t i = 1; i <= steps && pending > 0; ++i) {
    s = step_split_product(s, direction * cfg.dt);
    const double d = distance(image(s), origin);
    const double t = static_cast<double>(i) * cfg.dt;
    if (d > eps_max) exited_max = true;
    if (exited_max) out.min_after_exit = std::min(out.min_after_exit, d);
    for (std::size_t e = 0; e < ne; ++e) {
      if (out.returns[e]) continue;
      if (d > cfg.epsilons[e]) {
        exited[e] = true;
      } else if (exited[e]) {
        out.returns[e] = t;
        --pending;
      }
    }
  }
  return out;
}

}  // namespace

double cover_distance(const ProductState& a, const ProductState& b) {
  return distance(image(a), image(b));
}

std::optional<double> first_return(const std::vector<double>& times,
                                   const std::vector<double>& distances, double eps) {
  bool exited = false;
  for (std::size_t i = 0; i < times.size() && i < distances.size(); ++i) {
    if (distances[i] > eps) {
      exited = true;
    } else if (exited) {
      return times[i];
    }
  }
  return std::nullopt;
}

RecurrenceReport recurrence_stat(const ProductState& initial, const RecurrenceConfig& cfg) {
  if (std::abs(initial.nil.p.z()) < cfg.min_abs_c) {
    throw DomainError("recurrence_stat needs |c| >= " + std::to_string(cfg.min_abs_c));
  }
  if (cfg.epsilons.empty()) throw DomainError("recurrence_stat needs at least one epsilon");
  const Sweep fwd = sweep(initial, cfg, 1.0);
  const Sweep bwd = sweep(initial, cfg, -1.0);
  RecurrenceReport rep;
  for (std::size_t e = 0; e < cfg.epsilons.size(); ++e) {
    rep.table.push_back({cfg.epsilons[e], fwd.returns[e], bwd.returns[e]});
  }
  rep.min_distance_forward = fwd.min_after_exit;
  rep.min_distance_backward = bwd.min_after_exit;
  return rep;
}

}  // namespace nilflow
