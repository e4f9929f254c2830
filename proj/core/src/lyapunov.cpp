#include "nilflow/lyapunov.hpp"

#include <cmath>

#include "nilflow/integrators.hpp"
#include "nilflow/reduction.hpp"
#include "nilflow/sampling.hpp"

namespace nilflow {

namespace {

using Flat = Eigen::Matrix<double, 12, 1>;

Flat flatten(const ProductState& s) {
  Flat v;
  v << s.nil.q.x, s.nil.q.y, s.nil.q.z, s.nil.p, s.sphere.xi, s.sphere.p;
  return v;
}

// Back onto |xi| = 1, <xi, p> = 0 and p_z = p_phi.
ProductState unflatten(const Flat& v, EulerNumber k) {
  ProductState s;
  s.nil.k = k;
  s.nil.q = {v(0), v(1), v(2)};
  s.sphere.xi = v.segment<3>(6).normalized();
  const Eigen::Vector3d p = v.segment<3>(9);
  s.sphere.p = p - p.dot(s.sphere.xi) * s.sphere.xi;
  s.nil.p = v.segment<3>(3);
  s.nil.p.z() = 2.0 * std::numbers::pi * sphere_momentum(s.sphere);
  return s;
}

}  // namespace

std::vector<double> log_checkpoints(double t_first, double t_last, int per_decade) {
  std::vector<double> out;
  const double decades = std::log10(t_last / t_first);
  const int n = static_cast<int>(std::round(decades * per_decade));
  for (int i = 0; i <= n; ++i) {
    out.push_back(t_first * std::pow(10.0, static_cast<double>(i) / per_decade));
  }
  return out;
}

std::vector<LyapunovSample> lyapunov_max(const ProductState& initial, const LyapunovConfig& cfg) {
  if (!(cfg.separation > 0.0) || !(cfg.renorm_interval > 0.0) || !(cfg.dt > 0.0)) {
    throw DomainError("lyapunov_max needs positive separation, interval and dt");
  }
  const EulerNumber k = initial.nil.k;
  const auto substeps =
      static_cast<long>(std::max(1.0, std::round(cfg.renorm_interval / cfg.dt)));
  const double h = cfg.renorm_interval / static_cast<double>(substeps);
  const auto intervals = static_cast<long>(std::ceil(cfg.t_max / cfg.renorm_interval - 1e-9));

  Rng rng(cfg.seed);
  Flat dir;
  for (int i = 0; i < 12; ++i) dir(i) = rng.normal();

  ProductState base = initial;
  auto renormalize = [&](const Flat& delta) {
    return unflatten(flatten(base) + (cfg.separation / delta.norm()) * delta, k);
  };
  ProductState shadow = renormalize(dir);

  std::vector<LyapunovSample> out;
  std::size_t next_cp = 0;
  double log_sum = 0.0;
  for (long n = 1; n <= intervals; ++n) {
    const double d0 = (flatten(shadow) - flatten(base)).norm();
    for (long j = 0; j < substeps; ++j) {
      base = step_split_product(base, h);
      shadow = step_split_product(shadow, h);
    }
    const Flat delta = flatten(shadow) - flatten(base);
    log_sum += std::log(delta.norm() / d0);
    const double t = static_cast<double>(n) * cfg.renorm_interval;
    while (next_cp < cfg.checkpoints.size() && cfg.checkpoints[next_cp] <= t + 1e-9) {
      out.push_back({t, log_sum / t});
      ++next_cp;
    }
    shadow = renormalize(delta);
  }
  return out;
}

}  // namespace nilflow
