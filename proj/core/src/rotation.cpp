#include "nilflow/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace nilflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double v) {
  const double w = v - std::floor(v);
  return w >= 1.0 ? 0.0 : w;
}
}  // namespace

AngleObservable angle_x() {
  return {"x", [](const ProductState& s) { return wrap_unit(s.nil.q.x); }};
}

AngleObservable angle_y() {
  return {"y", [](const ProductState& s) { return wrap_unit(s.nil.q.y); }};
}

AngleObservable angle_s() {
  return {"s", [](const ProductState& s) {
            return wrap_unit(s.nil.q.z + polar_from_embedded(s.sphere).phi);
          }};
}

AngleObservable angle_nil_phase() {
  return {"nil_phase", [](const ProductState& s) {
            const LeftMomenta m = s.nil.left();
            return wrap_unit(std::atan2(m.b, m.a) / kTwoPi);
          }};
}

AngleObservable angle_fibre() {
  return {"fibre", [](const ProductState& s) {
            const LeftMomenta m = s.nil.left();
            const double omega = s.nil.k.value() * m.c;
            if (omega == 0.0) throw DomainError("fibre angle needs c != 0");
            // w = x + i y circles the centre wc = w + i P / omega while P = a + i b
            // turns at rate omega; z picks up h Im(conj(wc) P), whose primitive
            // is removed here.
            const std::complex<double> P(m.a, m.b);
            const std::complex<double> w(s.nil.q.x, s.nil.q.y);
            const std::complex<double> wc = w + std::complex<double>(0.0, 1.0) * P / omega;
            return wrap_unit(s.nil.q.z + s.nil.k.half() * (std::conj(wc) * P).real() / omega);
          }};
}

AngleObservable angle_sphere_phase(const SphereCotangent& initial) {
  const Eigen::Vector3d e1 = initial.xi.normalized();
  Eigen::Vector3d e2 = initial.p - initial.p.dot(e1) * e1;
  if (e2.norm() == 0.0) throw DomainError("sphere phase needs a moving great circle");
  e2.normalize();
  return {"sphere_phase", [e1, e2](const ProductState& s) {
            return wrap_unit(std::atan2(s.sphere.xi.dot(e2), s.sphere.xi.dot(e1)) / kTwoPi);
          }};
}

RotationEstimate rotation_vector(const std::vector<double>& times,
                                 const std::vector<std::vector<double>>& angles,
                                 const std::vector<std::string>& names, double skip_fraction,
                                 double max_increment) {
  if (angles.size() != names.size()) throw DomainError("angle/name count mismatch");
  const std::size_t n = times.size();
  const auto first = static_cast<std::size_t>(std::floor(skip_fraction * static_cast<double>(n)));
  if (n < first + 2) throw DomainError("rotation_vector needs at least two samples");

  RotationEstimate est;
  est.names = names;
  est.window = times.back() - times[first];

  for (const auto& series : angles) {
    if (series.size() != n) throw DomainError("angle series length mismatch");
    std::vector<double> un(n - first);
    un[0] = series[first];
    for (std::size_t i = first + 1; i < n; ++i) {
      double d = series[i] - series[i - 1];
      d -= std::round(d);
      if (std::abs(d) > max_increment) {
        throw DomainError("angle increment exceeds the unwrapping guard; sample more finely");
      }
      un[i - first] = un[i - first - 1] + d;
    }
    // least squares theta = alpha + omega t
    double mt = 0.0, mu = 0.0;
    const double m = static_cast<double>(un.size());
    for (std::size_t i = 0; i < un.size(); ++i) {
      mt += times[first + i];
      mu += un[i];
    }
    mt /= m;
    mu /= m;
    double stt = 0.0, stu = 0.0;
    for (std::size_t i = 0; i < un.size(); ++i) {
      const double dt = times[first + i] - mt;
      stt += dt * dt;
      stu += dt * (un[i] - mu);
    }
    const double omega = stu / stt;
    double res = 0.0;
    for (std::size_t i = 0; i < un.size(); ++i) {
      res = std::max(res, std::abs(un[i] - (mu + omega * (times[first + i] - mt))));
    }
    est.frequencies.push_back(omega);
    est.residuals.push_back(res);
    est.residual = std::max(est.residual, res);
  }
  return est;
}

RotationEstimate rotation_vector(const Trajectory<ProductState>& traj,
                                 const std::vector<AngleObservable>& angles, double fiber_tol,
                                 double skip_fraction) {
  if (traj.states.empty()) throw NotOnRegularFiber("empty trajectory");
  if (!fibration_value(FibrationKind::fprime1, traj.states.front(), 0.0, 1e300).regular) {
    throw NotOnRegularFiber("initial state lies on the singular set");
  }
  for (const auto& d : fibration_drift(FibrationKind::fprime1, traj)) {
    if (d.max_relative_drift > fiber_tol) {
      throw NotOnRegularFiber("fibration component " + d.name + " drifts by " +
                              std::to_string(d.max_relative_drift));
    }
  }
  std::vector<std::vector<double>> series(angles.size());
  std::vector<std::string> names;
  for (std::size_t j = 0; j < angles.size(); ++j) {
    names.push_back(angles[j].name);
    series[j].reserve(traj.size());
    for (const auto& s : traj.states) series[j].push_back(angles[j].fn(s));
  }
  return rotation_vector(traj.times, series, names, skip_fraction);
}

std::string to_string(MinimalityVerdict v) {
  switch (v) {
    case MinimalityVerdict::likely_minimal: return "likely-minimal";
    case MinimalityVerdict::resonant: return "resonant";
    case MinimalityVerdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

bool near_rational(double x, double tol, long max_denominator) {
  x = std::abs(x);
  // convergents h/k of the continued fraction of x
  double h_prev = 1.0, h = std::floor(x);
  double k_prev = 0.0, k = 1.0;
  double rest = x - std::floor(x);
  while (k <= static_cast<double>(max_denominator)) {
    if (std::abs(x - h / k) <= tol) return true;
    if (rest < 1e-300) return true;  // x was exactly rational
    const double inv = 1.0 / rest;
    const double a = std::floor(inv);
    rest = inv - a;
    const double h_next = a * h + h_prev;
    const double k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return false;
}

}  // namespace

MinimalityVerdict minimality_heuristic(const RotationEstimate& est, double tol,
                                       long max_denominator) {
  if (est.residual > tol) return MinimalityVerdict::inconclusive;
  const auto& w = est.frequencies;
  // Resolution of each fitted frequency: fit residual spread over the window,
  // floored at a relative 1e-12 for rounding.
  std::vector<double> res(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double spread = i < est.residuals.size() ? est.residuals[i] : est.residual;
    res[i] = (est.window > 0.0 ? spread / est.window : 0.0) + 1e-12 * std::abs(w[i]);
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) <= std::max(res[i], 1e-300)) return MinimalityVerdict::resonant;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const bool i_big = std::abs(w[i]) >= std::abs(w[j]);
      const std::size_t b = i_big ? i : j, sm = i_big ? j : i;
      const double x = std::abs(w[sm]) / std::abs(w[b]);
      const double dx = x * (res[sm] / std::abs(w[sm]) + res[b] / std::abs(w[b]));
      if (near_rational(x, dx, max_denominator)) return MinimalityVerdict::resonant;
    }
  }
  return MinimalityVerdict::likely_minimal;
}

}  // namespace nilflow
