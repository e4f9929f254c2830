#include "nilflow/integrators.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace nilflow {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::exact_sphere: return "exact-sphere";
    case Scheme::euler_arnold_nil: return "euler-arnold-nil";
    case Scheme::implicit_midpoint_chart: return "implicit-midpoint-chart";
    case Scheme::split_product: return "split-product";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "exact-sphere") return Scheme::exact_sphere;
  if (name == "euler-arnold-nil") return Scheme::euler_arnold_nil;
  if (name == "implicit-midpoint-chart") return Scheme::implicit_midpoint_chart;
  if (name == "split-product") return Scheme::split_product;
  throw DomainError("unknown scheme '" + name + "'");
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (sample_stride < 1) throw DomainError("sample_stride must be >= 1");
  if (newton_max_iter < 1) throw DomainError("newton_max_iter must be >= 1");
  if (newton_tol < 10.0 * std::numeric_limits<double>::epsilon()) {
    throw DomainError("newton_tol below 10 machine epsilons");
  }
}

std::size_t IntegratorConfig::step_count() const {
  // t_max / dt is usually meant to be an integer; absorb the rounding.
  const double n = t_max / dt;
  const double rounded = std::round(n);
  if (std::abs(n - rounded) <= 1e-9 * std::max(1.0, n)) return static_cast<std::size_t>(rounded);
  return static_cast<std::size_t>(std::floor(n));
}

std::size_t IntegratorConfig::sample_count() const {
  return step_count() / static_cast<std::size_t>(sample_stride) + 1;
}

// ---------------------------------------------------------------------------
// Exact steps

SphereCotangent step_sphere_exact(const SphereCotangent& s, double dt) {
  // Extended precision so that the only error carried between steps is the
  // final rounding to double, which is unbiased; a fixed step otherwise
  // repeats the same cos/sin rounding every step and drifts linearly.
  using V = Eigen::Matrix<long double, 3, 1>;
  const V xi = s.xi.cast<long double>();
  const V p = s.p.cast<long double>();
  const long double omega = p.norm();
  if (omega == 0.0L) return s;
  const long double c = std::cos(omega * dt), sn = std::sin(omega * dt);
  SphereCotangent out;
  out.xi = (c * xi + (sn / omega) * p).cast<double>();
  out.p = (-omega * sn * xi + c * p).cast<double>();
  return out;
}

namespace {

using Real = long double;
using Complex = std::complex<Real>;

// (e^{i theta} - 1) / (i theta) = sin(theta)/theta + i (1 - cos theta)/theta
Complex phase_integral(Real theta) {
  if (std::abs(theta) < 1e-4L) {
    const Real t2 = theta * theta;
    return {1.0L - t2 / 6.0L + t2 * t2 / 120.0L, theta / 2.0L - theta * t2 / 24.0L};
  }
  const Real half = std::sin(0.5L * theta);
  return {std::sin(theta) / theta, 2.0L * half * half / theta};
}

// (theta - sin theta) / theta^2
Real area_kernel(Real theta) {
  if (std::abs(theta) < 1e-3L) {
    const Real t2 = theta * theta;
    return theta / 6.0L - theta * t2 / 120.0L + theta * t2 * t2 / 5040.0L;
  }
  return (theta - std::sin(theta)) / (theta * theta);
}

}  // namespace

// Extended precision for the same reason as the sphere step.
NilCotangent step_nil_euler(const NilCotangent& s, double dt) {
  const Real h = s.k.half();
  const Real c = s.p.z();
  const Real a = s.p.x() - h * s.q.y * c;
  const Real b = s.p.y() + h * s.q.x * c;
  const Real theta = s.k.value() * c * dt;
  const Complex P(a, b);
  const Complex w0(s.q.x, s.q.y);
  const Complex rot(std::cos(theta), std::sin(theta));

  const Complex u = P * static_cast<Real>(dt) * phase_integral(theta);
  const Complex w1 = w0 + u;
  const Complex P1 = P * rot;

  // z' = c + (k/2) Im(conj(w) w'), integrated exactly along the circle.
  const Real area = (std::conj(w0) * u).imag() + std::norm(P) * dt * dt * area_kernel(theta);
  NilCotangent out = s;
  out.q = {static_cast<double>(w1.real()), static_cast<double>(w1.imag()),
           static_cast<double>(s.q.z + c * dt + h * area)};
  out.p = {static_cast<double>(P1.real() + h * w1.imag() * c),
           static_cast<double>(P1.imag() - h * w1.real() * c), s.p.z()};
  return out;
}

ProductState step_split_product(const ProductState& s, double dt) {
  return {step_nil_euler(s.nil, dt), step_sphere_exact(s.sphere, dt)};
}

// ---------------------------------------------------------------------------
// Implicit midpoint

namespace {

template <class H>
typename H::Vector hamilton_field(const H& ham, const typename H::Vector& z) {
  constexpr int n = H::kDof;
  const typename H::Vector g = ham.gradient(z);
  typename H::Vector f;
  f.template head<n>() = g.template tail<n>();
  f.template tail<n>() = -g.template head<n>();
  return f;
}

template <class H>
void check_chart(const H& ham, const typename H::Vector& z, double margin) {
  (void)ham;
  const double r = H::polar(z);
  if (!(r > margin && r < std::numbers::pi - margin)) {
    throw PoleProximity("midpoint left the polar chart (r=" + std::to_string(r) + ")");
  }
}

template <class H>
typename H::Vector midpoint_step(const H& ham, const typename H::Vector& z0, double dt,
                                 const IntegratorConfig& cfg) {
  using Vector = typename H::Vector;
  using Matrix = typename H::Matrix;
  constexpr int n = H::kDof;

  check_chart(ham, z0, cfg.pole_margin);
  Vector z = z0 + dt * hamilton_field(ham, z0);
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const Vector mid = 0.5 * (z0 + z);
    check_chart(ham, mid, cfg.pole_margin);
    const Vector residual = z - z0 - dt * hamilton_field(ham, mid);
    const Matrix hess = ham.hessian(mid);
    // d/dz of J grad H(mid) = 1/2 J Hess
    Matrix jhess;
    jhess.template topRows<n>() = hess.template bottomRows<n>();
    jhess.template bottomRows<n>() = -hess.template topRows<n>();
    const Matrix jac = Matrix::Identity() - 0.5 * dt * jhess;
    const Vector delta = jac.partialPivLu().solve(residual);
    z -= delta;
    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    if (delta.cwiseAbs().maxCoeff() <= cfg.newton_tol * scale) {
      check_chart(ham, z, cfg.pole_margin);
      return z;
    }
  }
  throw NewtonDivergence("implicit midpoint Newton did not converge in " +
                         std::to_string(cfg.newton_max_iter) + " iterations");
}

}  // namespace

ReducedState step_chart_midpoint(const ReducedHamiltonian& h, const ReducedState& s,
                                 double dt, const IntegratorConfig& cfg) {
  return h.unpack(midpoint_step(h, ReducedHamiltonian::pack(s), dt, cfg));
}

NilCotangent step_chart_midpoint(const NilChartHamiltonian& h, const NilCotangent& s,
                                 double dt, const IntegratorConfig& cfg) {
  return h.unpack(midpoint_step(h, NilChartHamiltonian::pack(s), dt, cfg));
}

// ---------------------------------------------------------------------------
// Trajectories

namespace {

double sphere_residual(const SphereCotangent& s) {
  return std::max(s.norm_residual(), s.tangency_residual());
}

template <class State, class Step, class Energy, class Residual>
Trajectory<State> run(const State& initial, const IntegratorConfig& cfg,
                      const TrackedList<State>& tracked, Step step, Energy energy,
                      Residual residual) {
  cfg.validate();
  Trajectory<State> traj;
  for (const auto& [name, fn] : tracked) traj.integral_names.push_back(name);
  const std::size_t steps = cfg.step_count();
  const auto stride = static_cast<std::size_t>(cfg.sample_stride);
  traj.times.reserve(cfg.sample_count());
  traj.states.reserve(cfg.sample_count());
  traj.diagnostics.reserve(cfg.sample_count());

  auto record = [&](std::size_t i, const State& s) {
    Diagnostics d;
    d.energy = energy(s);
    d.constraint_residual = residual(s);
    d.integrals.reserve(tracked.size());
    for (const auto& [name, fn] : tracked) d.integrals.push_back(fn(s));
    traj.times.push_back(static_cast<double>(i) * cfg.dt);
    traj.states.push_back(s);
    traj.diagnostics.push_back(std::move(d));
  };

  State s = initial;
  record(0, s);
  for (std::size_t i = 1; i <= steps; ++i) {
    try {
      s = step(s);
    } catch (const NumericalError& e) {
      throw IntegrationFailure(static_cast<double>(i - 1) * cfg.dt, e.what());
    }
    if (i % stride == 0) record(i, s);
  }
  return traj;
}

void require_scheme(const IntegratorConfig& cfg, Scheme expected) {
  if (cfg.scheme != expected) {
    throw DomainError("scheme " + to_string(cfg.scheme) + " does not apply; expected " +
                      to_string(expected));
  }
}

}  // namespace

Trajectory<SphereCotangent> integrate(const SphereCotangent& initial,
                                      const IntegratorConfig& cfg,
                                      const TrackedList<SphereCotangent>& tracked) {
  require_scheme(cfg, Scheme::exact_sphere);
  return run(
      initial, cfg, tracked, [&](const SphereCotangent& s) { return step_sphere_exact(s, cfg.dt); },
      [](const SphereCotangent& s) { return h2(s); }, sphere_residual);
}

Trajectory<NilCotangent> integrate(const NilCotangent& initial, const IntegratorConfig& cfg,
                                   const TrackedList<NilCotangent>& tracked) {
  require_scheme(cfg, Scheme::euler_arnold_nil);
  return run(
      initial, cfg, tracked, [&](const NilCotangent& s) { return step_nil_euler(s, cfg.dt); },
      [](const NilCotangent& s) { return h1(s); }, [](const NilCotangent&) { return 0.0; });
}

Trajectory<ProductState> integrate(const ProductState& initial, const IntegratorConfig& cfg,
                                   const TrackedList<ProductState>& tracked) {
  require_scheme(cfg, Scheme::split_product);
  return run(
      initial, cfg, tracked, [&](const ProductState& s) { return step_split_product(s, cfg.dt); },
      [](const ProductState& s) { return h1(s.nil) + h2(s.sphere); },
      [](const ProductState& s) { return sphere_residual(s.sphere); });
}

Trajectory<ReducedState> integrate(const ReducedHamiltonian& h, const ReducedState& initial,
                                   const IntegratorConfig& cfg,
                                   const TrackedList<ReducedState>& tracked) {
  require_scheme(cfg, Scheme::implicit_midpoint_chart);
  return run(
      initial, cfg, tracked,
      [&](const ReducedState& s) { return step_chart_midpoint(h, s, cfg.dt, cfg); },
      [&](const ReducedState& s) { return h.value(ReducedHamiltonian::pack(s)); },
      [](const ReducedState&) { return 0.0; });
}

Trajectory<NilCotangent> integrate(const NilChartHamiltonian& h, const NilCotangent& initial,
                                   const IntegratorConfig& cfg,
                                   const TrackedList<NilCotangent>& tracked) {
  require_scheme(cfg, Scheme::implicit_midpoint_chart);
  return run(
      initial, cfg, tracked,
      [&](const NilCotangent& s) { return step_chart_midpoint(h, s, cfg.dt, cfg); },
      [&](const NilCotangent& s) { return h.value(NilChartHamiltonian::pack(s)); },
      [](const NilCotangent&) { return 0.0; });
}

}  // namespace nilflow
