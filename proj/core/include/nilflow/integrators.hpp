#pragma once

#include <cstddef>
#include <string>

#include "nilflow/hamiltonians.hpp"
#include "nilflow/trajectory.hpp"

namespace nilflow {

enum class Scheme { exact_sphere, euler_arnold_nil, implicit_midpoint_chart, split_product };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 1.0;
  Scheme scheme = Scheme::split_product;
  double newton_tol = 1e-14;
  int newton_max_iter = 50;
  int sample_stride = 1;
  double pole_margin = kDefaultPoleMargin;

  /// Throws DomainError on a non-positive dt/t_max/stride or a newton_tol
  /// below ten machine epsilons.
  void validate() const;
  std::size_t step_count() const;
  /// floor(t_max / dt / sample_stride) + 1.
  std::size_t sample_count() const;
};

/// Closed-form great-circle flow; exact for any dt (negative included).
SphereCotangent step_sphere_exact(const SphereCotangent& s, double dt);

/// Closed-form left-invariant geodesic flow on N: (a, b) rotate at rate k c,
/// positions are the exact integrals of the reconstruction equations.
NilCotangent step_nil_euler(const NilCotangent& s, double dt);

/// Both factor flows; they commute, so this is the exact product flow.
ProductState step_split_product(const ProductState& s, double dt);

ReducedState step_chart_midpoint(const ReducedHamiltonian& h, const ReducedState& s,
                                 double dt, const IntegratorConfig& cfg);
NilCotangent step_chart_midpoint(const NilChartHamiltonian& h, const NilCotangent& s,
                                 double dt, const IntegratorConfig& cfg);

Trajectory<SphereCotangent> integrate(const SphereCotangent& initial,
                                      const IntegratorConfig& cfg,
                                      const TrackedList<SphereCotangent>& tracked = {});
Trajectory<NilCotangent> integrate(const NilCotangent& initial, const IntegratorConfig& cfg,
                                   const TrackedList<NilCotangent>& tracked = {});
Trajectory<ProductState> integrate(const ProductState& initial, const IntegratorConfig& cfg,
                                   const TrackedList<ProductState>& tracked = {});
Trajectory<ReducedState> integrate(const ReducedHamiltonian& h, const ReducedState& initial,
                                   const IntegratorConfig& cfg,
                                   const TrackedList<ReducedState>& tracked = {});
Trajectory<NilCotangent> integrate(const NilChartHamiltonian& h, const NilCotangent& initial,
                                   const IntegratorConfig& cfg,
                                   const TrackedList<NilCotangent>& tracked = {});

}  // namespace nilflow
