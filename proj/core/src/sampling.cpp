#include "nilflow/sampling.hpp"

#include <cmath>
#include <numbers>

#include "nilflow/hamiltonians.hpp"
#include "nilflow/reduction.hpp"

namespace nilflow {

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

bool acceptable(const ProductState& s, const RegularSampleSpec& spec) {
  const LeftMomenta m = s.nil.left();
  const double psi2 = sphere_momentum(s.sphere);
  const double e1 = m.a * m.a + m.b * m.b;
  const double e2 = 2.0 * h2(s.sphere) - psi2 * psi2;
  return std::abs(m.c) >= spec.c_min && std::abs(m.c) > spec.margin && e1 > spec.margin &&
         e2 > spec.margin;
}

}  // namespace

ProductState sample_regular_horizontal(Rng& rng, const RegularSampleSpec& spec) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const NilAlgebraVector q{rng.uniform(), rng.uniform(), rng.uniform()};
    LeftMomenta m{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                  rng.sign() * rng.uniform(spec.c_min, spec.c_max)};

    // Uniform area on the sphere band away from the poles.
    const double cos_lo = std::cos(std::numbers::pi - spec.pole_margin);
    const double cos_hi = std::cos(spec.pole_margin);
    PolarPoint pol;
    pol.r = std::acos(rng.uniform(cos_lo, cos_hi));
    pol.phi = rng.uniform();
    pol.p_r = rng.uniform(-1.0, 1.0);
    pol.p_phi = m.c;

    ProductState s;
    s.nil = NilCotangent::from_left(q, m, spec.k);
    s.sphere = embedded_from_polar(pol);

    if (spec.unit_energy) {
      const double energy = h1(s.nil) + h2(s.sphere);
      const double scale = 1.0 / std::sqrt(2.0 * energy);
      m = {m.a * scale, m.b * scale, m.c * scale};
      pol.p_r *= scale;
      pol.p_phi *= scale;
      s.nil = NilCotangent::from_left(q, m, spec.k);
      s.sphere = embedded_from_polar(pol);
    }
    if (acceptable(s, spec)) return s;
  }
  throw DomainError("regular sample spec is unsatisfiable");
}

ReducedState sample_regular_reduced(Rng& rng, const RegularSampleSpec& spec) {
  const ProductState s = sample_regular_horizontal(rng, spec);
  return reduced_from_product(s, 1e-12, 0.5 * spec.pole_margin);
}

}  // namespace nilflow
