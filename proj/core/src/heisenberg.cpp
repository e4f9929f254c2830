#include "nilflow/heisenberg.hpp"

#include <cmath>

#include "nilflow/lattice.hpp"

namespace nilflow {

std::array<std::array<double, 3>, 3> NilElement::matrix() const {
  return {{{1.0, m12, m13}, {0.0, 1.0, m23}, {0.0, 0.0, 1.0}}};
}

NilElement nil_mul(const NilElement& g, const NilElement& h) {
  return {g.m12 + h.m12, g.m13 + h.m13 + g.m12 * h.m23, g.m23 + h.m23};
}

NilElement nil_inverse(const NilElement& g) {
  return {-g.m12, g.m12 * g.m23 - g.m13, -g.m23};
}

NilElement nil_exp(const NilAlgebraVector& v, EulerNumber k) {
  // V = x E12 + y E23 + (z/k) E13, V^2 = x y E13, V^3 = 0.
  return {v.x, v.z / k.value() + 0.5 * v.x * v.y, v.y};
}

NilAlgebraVector nil_log(const NilElement& g, EulerNumber k) {
  return {g.m12, g.m23, k.value() * (g.m13 - 0.5 * g.m12 * g.m23)};
}

NilAlgebraVector bch_product(const NilAlgebraVector& u, const NilAlgebraVector& v,
                             EulerNumber k) {
  return {u.x + v.x, u.y + v.y, u.z + v.z + k.half() * (u.x * v.y - u.y * v.x)};
}

NilAlgebraVector generator_log(LatticeGenerator gen, long power) {
  const double n = static_cast<double>(power);
  switch (gen) {
    case LatticeGenerator::alpha: return {n, 0.0, 0.0};
    case LatticeGenerator::beta: return {0.0, n, 0.0};
    case LatticeGenerator::gamma: return {0.0, 0.0, n};
  }
  return {};
}

NilCotangent deck_action(LatticeGenerator gen, const NilCotangent& state, long power) {
  const LeftMomenta m = state.left();
  const NilAlgebraVector q = bch_product(generator_log(gen, power), state.q, state.k);
  return NilCotangent::from_left(q, m, state.k);
}

NilCotangent reduce_mod_lattice(const NilCotangent& state) {
  // alpha^n shifts z by (k/2) n y and beta^n by -(k/2) n x, so fix x, then y,
  // then the central coordinate z. A second pass catches x - floor(x)
  // rounding up to exactly 1.
  NilCotangent out = state;
  for (int pass = 0; pass < 2; ++pass) {
    const auto nx = static_cast<long>(std::floor(out.q.x));
    if (nx != 0) out = deck_action(LatticeGenerator::alpha, out, -nx);
  }
  for (int pass = 0; pass < 2; ++pass) {
    const auto ny = static_cast<long>(std::floor(out.q.y));
    if (ny != 0) out = deck_action(LatticeGenerator::beta, out, -ny);
  }
  for (int pass = 0; pass < 2; ++pass) {
    const auto nz = static_cast<long>(std::floor(out.q.z));
    if (nz != 0) out = deck_action(LatticeGenerator::gamma, out, -nz);
  }
  return out;
}

LeftMomenta NilCotangent::left() const {
  const double h = k.half();
  return {p.x() - h * q.y * p.z(), p.y() + h * q.x * p.z(), p.z()};
}

NilCotangent NilCotangent::from_left(const NilAlgebraVector& q, const LeftMomenta& m,
                                     EulerNumber k) {
  const double h = k.half();
  NilCotangent out;
  out.q = q;
  out.k = k;
  out.p = {m.a + h * q.y * m.c, m.b - h * q.x * m.c, m.c};
  return out;
}

}  // namespace nilflow
