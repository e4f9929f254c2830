#include "nilflow/integrals.hpp"

#include <cmath>
#include <numbers>

namespace nilflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Name {
  IntegralId id;
  const char* text;
};

constexpr std::array<Name, 13> kNames{{{IntegralId::f1, "f1"},
                                       {IntegralId::f2, "f2"},
                                       {IntegralId::f3, "f3"},
                                       {IntegralId::psi1, "psi1"},
                                       {IntegralId::psi2, "psi2"},
                                       {IntegralId::psi, "psi"},
                                       {IntegralId::nu1, "nu1"},
                                       {IntegralId::nu2, "nu2"},
                                       {IntegralId::nu3, "nu3"},
                                       {IntegralId::H1, "H1"},
                                       {IntegralId::H2, "H2"},
                                       {IntegralId::H1_variant, "H1_variant"},
                                       {IntegralId::H, "H"}}};
}  // namespace

std::string to_string(IntegralId id) {
  for (const auto& n : kNames) {
    if (n.id == id) return n.text;
  }
  return "unknown";
}

IntegralId integral_from_string(const std::string& name) {
  for (const auto& n : kNames) {
    if (name == n.text) return n.id;
  }
  throw DomainError("unknown integral '" + name + "'");
}

const std::vector<IntegralId>& all_integrals() {
  static const std::vector<IntegralId> ids = [] {
    std::vector<IntegralId> v;
    for (const auto& n : kNames) v.push_back(n.id);
    return v;
  }();
  return ids;
}

double flat_factor(double c) {
  if (std::abs(c) < kFlatThreshold) return 0.0;
  return std::exp(-1.0 / (c * c));
}

double evaluate(IntegralId id, const NilCotangent& s) {
  const LeftMomenta m = s.left();
  switch (id) {
    case IntegralId::f1:
    case IntegralId::psi1:
    case IntegralId::nu3: return m.c;
    case IntegralId::f2: {
      const double e = flat_factor(m.c);
      return e == 0.0 ? 0.0 : e * std::sin(kTwoPi * (m.a / m.c + s.q.y));
    }
    case IntegralId::f3: {
      const double e = flat_factor(m.c);
      return e == 0.0 ? 0.0 : e * std::sin(kTwoPi * (m.b / m.c - s.q.x));
    }
    case IntegralId::nu1: return m.a + m.c * s.q.y;
    case IntegralId::nu2: return m.b - m.c * s.q.x;
    case IntegralId::H1: return h1(s);
    case IntegralId::H1_variant: return h1_variant(s);
    default: break;
  }
  throw DomainError("integral " + to_string(id) + " is not defined on the nil factor");
}

double evaluate(IntegralId id, const SphereCotangent& s) {
  switch (id) {
    case IntegralId::psi2: return sphere_momentum(s);
    case IntegralId::H2: return h2(s);
    default: break;
  }
  throw DomainError("integral " + to_string(id) + " is not defined on the sphere factor");
}

double evaluate(IntegralId id, const ProductState& s) {
  switch (id) {
    case IntegralId::psi2:
    case IntegralId::H2: return evaluate(id, s.sphere);
    case IntegralId::psi: return anti_diagonal_momentum(s);
    case IntegralId::H: return h1(s.nil) + h2(s.sphere);
    default: return evaluate(id, s.nil);
  }
}

ChartPoint chart_from_product(const ProductState& s, double pole_margin) {
  const PolarPoint pol = polar_from_embedded(s.sphere, pole_margin);
  return {s.nil.q.x, s.nil.q.y, s.nil.q.z, pol.r,      pol.phi,
          s.nil.p.x(), s.nil.p.y(), s.nil.p.z(), pol.p_r, pol.p_phi};
}

ProductState product_from_chart(const ChartPoint& c, EulerNumber k) {
  ProductState s;
  s.nil.q = {c[0], c[1], c[2]};
  s.nil.p = {c[5], c[6], c[7]};
  s.nil.k = k;
  s.sphere = embedded_from_polar({c[3], c[4], c[8], c[9]});
  return s;
}

Observable observable(IntegralId id, EulerNumber k) {
  return [id, k](const ChartPoint& c) { return evaluate(id, product_from_chart(c, k)); };
}

}  // namespace nilflow
