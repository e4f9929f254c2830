#include "nilflow/reduction.hpp"

#include <cmath>
#include <string>

namespace nilflow {

double anti_diagonal_momentum(const ProductState& ps) {
  return ps.nil.p.z() - 2.0 * std::numbers::pi * sphere_momentum(ps.sphere);
}

ReducedState reduced_from_product(const ProductState& ps, double horizontal_tol,
                                  double pole_margin) {
  const double psi = anti_diagonal_momentum(ps);
  if (std::abs(psi) > horizontal_tol) {
    throw NotHorizontal("anti-diagonal momentum " + std::to_string(psi) +
                        " exceeds the horizontal tolerance");
  }
  const PolarPoint pol = polar_from_embedded(ps.sphere, pole_margin);
  ReducedState out;
  out.x = ps.nil.q.x;
  out.y = ps.nil.q.y;
  out.r = pol.r;
  out.s = ps.nil.q.z + pol.phi;
  out.p_x = ps.nil.p.x();
  out.p_y = ps.nil.p.y();
  out.p_r = pol.p_r;
  out.p_s = pol.p_phi;
  out.k = ps.nil.k;
  return out;
}

ProductState product_from_reduced(const ReducedState& rs, double t) {
  ProductState out;
  out.nil.q = {rs.x, rs.y, t};
  out.nil.p = {rs.p_x, rs.p_y, rs.p_s};
  out.nil.k = rs.k;
  out.sphere = embedded_from_polar({rs.r, rs.s - t, rs.p_r, rs.p_s});
  return out;
}

}  // namespace nilflow
