#include "nilflow/sphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nilflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double v) {
  double w = v - std::floor(v);
  return w >= 1.0 ? 0.0 : w;
}
}  // namespace

Eigen::Vector3d rotation_generator(int axis, const Eigen::Vector3d& xi) {
  return Eigen::Vector3d::Unit(axis).cross(xi);
}

double sphere_momentum(const SphereCotangent& s) {
  return s.p.dot(rotation_generator(0, s.xi));
}

double polar_angle(const Eigen::Vector3d& xi) {
  return std::atan2(std::hypot(xi.y(), xi.z()), xi.x());
}

PolarPoint polar_from_embedded(const SphereCotangent& s, double pole_margin) {
  const double r = polar_angle(s.xi);
  if (r < pole_margin || r > std::numbers::pi - pole_margin) {
    throw PoleProximity("sphere point at polar angle " + std::to_string(r) +
                        " is inside the pole margin");
  }
  const double angle = std::atan2(s.xi.z(), s.xi.y());
  const Eigen::Vector3d e_r(-std::sin(r), std::cos(r) * std::cos(angle),
                            std::cos(r) * std::sin(angle));
  PolarPoint out;
  out.r = r;
  out.phi = wrap_unit(angle / kTwoPi);
  out.p_r = s.p.dot(e_r);
  out.p_phi = kTwoPi * sphere_momentum(s);
  return out;
}

SphereCotangent embedded_from_polar(const PolarPoint& pp) {
  const double angle = kTwoPi * pp.phi;
  const double sr = std::sin(pp.r), cr = std::cos(pp.r);
  const double ca = std::cos(angle), sa = std::sin(angle);
  const Eigen::Vector3d e_r(-sr, cr * ca, cr * sa);
  const Eigen::Vector3d e_phi(0.0, -sa, ca);
  SphereCotangent out;
  out.xi = {cr, sr * ca, sr * sa};
  out.p = pp.p_r * e_r + (pp.p_phi / (kTwoPi * sr)) * e_phi;
  return out;
}

}  // namespace nilflow
