#pragma once
// Test-side reference computations, written independently of the library's
// closed forms: plain matrices, finite differences and a classical RK4.

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// Unipotent group by explicit matrices; log/exp by the terminating series.
inline Eigen::Matrix3d unipotent(double m12, double m13, double m23) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 1) = m12;
  m(0, 2) = m13;
  m(1, 2) = m23;
  return m;
}

inline Eigen::Matrix3d algebra(double x, double y, double z, int k) {
  Eigen::Matrix3d X = Eigen::Matrix3d::Zero();
  X(0, 1) = x;
  X(1, 2) = y;
  X(0, 2) = z / k;
  return X;
}

inline Eigen::Matrix3d mexp(const Eigen::Matrix3d& X) {
  return Eigen::Matrix3d::Identity() + X + 0.5 * X * X;
}

inline Eigen::Matrix3d mlog(const Eigen::Matrix3d& M) {
  const Eigen::Matrix3d N = M - Eigen::Matrix3d::Identity();
  return N - 0.5 * N * N;
}

inline Eigen::Vector3d coords(const Eigen::Matrix3d& X, int k) {
  return {X(0, 1), X(1, 2), X(0, 2) * k};
}

// Central difference gradient and hessian of a scalar function.
template <int N>
Eigen::Matrix<double, N, 1> fd_gradient(const std::function<double(const Eigen::Matrix<double, N, 1>&)>& f,
                                        Eigen::Matrix<double, N, 1> z, double h = 1e-6) {
  Eigen::Matrix<double, N, 1> g;
  for (int i = 0; i < N; ++i) {
    const double z0 = z(i);
    z(i) = z0 + h;
    const double fp = f(z);
    z(i) = z0 - h;
    const double fm = f(z);
    z(i) = z0;
    g(i) = (fp - fm) / (2 * h);
  }
  return g;
}

// Product metric of the nilmanifold and the round sphere in the coordinates
// (x, y, z, r, phi), with contact form dz - (k/2)(x dy - y dx).
inline Eigen::Matrix<double, 5, 5> product_metric(double x, double y, double r, int k) {
  Eigen::Matrix<double, 5, 5> g = Eigen::Matrix<double, 5, 5>::Zero();
  Eigen::Matrix<double, 5, 1> theta;
  theta << 0.5 * k * y, -0.5 * k * x, 1.0, 0.0, 0.0;
  g(0, 0) = g(1, 1) = 1.0;
  g += theta * theta.transpose();
  g(3, 3) = 1.0;
  g(4, 4) = 4 * kPi * kPi * std::sin(r) * std::sin(r);
  return g;
}

// The same metric in (x, y, r, s, t) with z = t, phi = s - t.
inline Eigen::Matrix<double, 5, 5> product_metric_st(double x, double y, double r, int k) {
  Eigen::Matrix<double, 5, 5> J = Eigen::Matrix<double, 5, 5>::Zero();
  J(0, 0) = 1;  // x
  J(1, 1) = 1;  // y
  J(2, 4) = 1;  // z = t
  J(3, 2) = 1;  // r
  J(4, 3) = 1;  // phi = s - t
  J(4, 4) = -1;
  return J.transpose() * product_metric(x, y, r, k) * J;
}

// Classical RK4 for autonomous systems.
template <class V, class F>
V rk4(const F& f, V y, double t, int steps) {
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const V k1 = f(y);
    const V k2 = f(V(y + 0.5 * h * k1));
    const V k3 = f(V(y + 0.5 * h * k2));
    const V k4 = f(V(y + h * k3));
    y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

// Hamilton's equations of H1 in the canonical (x, y, z) chart, derived by hand
// from H1 = 1/2 (a^2 + b^2 + c^2), a = px - (k/2) y pz, b = py + (k/2) x pz.
inline Eigen::Matrix<double, 6, 1> nil_field(const Eigen::Matrix<double, 6, 1>& s, int k) {
  const double h = 0.5 * k;
  const double x = s(0), y = s(1), px = s(3), py = s(4), pz = s(5);
  const double a = px - h * y * pz, b = py + h * x * pz;
  Eigen::Matrix<double, 6, 1> d;
  d << a, b, pz + h * (x * b - y * a), -h * pz * b, h * pz * a, 0.0;
  return d;
}

}  // namespace oracle
