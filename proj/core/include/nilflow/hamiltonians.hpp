#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "nilflow/reduction.hpp"

namespace nilflow {

/// Profile of the fibre metric on the reduced cover. The submersion kind is
/// the metric induced by the quotient; u-profiles give d r^2 + u(r)^2 (...)^2.
/// A u-profile must vanish at 0 and pi with u'(0) = 2 pi, u'(pi) = -2 pi and
/// odd expansions there.
class FiberProfile {
 public:
  enum class Kind { submersion, u_profile };
  using Fn = std::function<double(double)>;

  static FiberProfile submersion();
  /// u = 2 pi sin r: round totally geodesic fibres.
  static FiberProfile round();
  /// u = 2 pi sin r + sin^3 r: a non-round analytic example.
  static FiberProfile cubic();
  /// Custom profile; u2 (second derivative) is used by the Newton solver.
  static FiberProfile custom(std::string name, Fn u, Fn u1, Fn u2);
  /// Looks up "submersion", "round" or "cubic".
  static FiberProfile by_name(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  /// v(r), the squared norm of d/ds. Throws DomainError outside (0, pi).
  double coefficient(double r) const;

  /// 1/v and its first two derivatives, which is what the cometric needs.
  struct Inverse {
    double g, dg, d2g;
  };
  Inverse inverse(double r) const;

  /// One-sided difference check of the endpoint conditions.
  bool satisfies_endpoint_conditions(double tol = 1e-5) const;

 private:
  FiberProfile(Kind kind, std::string name, Fn u, Fn u1, Fn u2)
      : kind_(kind), name_(std::move(name)), u_(std::move(u)), u1_(std::move(u1)),
        u2_(std::move(u2)) {}

  Kind kind_;
  std::string name_;
  Fn u_, u1_, u2_;
};

enum class SystemTag { H1, H2, H1_variant, H_product, H_reduced };

struct HamiltonianId {
  SystemTag tag = SystemTag::H_product;
  FiberProfile profile = FiberProfile::submersion();
};

std::string to_string(SystemTag tag);
SystemTag system_tag_from_string(const std::string& name);

double h1(const NilCotangent& s);
double h2(const SphereCotangent& s);
/// 1/2 (p_r^2 + p_phi^2 / (2 pi sin r)^2).
double h2_polar(const PolarPoint& p);
/// (2 + sin 2 pi y) H1.
double h1_variant(const NilCotangent& s);
double fiber_coefficient(const FiberProfile& profile, double r);
double h_reduced(const ReducedState& s, const FiberProfile& profile);

/// (qdot, pdot) of H1 in the canonical (x, y, z) chart.
Eigen::Matrix<double, 6, 1> nil_vector_field(const NilCotangent& s);
/// (xi dot, p dot) of the constrained great-circle flow.
Eigen::Matrix<double, 6, 1> sphere_vector_field(const SphereCotangent& s);

/// Chart Hamiltonians used by the implicit midpoint scheme. Phase vectors are
/// laid out as (q_1..q_n, p_1..p_n); gradient and hessian are analytic.
class ReducedHamiltonian {
 public:
  static constexpr int kDof = 4;
  using Vector = Eigen::Matrix<double, 2 * kDof, 1>;
  using Matrix = Eigen::Matrix<double, 2 * kDof, 2 * kDof>;

  explicit ReducedHamiltonian(FiberProfile profile, EulerNumber k = EulerNumber{1})
      : profile_(std::move(profile)), k_(k) {}

  double value(const Vector& z) const;
  Vector gradient(const Vector& z) const;
  Matrix hessian(const Vector& z) const;
  /// Polar angle of the chart point, for pole checks.
  static double polar(const Vector& z) { return z(2); }

  static Vector pack(const ReducedState& s);
  ReducedState unpack(const Vector& z) const;
  const FiberProfile& profile() const noexcept { return profile_; }
  EulerNumber euler() const noexcept { return k_; }

 private:
  FiberProfile profile_;
  EulerNumber k_;
};

/// H1 or its (2 + sin 2 pi y) variant written in the canonical nil chart.
class NilChartHamiltonian {
 public:
  static constexpr int kDof = 3;
  using Vector = Eigen::Matrix<double, 2 * kDof, 1>;
  using Matrix = Eigen::Matrix<double, 2 * kDof, 2 * kDof>;

  explicit NilChartHamiltonian(bool variant, EulerNumber k = EulerNumber{1})
      : variant_(variant), k_(k) {}

  double value(const Vector& z) const;
  Vector gradient(const Vector& z) const;
  Matrix hessian(const Vector& z) const;
  static double polar(const Vector&) { return 0.5 * std::numbers::pi; }

  static Vector pack(const NilCotangent& s);
  NilCotangent unpack(const Vector& z) const;
  bool variant() const noexcept { return variant_; }

 private:
  bool variant_;
  EulerNumber k_;
};

/// Metric matrix of the reduced metric in (x, y, r, s) at a chart point.
Eigen::Matrix4d reduced_metric(double x, double y, double r, const FiberProfile& profile,
                               EulerNumber k = EulerNumber{1});

/// Metric matrix of the lifted product metric in (x, y, r, s, t), t = z.
Eigen::Matrix<double, 5, 5> lifted_metric(double x, double y, double r,
                                          EulerNumber k = EulerNumber{1});

/// The horizontal frame X, Y, R, S and the vertical T = d/dt in (x, y, r, s, t).
Eigen::Matrix<double, 5, 5> lifted_frame(double x, double y, double r,
                                         EulerNumber k = EulerNumber{1});

}  // namespace nilflow
