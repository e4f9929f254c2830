#include <doctest.h>

#include <nilflow/fibration.hpp>
#include <nilflow/integrators.hpp>
#include <nilflow/lyapunov.hpp>
#include <nilflow/recurrence.hpp>
#include <nilflow/rotation.hpp>
#include <nilflow/sampling.hpp>

#include "oracles.hpp"

using namespace nilflow;
using doctest::Approx;
using oracle::kPi;

namespace {

ProductState regular_state(std::uint64_t seed, bool unit_energy = true) {
  Rng rng(seed);
  RegularSampleSpec spec;
  spec.unit_energy = unit_energy;
  return sample_regular_horizontal(rng, spec);
}

Trajectory<ProductState> flow(const ProductState& s, double dt, double t_max, int stride) {
  IntegratorConfig cfg;
  cfg.dt = dt;
  cfg.t_max = t_max;
  cfg.sample_stride = stride;
  return integrate(s, cfg);
}

ProductState reversed(ProductState s) {
  s.nil.p = -s.nil.p;
  s.sphere.p = -s.sphere.p;
  return s;
}

}  // namespace

TEST_CASE("fibration values") {
  ProductState ps;
  ps.nil = NilCotangent::from_left({0.0, 0.0, 0.0}, {1.0, 0.0, 1.0});
  ps.sphere = embedded_from_polar({kPi / 2, 0.0, 1.0, 1.0});
  const auto v = fibration_value(FibrationKind::fprime1, ps, 0.1);
  REQUIRE(v.components.size() == 5);
  CHECK(std::abs(circular_difference(v.components[0], 0.0)) < 1e-12);
  CHECK(std::abs(circular_difference(v.components[1], 0.0)) < 1e-12);
  CHECK(v.components[2] == Approx(1.0));
  // e2 = p_r^2 + p_phi^2 (1 / (2 pi)^2 - 1 / (2 pi)^2) = 1 on the equator
  CHECK(v.components[3] == Approx(1.0));
  CHECK(v.components[4] == Approx(1.0));
  CHECK(v.regular);
  CHECK(v.angle_count() == 2);
  const auto f1 = fibration_value(FibrationKind::f1, ps, 0.1);
  CHECK(f1.components.size() == 4);
  CHECK(f1.angle_count() == 1);

  ps.nil = NilCotangent::from_left({0.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
  const auto s = fibration_value(FibrationKind::fprime1, ps);
  CHECK(s.components[4] == 0.0);
  CHECK_FALSE(s.regular);

  ps.nil.p.z() = 0.5;
  CHECK_THROWS_AS(fibration_value(FibrationKind::fprime1, ps), NotHorizontal);
  CHECK(circular_difference(0.95, 0.05) == Approx(-0.1));
  CHECK(fibration_from_string(to_string(FibrationKind::f1)) == FibrationKind::f1);
}

TEST_CASE("fibration is conserved and of full rank on regular samples") {
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const ProductState s = sample_regular_horizontal(rng);
    CHECK(rank_of_fibration(FibrationKind::fprime1, s) == 5);
    CHECK(rank_of_fibration(FibrationKind::f1, s) == 4);
  }
  const auto traj = flow(regular_state(52), 1e-3, 100.0, 100);
  for (auto kind : {FibrationKind::fprime1, FibrationKind::f1}) {
    for (const auto& d : fibration_drift(kind, traj)) {
      INFO(d.name);
      CHECK(d.max_relative_drift < 1e-10);
    }
  }
  ProductState s = regular_state(53);
  s.nil = NilCotangent::from_left(s.nil.q, {0.0, 0.0, s.nil.left().c});
  CHECK(rank_of_fibration(FibrationKind::fprime1, s) < 5);
}

TEST_CASE("rotation vector of simple flows") {
  SUBCASE("equatorial great circle") {
    const double omega = 1.7;
    SphereCotangent s;
    s.xi = Eigen::Vector3d::UnitY();
    s.p = omega * Eigen::Vector3d::UnitX().cross(s.xi);
    IntegratorConfig cfg;
    cfg.scheme = Scheme::exact_sphere;
    cfg.dt = 0.01;
    cfg.t_max = 50.0;
    const auto traj = integrate(s, cfg);
    std::vector<double> phi;
    for (const auto& st : traj.states) phi.push_back(polar_from_embedded(st).phi);
    const auto est = rotation_vector(traj.times, {phi}, {"phi"});
    CHECK(est.frequencies[0] == Approx(omega / (2 * kPi)).epsilon(1e-10));
    CHECK(est.residual < 1e-10);
    CHECK(est.window == Approx(50.0));
  }
  SUBCASE("straight line on the nil factor") {
    ProductState ps;
    ps.nil = NilCotangent::from_left({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    ps.sphere = embedded_from_polar({1.0, 0.0, 0.0, 0.0});
    const auto traj = flow(ps, 0.01, 20.0, 1);
    std::vector<double> x, y;
    for (const auto& s : traj.states) {
      x.push_back(angle_x().fn(s));
      y.push_back(angle_y().fn(s));
    }
    const auto est = rotation_vector(traj.times, {x, y}, {"x", "y"});
    CHECK(est.frequencies[0] == Approx(1.0));
    CHECK(std::abs(est.frequencies[1]) < 1e-12);
  }
  SUBCASE("uniform angles on a regular fibre") {
    const ProductState s = regular_state(54);
    const auto traj = flow(s, 1e-2, 200.0, 10);
    const auto est = rotation_vector(
        traj, {angle_nil_phase(), angle_sphere_phase(s.sphere), angle_fibre()}, 1e-6, 0.1);
    CHECK(est.residual < 1e-4);
    CHECK(est.names.size() == 3);
    const auto m = s.nil.left();
    // a' = -k c b, b' = k c a
    CHECK(est.frequencies[0] == Approx(m.c / (2 * kPi)).epsilon(1e-8));
    CHECK(std::abs(est.frequencies[1]) == Approx(s.sphere.p.norm() / (2 * kPi)).epsilon(1e-8));
    CHECK(est.frequencies[2] == Approx(m.c + 0.5 * (m.a * m.a + m.b * m.b) / m.c).epsilon(1e-8));
  }
  SUBCASE("rejections") {
    ProductState flat;
    flat.nil = NilCotangent::from_left({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    flat.sphere = embedded_from_polar({1.0, 0.0, 0.3, 0.0});
    CHECK_THROWS_AS(rotation_vector(flow(flat, 0.01, 1.0, 1), {angle_x()}), NotOnRegularFiber);
    CHECK_THROWS_AS(angle_fibre().fn(flat), DomainError);
    // undersampled: the angle moves half a turn per sample
    std::vector<double> t{0, 1, 2, 3}, a{0.0, 0.5, 0.0, 0.5};
    CHECK_THROWS_AS(rotation_vector(t, {a}, {"a"}), DomainError);
  }
}

TEST_CASE("minimality heuristic") {
  auto estimate = [](std::vector<double> w, double residual) {
    RotationEstimate e;
    e.frequencies = std::move(w);
    e.residuals.assign(e.frequencies.size(), residual);
    e.residual = residual;
    e.window = 1e4;
    e.names.assign(e.frequencies.size(), "w");
    return e;
  };
  CHECK(minimality_heuristic(estimate({1.0, std::sqrt(2.0), std::sqrt(3.0)}, 1e-10), 1e-3) ==
        MinimalityVerdict::likely_minimal);
  CHECK(minimality_heuristic(estimate({1.0, 0.5, 0.25}, 1e-10), 1e-3) ==
        MinimalityVerdict::resonant);
  CHECK(minimality_heuristic(estimate({1.0, 0.0, std::sqrt(2.0)}, 1e-10), 1e-3) ==
        MinimalityVerdict::resonant);
  CHECK(minimality_heuristic(estimate({1.0, std::sqrt(2.0)}, 0.1), 1e-3) ==
        MinimalityVerdict::inconclusive);
  CHECK(to_string(MinimalityVerdict::likely_minimal) == "likely-minimal");

  // measured on a flow
  const ProductState s = regular_state(55);
  const auto traj = flow(s, 1e-2, 500.0, 10);
  const auto est = rotation_vector(
      traj, {angle_nil_phase(), angle_sphere_phase(s.sphere), angle_fibre()}, 1e-6, 0.1);
  CHECK(minimality_heuristic(est, 1e-3) != MinimalityVerdict::inconclusive);
}

TEST_CASE("first_return") {
  const std::vector<double> t{0, 1, 2, 3, 4, 5};
  CHECK(*first_return(t, {0.0, 0.2, 0.6, 0.8, 0.4, 0.1}, 0.5) == 4.0);
  CHECK_FALSE(first_return(t, {0.0, 0.2, 0.6, 0.8, 0.9, 0.7}, 0.5).has_value());
  CHECK_FALSE(first_return(t, {0.0, 0.1, 0.2, 0.1, 0.0, 0.1}, 0.5).has_value());
}

TEST_CASE("recurrence") {
  RecurrenceConfig cfg;
  cfg.epsilons = {0.5};
  cfg.t_max = 2e3;

  ProductState flat = regular_state(56);
  flat.nil = NilCotangent::from_left(flat.nil.q, {0.3, 0.2, 0.0});
  CHECK_THROWS_AS(recurrence_stat(flat, cfg), DomainError);

  const ProductState s = regular_state(57);
  CHECK(cover_distance(s, s) == 0.0);
  ProductState shifted = s;
  shifted.nil.q.z += 1.0;
  CHECK(cover_distance(s, shifted) < 1e-12);

  const auto rep = recurrence_stat(s, cfg);
  REQUIRE(rep.table.size() == 1);
  REQUIRE(rep.table[0].forward.has_value());
  REQUIRE(rep.table[0].backward.has_value());
  CHECK(*rep.table[0].forward <= cfg.t_max);

  // running the reversed state forward replays the backward orbit
  cfg.t_max = *rep.table[0].backward + 1.0;
  const auto rev = recurrence_stat(reversed(s), cfg);
  REQUIRE(rev.table[0].forward.has_value());
  CHECK(*rev.table[0].forward == Approx(*rep.table[0].backward).epsilon(1e-9));
}

TEST_CASE("lyapunov estimates") {
  SUBCASE("log spaced checkpoints") {
    const auto c = log_checkpoints(100.0, 1e4, 2);
    REQUIRE(c.size() == 5);
    CHECK(c.front() == Approx(100.0));
    CHECK(c[1] == Approx(100.0 * std::sqrt(10.0)));
    CHECK(c.back() == Approx(1e4));
  }
  SUBCASE("flat motion grows polynomially") {
    ProductState s;
    s.nil = NilCotangent::from_left({0.1, 0.2, 0.3}, {0.6, 0.4, 0.0});
    s.sphere = embedded_from_polar({1.0, 0.0, 0.0, 0.0});
    LyapunovConfig cfg;
    cfg.t_max = 1e3;
    cfg.checkpoints = log_checkpoints(10.0, 1e3, 2);
    const auto lam = lyapunov_max(s, cfg);
    REQUIRE(lam.size() == cfg.checkpoints.size());
    for (const auto& p : lam) {
      if (p.t >= 100.0) CHECK(p.lambda <= 3 * std::log(p.t) / p.t);
    }
  }
  SUBCASE("regular state") {
    const ProductState s = regular_state(58);
    LyapunovConfig cfg;
    cfg.t_max = 1e4;
    cfg.checkpoints = log_checkpoints(100.0, 1e4, 2);
    const auto lam = lyapunov_max(s, cfg);
    REQUIRE(lam.size() == 5);
    CHECK(lam.back().lambda < 5e-3);
    for (std::size_t i = 1; i < lam.size(); ++i) CHECK(lam[i].lambda < lam[i - 1].lambda);

    // insensitive to the initial separation
    cfg.separation *= 2;
    const auto lam2 = lyapunov_max(s, cfg);
    CHECK(std::abs(lam2.back().lambda - lam.back().lambda) < 0.2 * lam.back().lambda);
    // deterministic for a fixed seed
    cfg.separation /= 2;
    CHECK(lyapunov_max(s, cfg).back().lambda == lam.back().lambda);
  }
}
