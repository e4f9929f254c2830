#include <doctest.h>

#include <nilflow/brackets.hpp>
#include <nilflow/drift.hpp>
#include <nilflow/fibration.hpp>
#include <nilflow/integrators.hpp>
#include <nilflow/lattice.hpp>
#include <nilflow/sampling.hpp>

#include "oracles.hpp"

using namespace nilflow;
using doctest::Approx;
using oracle::kPi;

namespace {

// Chart layout (x, y, z, r, phi, p_x, p_y, p_z, p_r, p_phi).
double chart_a(const ChartPoint& p) { return p[5] - 0.5 * p[1] * p[7]; }
double chart_b(const ChartPoint& p) { return p[6] + 0.5 * p[0] * p[7]; }

ProductState unit_energy_state(double a, double b, double c) {
  ProductState ps;
  ps.nil = NilCotangent::from_left({0.2, -0.3, 0.4}, {a, b, c});
  const double r = 1.0;
  const double w = 2 * kPi * std::sin(r);
  const double h2_target = 0.5 - 0.5 * (a * a + b * b + c * c);
  const double pr = std::sqrt(2 * h2_target - c * c / (w * w));
  ps.sphere = embedded_from_polar({r, 0.1, pr, c});
  return ps;
}

std::vector<ProductState> samples(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<ProductState> out;
  for (int i = 0; i < n; ++i) out.push_back(sample_regular_horizontal(rng));
  return out;
}

}  // namespace

TEST_CASE("integral evaluation examples") {
  ProductState ps;
  ps.nil = NilCotangent::from_left({0.0, 0.0, 0.3}, {0.4, 0.2, 0.01});
  CHECK(evaluate(IntegralId::f2, ps) == 0.0);
  CHECK(evaluate(IntegralId::f3, ps) == 0.0);
  CHECK(flat_factor(0.0) == 0.0);
  CHECK(flat_factor(kFlatThreshold * 0.999) == 0.0);
  CHECK(flat_factor(1.0) == Approx(std::exp(-1.0)));

  ps.nil = NilCotangent::from_left({0.0, 0.0, 0.0}, {1.0, 0.3, 1.0});
  CHECK(std::abs(evaluate(IntegralId::f2, ps)) < 1e-15);

  ps.nil = NilCotangent::from_left({0.0, 0.0, 0.7}, {0.4, -0.6, 0.8});
  CHECK(evaluate(IntegralId::nu1, ps) == Approx(0.4));
  CHECK(evaluate(IntegralId::nu2, ps) == Approx(-0.6));
  CHECK(evaluate(IntegralId::nu3, ps) == Approx(0.8));
  CHECK(evaluate(IntegralId::f1, ps) == Approx(0.8));
  CHECK(evaluate(IntegralId::H1, ps) == Approx(0.5 * (0.16 + 0.36 + 0.64)));

  for (IntegralId id : all_integrals()) CHECK(integral_from_string(to_string(id)) == id);
  CHECK_THROWS(integral_from_string("f9"));
  CHECK_THROWS_AS(evaluate(IntegralId::psi2, ps.nil), DomainError);
}

TEST_CASE("chart round trip") {
  for (const auto& s : samples(41, 20)) {
    const ProductState back = product_from_chart(chart_from_product(s));
    CHECK((back.nil.p - s.nil.p).norm() < 1e-12);
    CHECK((back.sphere.xi - s.sphere.xi).norm() < 1e-12);
    CHECK((back.sphere.p - s.sphere.p).norm() < 1e-12);
    for (IntegralId id : all_integrals()) {
      CHECK(observable(id)(chart_from_product(s)) == Approx(evaluate(id, s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bracket engine on canonical and left momenta") {
  const Observable x = [](const ChartPoint& p) { return p[0]; };
  const Observable px = [](const ChartPoint& p) { return p[5]; };
  const Observable py = [](const ChartPoint& p) { return p[6]; };
  const Observable a = chart_a, b = chart_b;
  const Observable c = [](const ChartPoint& p) { return p[7]; };
  for (const auto& s : samples(42, 20)) {
    const ChartPoint p = chart_from_product(s);
    CHECK(poisson_bracket(x, px, p) == Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(poisson_bracket(x, py, p)) < 1e-9);
    CHECK(std::abs(poisson_bracket(a, b, p) + c(p)) < 1e-6);
    CHECK(std::abs(poisson_bracket(a, a, p)) < 1e-12);
    for (IntegralId id : {IntegralId::f2, IntegralId::H, IntegralId::nu1}) {
      CHECK(std::abs(poisson_bracket(id, id, s)) < 1e-12);
    }
    CHECK(std::abs(poisson_bracket(IntegralId::f1, IntegralId::H1, s)) < 1e-7);
    CHECK(std::abs(poisson_bracket(IntegralId::psi, IntegralId::H, s)) < 1e-6);
    // antisymmetry
    CHECK(poisson_bracket(IntegralId::f2, IntegralId::f3, s) ==
          Approx(-poisson_bracket(IntegralId::f3, IntegralId::f2, s)).epsilon(1e-9));
  }
}

TEST_CASE("Leibniz rule") {
  const Observable F = observable(IntegralId::f2), G = observable(IntegralId::f3),
                   H = observable(IntegralId::nu2);
  const Observable GH = [&](const ChartPoint& p) { return G(p) * H(p); };
  for (const auto& s : samples(43, 20)) {
    const ChartPoint p = chart_from_product(s);
    const double lhs = poisson_bracket(F, GH, p);
    const double rhs = G(p) * poisson_bracket(F, H, p) + H(p) * poisson_bracket(F, G, p);
    CHECK(std::abs(lhs - rhs) < 1e-5);
  }
}

TEST_CASE("brackets refuse stencils near singular points") {
  ProductState s = samples(44, 1).front();
  s.nil.p.z() = 1e-6;
  CHECK_THROWS_AS(poisson_bracket(IntegralId::f1, IntegralId::H1, s), SingularProximity);
  ProductState pole = samples(45, 1).front();
  pole.sphere = embedded_from_polar({5e-5, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(poisson_bracket(IntegralId::f1, IntegralId::H1, pole), NumericalError);
  const Observable r = [](const ChartPoint& p) { return p[3]; };
  ChartPoint near{};
  near[3] = 5e-5;
  near[7] = 1.0;
  CHECK_THROWS_AS(poisson_bracket(r, r, near), SingularProximity);
}

TEST_CASE("commutation matrix") {
  const auto states = samples(46, 100);
  const std::vector<IntegralId> ids{IntegralId::H1, IntegralId::H2, IntegralId::f1, IntegralId::f2,
                                    IntegralId::f3};
  const auto reports = commutation_matrix(ids, states);
  CHECK(reports.size() == 10);
  bool f2f3_found = false;
  for (const auto& r : reports) {
    CHECK(r.samples() == 100);
    if (r.first == "f2" && r.second == "f3") {
      f2f3_found = true;
      CHECK_FALSE(r.asserted_commuting);
      CHECK(r.max_abs > 1e-3);
    } else {
      CHECK(r.asserted_commuting);
      CHECK(r.max_abs < 1e-6);
    }
  }
  CHECK(f2f3_found);
  CHECK(asserted_commuting(IntegralId::psi, IntegralId::H));
  CHECK_FALSE(asserted_commuting(IntegralId::f3, IntegralId::f2));
}

TEST_CASE("independence rank") {
  const std::vector<IntegralId> ids{IntegralId::H1, IntegralId::H2, IntegralId::f1, IntegralId::f2,
                                    IntegralId::f3};
  for (const auto& s : samples(47, 20)) {
    CHECK(independence_rank(ids, s) == 5);
    CHECK(independence_rank({IntegralId::H1, IntegralId::H1}, s) == 1);
  }
  ProductState s = samples(48, 1).front();
  const double c = s.nil.left().c;
  s.nil = NilCotangent::from_left(s.nil.q, {0.0, 0.0, c});
  CHECK(independence_rank(ids, s) <= 4);
}

TEST_CASE("drift report") {
  SUBCASE("constant trajectory") {
    ProductState ps;
    ps.sphere = embedded_from_polar({1.0, 0.2, 0.0, 0.0});
    IntegratorConfig cfg;
    cfg.t_max = 1.0;
    cfg.dt = 0.01;
    const std::vector<IntegralId> ids{IntegralId::H, IntegralId::psi, IntegralId::f2};
    const auto traj = integrate(ps, cfg, tracked_integrals<ProductState>(ids));
    for (const auto& d : drift_report(traj, ids)) CHECK(d.max_relative_drift == 0.0);
    CHECK_THROWS_AS(drift_report(traj, std::vector<std::string>{"H9"}), std::out_of_range);
  }
  SUBCASE("split product keeps the integrals") {
    const std::vector<IntegralId> ids{IntegralId::f1, IntegralId::f2, IntegralId::f3,
                                      IntegralId::psi, IntegralId::nu1, IntegralId::nu2};
    IntegratorConfig cfg;
    cfg.t_max = 1e3;
    cfg.sample_stride = 100;
    const auto traj =
        integrate(samples(49, 1).front(), cfg, tracked_integrals<ProductState>(ids));
    for (const auto& d : drift_report(traj, ids)) {
      INFO(d.name);
      CHECK(d.max_relative_drift < 1e-7);
    }
  }
  CHECK(relative_drift({2.0, 2.5, 1.0}) == Approx(0.5));
  CHECK(relative_drift({0.1, 0.3}) == Approx(0.2));
}

TEST_CASE("nu bound on the unit energy level") {
  const ProductState ps = unit_energy_state(0.6, 0.3, 0.5);
  CHECK(h1(ps.nil) + h2(ps.sphere) == Approx(0.5));
  CHECK(std::abs(anti_diagonal_momentum(ps)) < 1e-12);
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_max = 1e3;
  const auto traj = integrate(ps, cfg);
  const auto rep = nu_bound_check(traj);
  CHECK(rep.ok());
  // x = (b - nu2) / c, so the bound is attained whenever b and nu2 have opposite signs
  CHECK(rep.max_ratio <= 1.0 + 1e-12);
  CHECK(rep.max_ratio > 0.999);
  CHECK(rep.min_abs_c == Approx(0.5));
  CHECK_FALSE(rep.first_violation.has_value());
  // the explicit form with a, b bounded by one
  const double nu2 = evaluate(IntegralId::nu2, ps);
  for (const auto& s : traj.states) CHECK(std::abs(s.nil.q.x) <= (1 + std::abs(nu2)) / 0.5 + 1e-9);

  ProductState flat = unit_energy_state(0.6, 0.3, 0.0);
  CHECK_THROWS_AS(nu_bound_check(integrate(flat, cfg)), DomainError);
}

TEST_CASE("rescaled angle is the conserved one when k != 1") {
  NilCotangent s = NilCotangent::from_left({0.1, 0.2, 0.3}, {0.5, -0.4, 0.7}, EulerNumber{2});
  IntegratorConfig cfg;
  cfg.scheme = Scheme::euler_arnold_nil;
  cfg.t_max = 20.0;
  cfg.sample_stride = 100;
  const auto traj = integrate(s, cfg, tracked_integrals<NilCotangent>({IntegralId::f2}));
  double literal = 0.0, rescaled = 0.0;
  const auto f2 = traj.integral("f2");
  auto angle = [](const NilCotangent& t) {
    const auto m = t.left();
    return m.a / (t.k.value() * m.c) + t.q.y;
  };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    literal = std::max(literal, std::abs(f2[i] - f2[0]));
    rescaled = std::max(rescaled, std::abs(angle(traj.states[i]) - angle(s)));
  }
  CHECK(literal > 1e-2);
  CHECK(rescaled < 1e-10);
}

TEST_CASE("fibration angles descend to the quotient") {
  for (const auto& s : samples(50, 20)) {
    const auto v = fibration_value(FibrationKind::fprime1, s);
    for (auto gen : {LatticeGenerator::alpha, LatticeGenerator::beta, LatticeGenerator::gamma}) {
      ProductState t = s;
      t.nil = deck_action(gen, s.nil, -2);
      const auto w = fibration_value(FibrationKind::fprime1, t);
      for (int j = 0; j < 2; ++j) CHECK(std::abs(circular_difference(w.components[j], v.components[j])) < 1e-10);
      for (int j = 2; j < 5; ++j) CHECK(w.components[j] == Approx(v.components[j]).epsilon(1e-10));
    }
  }
}
