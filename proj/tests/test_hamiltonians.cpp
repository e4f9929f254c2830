#include <doctest.h>

#include <nilflow/hamiltonians.hpp>
#include <nilflow/sampling.hpp>
#include <nilflow/sphere.hpp>

#include "oracles.hpp"

using namespace nilflow;
using doctest::Approx;
using oracle::kPi;

namespace {

// Quotient metric on (x, y, r, s): Schur complement of the vertical t block of
// the product metric.
Eigen::Matrix4d quotient_metric(double x, double y, double r, int k) {
  const auto G = oracle::product_metric_st(x, y, r, k);
  const Eigen::Matrix4d A = G.topLeftCorner<4, 4>();
  const Eigen::Vector4d b = G.topRightCorner<4, 1>();
  return A - b * b.transpose() / G(4, 4);
}

ReducedState random_reduced(Rng& rng, int k = 1) {
  ReducedState s;
  s.x = rng.uniform(-2, 2);
  s.y = rng.uniform(-2, 2);
  s.r = rng.uniform(0.1, kPi - 0.1);
  s.s = rng.uniform();
  s.p_x = rng.uniform(-1, 1);
  s.p_y = rng.uniform(-1, 1);
  s.p_r = rng.uniform(-1, 1);
  s.p_s = rng.uniform(-2, 2);
  s.k = EulerNumber{k};
  return s;
}

}  // namespace

TEST_CASE("h1") {
  NilCotangent s = NilCotangent::from_left({0.3, -0.2, 0.1}, {3, 4, 0});
  CHECK(h1(s) == Approx(12.5));
  s.p.setZero();
  CHECK(h1(s) == 0.0);
  // a, b, c are read off the canonical momenta
  NilCotangent t;
  t.q = {0.5, 2.0, 0.0};
  t.p = {1.0, 1.0, 2.0};
  const auto m = t.left();
  CHECK(m.a == Approx(1.0 - 0.5 * 2.0 * 2.0));
  CHECK(m.b == Approx(1.0 + 0.5 * 0.5 * 2.0));
  CHECK(m.c == Approx(2.0));
}

TEST_CASE("h2 in embedded and polar form") {
  SphereCotangent s;
  s.xi = Eigen::Vector3d::UnitX();
  s.p = Eigen::Vector3d::UnitY();
  CHECK(h2(s) == Approx(0.5));
  CHECK(h2_polar({kPi / 2, 0.0, 0.0, 2 * kPi}) == Approx(0.5));
  s.p.setZero();
  CHECK(h2(s) == 0.0);

  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const PolarPoint pp{rng.uniform(0.05, kPi - 0.05), rng.uniform(), rng.uniform(-2, 2),
                        rng.uniform(-3, 3)};
    CHECK(std::abs(h2(embedded_from_polar(pp)) - h2_polar(pp)) < 1e-10);
  }
}

TEST_CASE("h1_variant") {
  NilCotangent s = NilCotangent::from_left({0.1, 0.0, 0.2}, {0.3, -0.7, 1.1});
  const double base = h1(s);
  CHECK(h1_variant(s) == Approx(2 * base));
  s = NilCotangent::from_left({0.1, 0.25, 0.2}, {0.3, -0.7, 1.1});
  CHECK(h1_variant(s) == Approx(3 * base));
  s = NilCotangent::from_left({0.1, 0.75, 0.2}, {0.3, -0.7, 1.1});
  CHECK(h1_variant(s) == Approx(base));
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const auto t = NilCotangent::from_left({rng.uniform(), rng.uniform(), rng.uniform()},
                                           {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    CHECK(h1_variant(t) >= h1(t));
  }
}

TEST_CASE("fiber_coefficient") {
  const auto sub = FiberProfile::submersion();
  const double w2 = 4 * kPi * kPi;
  CHECK(fiber_coefficient(sub, kPi / 2) == Approx(w2 / (1 + w2)));
  CHECK(fiber_coefficient(FiberProfile::round(), kPi / 2) == Approx(w2));
  CHECK_THROWS_AS(fiber_coefficient(sub, 0.0), DomainError);
  CHECK_THROWS_AS(fiber_coefficient(sub, kPi), DomainError);
  CHECK_THROWS_AS(fiber_coefficient(sub, -0.1), DomainError);

  double prev = fiber_coefficient(sub, 0.5);
  for (double r = 0.25; r > 1e-6; r *= 0.5) {
    const double v = fiber_coefficient(sub, r);
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < 1e-9);

  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform(0.01, kPi - 0.01);
    const double w = 2 * kPi * std::sin(r);
    CHECK(fiber_coefficient(sub, r) == Approx(w * w / (1 + w * w)).epsilon(1e-14));
    const double u = w + std::pow(std::sin(r), 3);
    CHECK(fiber_coefficient(FiberProfile::cubic(), r) == Approx(u * u).epsilon(1e-14));
  }
}

TEST_CASE("profiles satisfy the endpoint conditions") {
  CHECK(FiberProfile::round().satisfies_endpoint_conditions());
  CHECK(FiberProfile::cubic().satisfies_endpoint_conditions());
  const auto bad = FiberProfile::custom(
      "bad", [](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
      [](double r) { return -std::sin(r); });
  CHECK_FALSE(bad.satisfies_endpoint_conditions());
  CHECK(FiberProfile::by_name("cubic").name() == "cubic");
  CHECK_THROWS(FiberProfile::by_name("nope"));
}

TEST_CASE("reduced cometric is the inverse of the quotient metric") {
  Rng rng(24);
  const auto sub = FiberProfile::submersion();
  for (int k : {1, 2}) {
    for (int i = 0; i < 100; ++i) {
      const ReducedState s = random_reduced(rng, k);
      const Eigen::Matrix4d G = quotient_metric(s.x, s.y, s.r, k);
      CHECK((G - reduced_metric(s.x, s.y, s.r, sub, EulerNumber{k})).cwiseAbs().maxCoeff() <
            1e-10);
      const Eigen::Vector4d p(s.p_x, s.p_y, s.p_r, s.p_s);
      const double ref = 0.5 * p.dot(G.inverse() * p);
      CHECK(std::abs(h_reduced(s, sub) - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("p_s = 0 decouples the fibre") {
  ReducedState s;
  s.x = 0.4;
  s.y = -1.3;
  s.r = 0.9;
  s.p_x = 0.3;
  s.p_y = -0.5;
  s.p_r = 0.7;
  for (const auto& prof : {FiberProfile::submersion(), FiberProfile::round(), FiberProfile::cubic()}) {
    CHECK(h_reduced(s, prof) == Approx(0.5 * (0.09 + 0.25 + 0.49)));
  }
  s.r = 0.0;
  CHECK_THROWS_AS(h_reduced(s, FiberProfile::submersion()), DomainError);
}

TEST_CASE("chart Hamiltonian derivatives match finite differences") {
  Rng rng(25);
  for (const auto& prof : {FiberProfile::submersion(), FiberProfile::round(), FiberProfile::cubic()}) {
    const ReducedHamiltonian H(prof, EulerNumber{2});
    using V = ReducedHamiltonian::Vector;
    const std::function<double(const V&)> f = [&](const V& z) { return H.value(z); };
    for (int i = 0; i < 20; ++i) {
      const V z = ReducedHamiltonian::pack(random_reduced(rng, 2));
      const V g = H.gradient(z);
      CHECK((g - oracle::fd_gradient<8>(f, z, 1e-5)).cwiseAbs().maxCoeff() < 1e-7);
      const auto Hs = H.hessian(z);
      for (int j = 0; j < 8; ++j) {
        const std::function<double(const V&)> gj = [&](const V& w) { return H.gradient(w)(j); };
        const auto fd = oracle::fd_gradient<8>(gj, z, 1e-5);
        CHECK((Hs.row(j).transpose() - fd).cwiseAbs().maxCoeff() <
              1e-6 * std::max(1.0, fd.cwiseAbs().maxCoeff()));
      }
    }
  }
  for (bool variant : {false, true}) {
    const NilChartHamiltonian H(variant, EulerNumber{1});
    using V = NilChartHamiltonian::Vector;
    const std::function<double(const V&)> f = [&](const V& z) { return H.value(z); };
    for (int i = 0; i < 20; ++i) {
      V z;
      for (int j = 0; j < 6; ++j) z(j) = rng.uniform(-1, 1);
      const auto s = H.unpack(z);
      CHECK(H.value(z) == Approx(variant ? h1_variant(s) : h1(s)));
      CHECK((H.gradient(z) - oracle::fd_gradient<6>(f, z, 1e-5)).cwiseAbs().maxCoeff() < 1e-7);
      const auto Hs = H.hessian(z);
      for (int j = 0; j < 6; ++j) {
        const std::function<double(const V&)> gj = [&](const V& w) { return H.gradient(w)(j); };
        CHECK((Hs.row(j).transpose() - oracle::fd_gradient<6>(gj, z, 1e-5)).cwiseAbs().maxCoeff() <
              1e-6);
      }
    }
  }
}

TEST_CASE("vector fields") {
  Rng rng(26);
  for (int k : {1, 3}) {
    for (int i = 0; i < 100; ++i) {
      NilCotangent s;
      s.q = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
      s.p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      s.k = EulerNumber{k};
      const auto X = nil_vector_field(s);
      const auto m = s.left();
      CHECK(X(0) == Approx(m.a));
      CHECK(X(1) == Approx(m.b));
      Eigen::Matrix<double, 6, 1> v;
      v << s.q.x, s.q.y, s.q.z, s.p.x(), s.p.y(), s.p.z();
      CHECK((X - oracle::nil_field(v, k)).cwiseAbs().maxCoeff() < 1e-14);
      // dH(X_H) = 0
      const NilChartHamiltonian H(false, EulerNumber{k});
      CHECK(std::abs(H.gradient(NilChartHamiltonian::pack(s)).dot(X)) < 1e-12);
    }
  }
  for (int i = 0; i < 100; ++i) {
    const SphereCotangent s = embedded_from_polar(
        {rng.uniform(0.1, 3.0), rng.uniform(), rng.uniform(-1, 1), rng.uniform(-3, 3)});
    const auto X = sphere_vector_field(s);
    CHECK((X.head<3>() - s.p).norm() < 1e-15);
    CHECK((X.tail<3>() + s.p.squaredNorm() * s.xi).norm() < 1e-14);
    // tangent to the constraint set and energy preserving
    CHECK(std::abs(s.xi.dot(X.head<3>())) < 1e-12);
    CHECK(std::abs(X.head<3>().dot(s.p) + s.xi.dot(X.tail<3>())) < 1e-12);
    CHECK(std::abs(s.p.dot(X.tail<3>())) < 1e-12);
  }
  const ReducedHamiltonian H(FiberProfile::submersion());
  for (int i = 0; i < 100; ++i) {
    const auto z = ReducedHamiltonian::pack(random_reduced(rng));
    const auto g = H.gradient(z);
    ReducedHamiltonian::Vector X;
    X << g.tail<4>(), -g.head<4>();
    CHECK(std::abs(g.dot(X)) < 1e-12);
  }
}

TEST_CASE("lifted metric and horizontal frame") {
  Rng rng(27);
  for (int k : {1, 2}) {
    for (int i = 0; i < 100; ++i) {
      const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2), r = rng.uniform(0.05, kPi - 0.05);
      const auto G = oracle::product_metric_st(x, y, r, k);
      CHECK((G - lifted_metric(x, y, r, EulerNumber{k})).cwiseAbs().maxCoeff() < 1e-10);
      const auto F = lifted_frame(x, y, r, EulerNumber{k});
      const auto gram = F.transpose() * G * F;
      const double w = 2 * kPi * std::sin(r);
      CHECK(gram(0, 0) == Approx(1.0).epsilon(1e-10));
      CHECK(gram(1, 1) == Approx(1.0).epsilon(1e-10));
      CHECK(gram(2, 2) == Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(gram(3, 3) - w * w / (1 + w * w)) < 1e-10);
      for (int j = 0; j < 4; ++j) CHECK(std::abs(gram(j, 4)) < 1e-10);
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) CHECK(std::abs(gram(a, b)) < 1e-10);
      }
    }
  }
}
