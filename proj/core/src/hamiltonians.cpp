#include "nilflow/hamiltonians.hpp"

#include <cmath>
#include <numbers>

namespace nilflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

void require_open_interval(double r) {
  if (!(r > 0.0 && r < kPi)) {
    throw DomainError("polar angle " + std::to_string(r) + " outside (0, pi)");
  }
}
}  // namespace

// ---------------------------------------------------------------------------
// FiberProfile

FiberProfile FiberProfile::submersion() {
  return FiberProfile(Kind::submersion, "submersion", nullptr, nullptr, nullptr);
}

FiberProfile FiberProfile::round() {
  return FiberProfile(
      Kind::u_profile, "round", [](double r) { return kTwoPi * std::sin(r); },
      [](double r) { return kTwoPi * std::cos(r); },
      [](double r) { return -kTwoPi * std::sin(r); });
}

FiberProfile FiberProfile::cubic() {
  return FiberProfile(
      Kind::u_profile, "cubic",
      [](double r) {
        const double s = std::sin(r);
        return kTwoPi * s + s * s * s;
      },
      [](double r) {
        const double s = std::sin(r), c = std::cos(r);
        return kTwoPi * c + 3.0 * s * s * c;
      },
      [](double r) {
        const double s = std::sin(r), c = std::cos(r);
        return -kTwoPi * s + 6.0 * s * c * c - 3.0 * s * s * s;
      });
}

FiberProfile FiberProfile::custom(std::string name, Fn u, Fn u1, Fn u2) {
  return FiberProfile(Kind::u_profile, std::move(name), std::move(u), std::move(u1),
                      std::move(u2));
}

FiberProfile FiberProfile::by_name(const std::string& name) {
  if (name == "submersion") return submersion();
  if (name == "round") return round();
  if (name == "cubic") return cubic();
  throw DomainError("unknown fiber profile '" + name + "'");
}

double FiberProfile::coefficient(double r) const {
  require_open_interval(r);
  if (kind_ == Kind::submersion) {
    const double s = std::sin(r);
    const double w2 = kFourPiSq * s * s;
    return w2 / (1.0 + w2);
  }
  const double u = u_(r);
  return u * u;
}

FiberProfile::Inverse FiberProfile::inverse(double r) const {
  require_open_interval(r);
  const double s = std::sin(r), c = std::cos(r);
  if (kind_ == Kind::submersion) {
    // 1/v = 1 + 1 / (4 pi^2 sin^2 r)
    const double s2 = s * s;
    return {1.0 + 1.0 / (kFourPiSq * s2), -2.0 * c / (kFourPiSq * s2 * s),
            (2.0 * s2 + 6.0 * c * c) / (kFourPiSq * s2 * s2)};
  }
  const double u = u_(r), u1 = u1_(r), u2 = u2_(r);
  const double inv = 1.0 / u;
  const double inv2 = inv * inv;
  return {inv2, -2.0 * u1 * inv2 * inv, -2.0 * u2 * inv2 * inv + 6.0 * u1 * u1 * inv2 * inv2};
}

bool FiberProfile::satisfies_endpoint_conditions(double tol) const {
  if (kind_ == Kind::submersion) return true;
  const double h = 1e-7;
  const bool vanishes = std::abs(u_(0.0)) < tol && std::abs(u_(kPi)) < tol;
  const double left = (u_(h) - u_(0.0)) / h;
  const double right = (u_(kPi) - u_(kPi - h)) / h;
  return vanishes && std::abs(left - kTwoPi) < tol && std::abs(right + kTwoPi) < tol;
}

std::string to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::H1: return "nil";
    case SystemTag::H2: return "sphere";
    case SystemTag::H1_variant: return "nil-variant";
    case SystemTag::H_product: return "product";
    case SystemTag::H_reduced: return "reduced";
  }
  return "unknown";
}

SystemTag system_tag_from_string(const std::string& name) {
  if (name == "nil") return SystemTag::H1;
  if (name == "sphere") return SystemTag::H2;
  if (name == "nil-variant") return SystemTag::H1_variant;
  if (name == "product") return SystemTag::H_product;
  if (name == "reduced") return SystemTag::H_reduced;
  throw DomainError("unknown system '" + name + "'");
}

// ---------------------------------------------------------------------------
// Scalar Hamiltonians

double h1(const NilCotangent& s) {
  const LeftMomenta m = s.left();
  return 0.5 * (m.a * m.a + m.b * m.b + m.c * m.c);
}

double h2(const SphereCotangent& s) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double v = s.p.dot(rotation_generator(i, s.xi));
    sum += v * v;
  }
  return 0.5 * sum;
}

double h2_polar(const PolarPoint& p) {
  require_open_interval(p.r);
  const double w = kTwoPi * std::sin(p.r);
  return 0.5 * (p.p_r * p.p_r + p.p_phi * p.p_phi / (w * w));
}

double h1_variant(const NilCotangent& s) {
  return (2.0 + std::sin(kTwoPi * s.q.y)) * h1(s);
}

double fiber_coefficient(const FiberProfile& profile, double r) {
  return profile.coefficient(r);
}

double h_reduced(const ReducedState& s, const FiberProfile& profile) {
  return ReducedHamiltonian(profile, s.k).value(ReducedHamiltonian::pack(s));
}

Eigen::Matrix<double, 6, 1> nil_vector_field(const NilCotangent& s) {
  const LeftMomenta m = s.left();
  const double h = s.k.half();
  Eigen::Matrix<double, 6, 1> out;
  out << m.a, m.b, m.c + h * (s.q.x * m.b - s.q.y * m.a),  //
      -h * m.b * m.c, h * m.a * m.c, 0.0;
  return out;
}

Eigen::Matrix<double, 6, 1> sphere_vector_field(const SphereCotangent& s) {
  Eigen::Matrix<double, 6, 1> out;
  out.head<3>() = s.p;
  out.tail<3>() = -s.p.squaredNorm() * s.xi;
  return out;
}

// ---------------------------------------------------------------------------
// Reduced chart: z = (x, y, r, s, p_x, p_y, p_r, p_s)
//   H = 1/2 (A^2 + B^2 + p_r^2 + p_s^2 / v(r)),
//   A = p_x - (k/2) y p_s,  B = p_y + (k/2) x p_s.

double ReducedHamiltonian::value(const Vector& z) const {
  const double h = k_.half();
  const double A = z(4) - h * z(1) * z(7);
  const double B = z(5) + h * z(0) * z(7);
  const auto inv = profile_.inverse(z(2));
  return 0.5 * (A * A + B * B + z(6) * z(6) + z(7) * z(7) * inv.g);
}

ReducedHamiltonian::Vector ReducedHamiltonian::gradient(const Vector& z) const {
  const double h = k_.half();
  const double ps = z(7);
  const double A = z(4) - h * z(1) * ps;
  const double B = z(5) + h * z(0) * ps;
  const auto inv = profile_.inverse(z(2));
  Vector g;
  g << B * h * ps, -A * h * ps, 0.5 * ps * ps * inv.dg, 0.0,  //
      A, B, z(6), -A * h * z(1) + B * h * z(0) + ps * inv.g;
  return g;
}

ReducedHamiltonian::Matrix ReducedHamiltonian::hessian(const Vector& z) const {
  const double h = k_.half();
  const double ps = z(7);
  const double A = z(4) - h * z(1) * ps;
  const double B = z(5) + h * z(0) * ps;
  const auto inv = profile_.inverse(z(2));

  Vector dA = Vector::Zero(), dB = Vector::Zero();
  dA(4) = 1.0;
  dA(1) = -h * ps;
  dA(7) = -h * z(1);
  dB(5) = 1.0;
  dB(0) = h * ps;
  dB(7) = h * z(0);

  Matrix H = dA * dA.transpose() + dB * dB.transpose();
  H(1, 7) += -A * h;
  H(7, 1) += -A * h;
  H(0, 7) += B * h;
  H(7, 0) += B * h;
  H(6, 6) += 1.0;
  H(7, 7) += inv.g;
  H(2, 7) += ps * inv.dg;
  H(7, 2) += ps * inv.dg;
  H(2, 2) += 0.5 * ps * ps * inv.d2g;
  return H;
}

ReducedHamiltonian::Vector ReducedHamiltonian::pack(const ReducedState& s) {
  Vector z;
  z << s.x, s.y, s.r, s.s, s.p_x, s.p_y, s.p_r, s.p_s;
  return z;
}

ReducedState ReducedHamiltonian::unpack(const Vector& z) const {
  ReducedState s;
  s.x = z(0);
  s.y = z(1);
  s.r = z(2);
  s.s = z(3);
  s.p_x = z(4);
  s.p_y = z(5);
  s.p_r = z(6);
  s.p_s = z(7);
  s.k = k_;
  return s;
}

// ---------------------------------------------------------------------------
// Nil chart: z = (x, y, z, p_x, p_y, p_z), H1 = 1/2 (A^2 + B^2 + p_z^2),
// optionally multiplied by m(y) = 2 + sin 2 pi y.

namespace {

struct NilParts {
  double A, B, value;
  NilChartHamiltonian::Vector grad;
  NilChartHamiltonian::Matrix hess;
};

NilParts nil_parts(const NilChartHamiltonian::Vector& z, double h) {
  using Vector = NilChartHamiltonian::Vector;
  const double pz = z(5);
  NilParts out;
  out.A = z(3) - h * z(1) * pz;
  out.B = z(4) + h * z(0) * pz;
  out.value = 0.5 * (out.A * out.A + out.B * out.B + pz * pz);
  out.grad << out.B * h * pz, -out.A * h * pz, 0.0, out.A, out.B,
      -out.A * h * z(1) + out.B * h * z(0) + pz;

  Vector dA = Vector::Zero(), dB = Vector::Zero();
  dA(3) = 1.0;
  dA(1) = -h * pz;
  dA(5) = -h * z(1);
  dB(4) = 1.0;
  dB(0) = h * pz;
  dB(5) = h * z(0);
  out.hess = dA * dA.transpose() + dB * dB.transpose();
  out.hess(1, 5) += -out.A * h;
  out.hess(5, 1) += -out.A * h;
  out.hess(0, 5) += out.B * h;
  out.hess(5, 0) += out.B * h;
  out.hess(5, 5) += 1.0;
  return out;
}

struct Modulation {
  double m, dm, d2m;
};

Modulation modulation(double y) {
  const double s = std::sin(kTwoPi * y), c = std::cos(kTwoPi * y);
  return {2.0 + s, kTwoPi * c, -kFourPiSq * s};
}

}  // namespace

double NilChartHamiltonian::value(const Vector& z) const {
  const NilParts p = nil_parts(z, k_.half());
  return variant_ ? modulation(z(1)).m * p.value : p.value;
}

NilChartHamiltonian::Vector NilChartHamiltonian::gradient(const Vector& z) const {
  const NilParts p = nil_parts(z, k_.half());
  if (!variant_) return p.grad;
  const Modulation mod = modulation(z(1));
  Vector g = mod.m * p.grad;
  g(1) += mod.dm * p.value;
  return g;
}

NilChartHamiltonian::Matrix NilChartHamiltonian::hessian(const Vector& z) const {
  const NilParts p = nil_parts(z, k_.half());
  if (!variant_) return p.hess;
  const Modulation mod = modulation(z(1));
  Vector ey = Vector::Zero();
  ey(1) = 1.0;
  Matrix H = mod.m * p.hess + mod.dm * (ey * p.grad.transpose() + p.grad * ey.transpose());
  H(1, 1) += mod.d2m * p.value;
  return H;
}

NilChartHamiltonian::Vector NilChartHamiltonian::pack(const NilCotangent& s) {
  Vector z;
  z << s.q.x, s.q.y, s.q.z, s.p.x(), s.p.y(), s.p.z();
  return z;
}

NilCotangent NilChartHamiltonian::unpack(const Vector& z) const {
  NilCotangent s;
  s.q = {z(0), z(1), z(2)};
  s.p = {z(3), z(4), z(5)};
  s.k = k_;
  return s;
}

// ---------------------------------------------------------------------------
// Metric matrices

Eigen::Matrix4d reduced_metric(double x, double y, double r, const FiberProfile& profile,
                               EulerNumber k) {
  const double h = k.half();
  const double v = profile.coefficient(r);
  // coframe dx, dy, dr, theta = ds - (k/2)(x dy - y dx)
  Eigen::Vector4d theta(h * y, -h * x, 0.0, 1.0);
  Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
  G(0, 0) = 1.0;
  G(1, 1) = 1.0;
  G(2, 2) = 1.0;
  G += v * theta * theta.transpose();
  return G;
}

Eigen::Matrix<double, 5, 5> lifted_metric(double x, double y, double r, EulerNumber k) {
  using Vec5 = Eigen::Matrix<double, 5, 1>;
  const double h = k.half();
  const double w = kTwoPi * std::sin(r);
  // coordinates (x, y, r, s, t)
  Vec5 contact, fibre;
  contact << h * y, -h * x, 0.0, 0.0, 1.0;  // dt - (k/2)(x dy - y dx)
  fibre << 0.0, 0.0, 0.0, 1.0, -1.0;        // ds - dt
  Eigen::Matrix<double, 5, 5> G = Eigen::Matrix<double, 5, 5>::Zero();
  G(0, 0) = 1.0;
  G(1, 1) = 1.0;
  G(2, 2) = 1.0;
  G += contact * contact.transpose() + w * w * fibre * fibre.transpose();
  return G;
}

Eigen::Matrix<double, 5, 5> lifted_frame(double x, double y, double r, EulerNumber k) {
  const double h = k.half();
  const double w = kTwoPi * std::sin(r);
  const double v = w * w / (1.0 + w * w);
  Eigen::Matrix<double, 5, 5> F = Eigen::Matrix<double, 5, 5>::Zero();
  // columns X, Y, R, S, T
  F.col(0) << 1.0, 0.0, 0.0, -h * y, -h * y;
  F.col(1) << 0.0, 1.0, 0.0, h * x, h * x;
  F.col(2) << 0.0, 0.0, 1.0, 0.0, 0.0;
  F.col(3) << 0.0, 0.0, 0.0, 1.0, v;
  F.col(4) << 0.0, 0.0, 0.0, 0.0, 1.0;
  return F;
}

}  // namespace nilflow
