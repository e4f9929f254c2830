#pragma once

// Arithmetic in the 3x3 unipotent (Heisenberg) group N and its lattice
// Gamma = <alpha, beta, gamma>, with log alpha = E12, log beta = E23 and
// log gamma = E13 / k.  Exponential coordinates (x, y, z) refer to the basis
// {log alpha, log beta, log gamma}, so [log alpha, log beta] = k log gamma.

#include <array>

#include "nilflow/errors.hpp"

namespace nilflow {

/// Euler number of the circle bundle; never zero.
class EulerNumber {
 public:
  constexpr EulerNumber() = default;
  constexpr explicit EulerNumber(int k) : k_(k) {
    if (k == 0) throw DomainError("Euler number must be nonzero");
  }
  constexpr int value() const noexcept { return k_; }
  constexpr double half() const noexcept { return 0.5 * k_; }
  friend constexpr bool operator==(EulerNumber, EulerNumber) = default;

 private:
  int k_ = 1;
};

struct NilAlgebraVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Upper triangular unipotent matrix [[1, m12, m13], [0, 1, m23], [0, 0, 1]].
struct NilElement {
  double m12 = 0.0;
  double m13 = 0.0;
  double m23 = 0.0;

  static constexpr NilElement identity() { return {}; }
  std::array<std::array<double, 3>, 3> matrix() const;
};

NilElement nil_mul(const NilElement& g, const NilElement& h);
NilElement nil_inverse(const NilElement& g);

// The series for exp/log terminate at the quadratic term, so both are exact.
NilElement nil_exp(const NilAlgebraVector& v, EulerNumber k);
NilAlgebraVector nil_log(const NilElement& g, EulerNumber k);

/// Exponential coordinates of exp(u) exp(v): u + v + 1/2 [u, v].
NilAlgebraVector bch_product(const NilAlgebraVector& u, const NilAlgebraVector& v,
                             EulerNumber k);

enum class LatticeGenerator { alpha, beta, gamma };

/// Exponential coordinates of a generator raised to an integer power.
NilAlgebraVector generator_log(LatticeGenerator gen, long power = 1);

}  // namespace nilflow
