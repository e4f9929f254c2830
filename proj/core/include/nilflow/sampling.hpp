#pragma once

// Seeded sampling. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard; the mapping to doubles is done here because the
// standard distributions are implementation-defined.

#include <cstdint>
#include <random>

#include "nilflow/states.hpp"

namespace nilflow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }
  /// Standard normal via Box-Muller (deterministic, unlike std::normal_distribution).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct RegularSampleSpec {
  double c_min = 0.5;
  double c_max = 1.5;
  /// Each of |c|, e1 = a^2 + b^2, e2 = 2 H2 - psi2^2 must exceed this.
  double margin = 0.1;
  /// Rescale momenta so that H1 + H2 = 1/2, keeping |c| >= c_min.
  bool unit_energy = false;
  /// Sphere points stay this far (radians) from the poles.
  double pole_margin = 0.2;
  EulerNumber k{1};
};

/// Horizontal product state (p_z = p_phi) off the singular set, with x, y, z
/// in [0, 1), a, b in [-1, 1] and |c| in [c_min, c_max] before rescaling.
ProductState sample_regular_horizontal(Rng& rng, const RegularSampleSpec& spec = {});

/// Reduced chart state obtained from a regular horizontal sample.
ReducedState sample_regular_reduced(Rng& rng, const RegularSampleSpec& spec = {});

}  // namespace nilflow
