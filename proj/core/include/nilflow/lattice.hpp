#pragma once

#include "nilflow/states.hpp"

namespace nilflow {

/// Cotangent lift of left multiplication by gen^power. Positions follow the
/// BCH product; momenta are rebuilt so that (a, b, c) are unchanged.
NilCotangent deck_action(LatticeGenerator gen, const NilCotangent& state, long power = 1);

/// Unique Gamma-translate with x, y, z each in [0, 1). Idempotent.
NilCotangent reduce_mod_lattice(const NilCotangent& state);

}  // namespace nilflow
