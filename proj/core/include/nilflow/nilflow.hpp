#pragma once

#include "nilflow/brackets.hpp"
#include "nilflow/csv.hpp"
#include "nilflow/drift.hpp"
#include "nilflow/errors.hpp"
#include "nilflow/fibration.hpp"
#include "nilflow/hamiltonians.hpp"
#include "nilflow/heisenberg.hpp"
#include "nilflow/integrals.hpp"
#include "nilflow/integrators.hpp"
#include "nilflow/lattice.hpp"
#include "nilflow/lyapunov.hpp"
#include "nilflow/recurrence.hpp"
#include "nilflow/reduction.hpp"
#include "nilflow/rotation.hpp"
#include "nilflow/sampling.hpp"
#include "nilflow/sphere.hpp"
#include "nilflow/states.hpp"
#include "nilflow/trajectory.hpp"
#include "nilflow/version.hpp"
