#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nilflow/states.hpp"
#include "nilflow/trajectory.hpp"

namespace nilflow {

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Columns: t, state components, H, then one column per tracked integral.
template <class State>
void write_trajectory_csv(std::ostream& os, const Trajectory<State>& traj);

}  // namespace nilflow
