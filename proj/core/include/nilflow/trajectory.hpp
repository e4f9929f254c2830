#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilflow {

/// Per-sample record kept alongside the states.
struct Diagnostics {
  double energy = 0.0;
  /// max(| |xi| - 1 |, |<xi, p>|) for systems with a sphere factor, else 0.
  double constraint_residual = 0.0;
  std::vector<double> integrals;
};

template <class State>
using TrackedFn = std::function<double(const State&)>;

template <class State>
using TrackedList = std::vector<std::pair<std::string, TrackedFn<State>>>;

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<Diagnostics> diagnostics;
  std::vector<std::string> integral_names;

  std::size_t size() const noexcept { return times.size(); }

  /// Column of a tracked integral; throws std::out_of_range for unknown names.
  std::vector<double> integral(const std::string& name) const {
    for (std::size_t j = 0; j < integral_names.size(); ++j) {
      if (integral_names[j] != name) continue;
      std::vector<double> out;
      out.reserve(diagnostics.size());
      for (const auto& d : diagnostics) out.push_back(d.integrals[j]);
      return out;
    }
    throw std::out_of_range("integral '" + name + "' not tracked");
  }
};

}  // namespace nilflow
