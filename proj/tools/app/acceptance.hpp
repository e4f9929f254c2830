#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace nilflow::app {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  /// Human-readable measurement; may include wall time, so it is printed but
  /// never written to reports.
  std::string summary;
  /// Deterministic measurements and thresholds.
  Json details;
};

struct SuiteResult {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
  /// Deterministic JSON: seed, per-criterion pass flag and details.
  Json report() const;
};

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Runs AC1 to AC8, then repeats them to check that the serialized reports are
/// byte-identical (AC9). The callback fires as each criterion completes.
SuiteResult run_acceptance(std::uint64_t seed, const CriterionCallback& on_result = {});

/// The one-line form used by selftest and the acceptance test binary.
std::string format_line(const CriterionResult& r);

// Individual criteria, exposed for focused tests.
CriterionResult conservation_suite(std::uint64_t seed);
CriterionResult commutation_suite(std::uint64_t seed);
CriterionResult independence_suite(std::uint64_t seed);
CriterionResult submersion_suite(std::uint64_t seed);
CriterionResult cover_dynamics_suite(std::uint64_t seed);
CriterionResult entropy_suite(std::uint64_t seed);
CriterionResult fibration_suite(std::uint64_t seed);
CriterionResult integrator_suite(std::uint64_t seed);

}  // namespace nilflow::app
