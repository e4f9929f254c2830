#pragma once

#include <filesystem>
#include <string>

#include <nilflow/states.hpp>

#include "config.hpp"

namespace nilflow::app {

/// Writes via a sibling temporary file and a rename, so readers never see a
/// partial report.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// UTF-8 JSON with sorted keys (nlohmann's default object ordering), indented
/// and newline-terminated.
std::string dump_report(const Json& report);

Json to_json(const NilCotangent& s);
Json to_json(const SphereCotangent& s);
Json to_json(const ProductState& s);
Json to_json(const ReducedState& s);

/// Explicit initial states from config. Throw ConfigError on missing fields.
NilCotangent nil_from_json(const Json& j, EulerNumber k);
SphereCotangent sphere_from_json(const Json& j);
ProductState product_from_json(const Json& j, EulerNumber k);
ReducedState reduced_from_json(const Json& j, EulerNumber k);

}  // namespace nilflow::app
