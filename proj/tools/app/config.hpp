#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace nilflow::app {

using Json = nlohmann::json;

/// Any problem with the experiment configuration; the CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full default configuration. Its shape is the schema: a user config may only
/// use keys present here (except under "initial.state", which is free-form),
/// and each value must have the default's type.
const Json& default_config();

/// Recursively overlays `user` onto the defaults, rejecting unknown keys and
/// type mismatches.
Json merge_config(const Json& user);

/// Applies a "dotted.path=value" override. The value is parsed as JSON when
/// possible, otherwise taken as a string.
void apply_override(Json& cfg, const std::string& assignment);

/// Reads a JSON file; throws ConfigError on I/O or parse errors.
Json load_config_file(const std::string& path);

/// Checks cross-field constraints (seed present when sampling, known names).
void validate(const Json& cfg);

}  // namespace nilflow::app
