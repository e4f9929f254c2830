#include "config.hpp"

#include <cstdint>

#include <fstream>
#include <sstream>

#include <nilflow/fibration.hpp>
#include <nilflow/hamiltonians.hpp>
#include <nilflow/integrals.hpp>
#include <nilflow/integrators.hpp>

namespace nilflow::app {

namespace {

const char* kDefaults = R"({
  "system": "product",
  "k": 1,
  "profile": "submersion",
  "seed": null,
  "initial": {
    "mode": "random",
    "count": 1,
    "random": {
      "c_min": 0.5,
      "c_max": 1.5,
      "margin": 0.1,
      "unit_energy": false,
      "pole_margin": 0.2
    },
    "state": null
  },
  "integrator": {
    "scheme": "auto",
    "dt": 0.001,
    "t_max": 10.0,
    "newton_tol": 1e-14,
    "newton_max_iter": 50,
    "sample_stride": 1
  },
  "analysis": {
    "integrals": [],
    "samples": 100,
    "bracket_h": 1e-5,
    "fibration": "fprime1",
    "rotation": {
      "angles": ["nil_phase", "sphere_phase", "fibre"],
      "skip_fraction": 0.1,
      "fiber_tol": 1e-6,
      "tol": 1e-3
    },
    "recurrence": {
      "dt": 0.01,
      "t_max": 10000.0,
      "epsilons": [0.5, 0.2, 0.1],
      "min_abs_c": 0.1
    },
    "lyapunov": {
      "separation": 1e-8,
      "renorm_interval": 1.0,
      "dt": 0.1,
      "t_max": 10000.0,
      "checkpoints_from": 100.0,
      "per_decade": 2
    }
  },
  "output": {
    "dir": "nilflow-out"
  }
})";

bool is_free_form(const std::string& path) { return path == "initial.state" || path == "seed"; }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

bool compatible(const Json& def, const Json& val) {
  if (def.is_number()) {
    if (def.is_number_integer()) return val.is_number_integer();
    return val.is_number();
  }
  if (def.is_array()) return val.is_array();
  return def.type() == val.type();
}

void overlay(Json& base, const Json& user, const std::string& prefix) {
  if (!user.is_object()) throw ConfigError("'" + prefix + "' must be an object");
  for (auto it = user.begin(); it != user.end(); ++it) {
    const std::string path = join(prefix, it.key());
    if (!base.contains(it.key())) throw ConfigError("unknown config key '" + path + "'");
    Json& slot = base[it.key()];
    if (is_free_form(path)) {
      slot = *it;
    } else if (slot.is_object()) {
      overlay(slot, *it, path);
    } else if (!compatible(slot, *it)) {
      throw ConfigError("config key '" + path + "' expects " + std::string(slot.type_name()) +
                        ", got " + it->type_name());
    } else {
      slot = *it;
    }
  }
}

}  // namespace

const Json& default_config() {
  static const Json d = Json::parse(kDefaults);
  return d;
}

Json merge_config(const Json& user) {
  Json out = default_config();
  if (!user.is_null()) overlay(out, user, "");
  return out;
}

void apply_override(Json& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not KEY=VALUE");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  // Build a nested patch and merge it like a config file fragment.
  Json patch = value;
  std::string rest = key;
  std::vector<std::string> parts;
  for (std::size_t dot; (dot = rest.find('.')) != std::string::npos; rest = rest.substr(dot + 1)) {
    parts.push_back(rest.substr(0, dot));
  }
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError("override key '" + key + "' has an empty component");
    patch = Json{{*it, patch}};
  }
  overlay(cfg, patch, "");
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
  return j;
}

void validate(const Json& cfg) {
  const std::string system = cfg["system"];
  try {
    system_tag_from_string(system);
    FiberProfile::by_name(cfg["profile"]);
    fibration_from_string(cfg["analysis"]["fibration"]);
    for (const auto& name : cfg["analysis"]["integrals"]) integral_from_string(name);
    const std::string scheme = cfg["integrator"]["scheme"];
    if (scheme != "auto") scheme_from_string(scheme);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (cfg["k"].get<long>() == 0) throw ConfigError("k (Euler number) must be nonzero");
  const Json& seed = cfg["seed"];
  if (!seed.is_null() && !(seed.is_number_unsigned() ||
                           (seed.is_number_integer() && seed.get<std::int64_t>() >= 0))) {
    throw ConfigError("seed must be a non-negative integer");
  }
  const std::string mode = cfg["initial"]["mode"];
  if (mode != "random" && mode != "explicit") {
    throw ConfigError("initial.mode must be 'random' or 'explicit'");
  }
  if (mode == "random" && cfg["seed"].is_null()) {
    throw ConfigError("random initial states need a seed (--seed or \"seed\")");
  }
  if (mode == "explicit" && cfg["initial"]["state"].is_null()) {
    throw ConfigError("initial.mode 'explicit' needs initial.state");
  }
  if (cfg["initial"]["count"].get<long>() < 1) throw ConfigError("initial.count must be >= 1");
  if (cfg["analysis"]["samples"].get<long>() < 1) throw ConfigError("analysis.samples must be >= 1");
}

}  // namespace nilflow::app
