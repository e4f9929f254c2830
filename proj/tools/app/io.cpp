#include "io.hpp"

#include <fstream>

namespace nilflow::app {

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

namespace {

Json vec(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(std::string("initial.state needs numeric '") + key + "'");
  }
  return j[key].get<double>();
}

Eigen::Vector3d triple(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3) {
    throw ConfigError(std::string("initial.state needs a 3-array '") + key + "'");
  }
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!j[key][i].is_number()) throw ConfigError(std::string("non-numeric entry in '") + key + "'");
    v(i) = j[key][i].get<double>();
  }
  return v;
}

}  // namespace

Json to_json(const NilCotangent& s) {
  return {{"q", Json::array({s.q.x, s.q.y, s.q.z})}, {"p", vec(s.p)}};
}

Json to_json(const SphereCotangent& s) { return {{"xi", vec(s.xi)}, {"p", vec(s.p)}}; }

Json to_json(const ProductState& s) {
  return {{"nil", to_json(s.nil)}, {"sphere", to_json(s.sphere)}};
}

Json to_json(const ReducedState& s) {
  return {{"x", s.x},     {"y", s.y},     {"r", s.r},     {"s", s.s},
          {"p_x", s.p_x}, {"p_y", s.p_y}, {"p_r", s.p_r}, {"p_s", s.p_s}};
}

NilCotangent nil_from_json(const Json& j, EulerNumber k) {
  if (!j.is_object()) throw ConfigError("nil state must be an object with 'q' and 'p'");
  NilCotangent s;
  const Eigen::Vector3d q = triple(j, "q");
  s.q = {q.x(), q.y(), q.z()};
  s.p = triple(j, "p");
  s.k = k;
  return s;
}

SphereCotangent sphere_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("sphere state must be an object with 'xi' and 'p'");
  SphereCotangent s;
  s.xi = triple(j, "xi");
  s.p = triple(j, "p");
  if (s.norm_residual() > 1e-10 || s.tangency_residual() > 1e-10) {
    throw ConfigError("sphere state violates |xi| = 1 or <xi, p> = 0");
  }
  return s;
}

ProductState product_from_json(const Json& j, EulerNumber k) {
  if (!j.is_object() || !j.contains("nil") || !j.contains("sphere")) {
    throw ConfigError("product state needs 'nil' and 'sphere'");
  }
  return {nil_from_json(j["nil"], k), sphere_from_json(j["sphere"])};
}

ReducedState reduced_from_json(const Json& j, EulerNumber k) {
  if (!j.is_object()) throw ConfigError("reduced state must be an object");
  ReducedState s;
  s.x = number(j, "x");
  s.y = number(j, "y");
  s.r = number(j, "r");
  s.s = number(j, "s");
  s.p_x = number(j, "p_x");
  s.p_y = number(j, "p_y");
  s.p_r = number(j, "p_r");
  s.p_s = number(j, "p_s");
  s.k = k;
  return s;
}

}  // namespace nilflow::app
