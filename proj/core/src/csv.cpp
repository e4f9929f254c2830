#include "nilflow/csv.hpp"

#include <cstdio>
#include <fstream>

namespace nilflow {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_double(row[j]);
    os << '\n';
  }
}

namespace {

std::vector<std::string> state_columns(const ProductState&) {
  return {"x", "y", "z", "p_x", "p_y", "p_z", "xi_1", "xi_2", "xi_3", "p_1", "p_2", "p_3"};
}
std::vector<double> state_values(const ProductState& s) {
  return {s.nil.q.x,      s.nil.q.y,      s.nil.q.z,      s.nil.p.x(),
          s.nil.p.y(),    s.nil.p.z(),    s.sphere.xi.x(), s.sphere.xi.y(),
          s.sphere.xi.z(), s.sphere.p.x(), s.sphere.p.y(),  s.sphere.p.z()};
}
std::vector<std::string> state_columns(const NilCotangent&) {
  return {"x", "y", "z", "p_x", "p_y", "p_z"};
}
std::vector<double> state_values(const NilCotangent& s) {
  return {s.q.x, s.q.y, s.q.z, s.p.x(), s.p.y(), s.p.z()};
}
std::vector<std::string> state_columns(const SphereCotangent&) {
  return {"xi_1", "xi_2", "xi_3", "p_1", "p_2", "p_3"};
}
std::vector<double> state_values(const SphereCotangent& s) {
  return {s.xi.x(), s.xi.y(), s.xi.z(), s.p.x(), s.p.y(), s.p.z()};
}
std::vector<std::string> state_columns(const ReducedState&) {
  return {"x", "y", "r", "s", "p_x", "p_y", "p_r", "p_s"};
}
std::vector<double> state_values(const ReducedState& s) {
  return {s.x, s.y, s.r, s.s, s.p_x, s.p_y, s.p_r, s.p_s};
}

}  // namespace

template <class State>
void write_trajectory_csv(std::ostream& os, const Trajectory<State>& traj) {
  std::vector<std::string> header{"t"};
  const auto cols = state_columns(State{});
  header.insert(header.end(), cols.begin(), cols.end());
  header.push_back("H");
  header.insert(header.end(), traj.integral_names.begin(), traj.integral_names.end());

  std::vector<std::vector<double>> rows;
  rows.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    const auto vals = state_values(traj.states[i]);
    row.insert(row.end(), vals.begin(), vals.end());
    row.push_back(traj.diagnostics[i].energy);
    row.insert(row.end(), traj.diagnostics[i].integrals.begin(),
               traj.diagnostics[i].integrals.end());
    rows.push_back(std::move(row));
  }
  write_csv(os, header, rows);
}

template void write_trajectory_csv(std::ostream&, const Trajectory<ProductState>&);
template void write_trajectory_csv(std::ostream&, const Trajectory<NilCotangent>&);
template void write_trajectory_csv(std::ostream&, const Trajectory<SphereCotangent>&);
template void write_trajectory_csv(std::ostream&, const Trajectory<ReducedState>&);

}  // namespace nilflow
