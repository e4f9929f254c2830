#include "commands.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nilflow/nilflow.hpp>
#include <nilflow/version.hpp>

#include "acceptance.hpp"
#include "io.hpp"

namespace nilflow::app {

namespace {

namespace fs = std::filesystem;
using I = IntegralId;

struct Env {
  const RunContext& ctx;
  const Json& cfg;
  EulerNumber k;

  void say(const std::string& line) const {
    if (!ctx.quiet && ctx.log) *ctx.log << line << '\n';
  }
  std::uint64_t seed() const {
    if (cfg["seed"].is_null()) throw ConfigError("this command needs a seed (--seed or \"seed\")");
    return cfg["seed"].get<std::uint64_t>();
  }
  long count() const { return cfg["initial"]["count"].get<long>(); }
  bool explicit_mode() const { return cfg["initial"]["mode"] == "explicit"; }
};

RegularSampleSpec sample_spec(const Env& env) {
  const Json& r = env.cfg["initial"]["random"];
  RegularSampleSpec spec;
  spec.c_min = r["c_min"];
  spec.c_max = r["c_max"];
  spec.margin = r["margin"];
  spec.unit_energy = r["unit_energy"];
  spec.pole_margin = r["pole_margin"];
  spec.k = env.k;
  if (!(spec.c_min > 0.0) || spec.c_max < spec.c_min) {
    throw ConfigError("initial.random needs 0 < c_min <= c_max");
  }
  return spec;
}

// Explicit states may be a single object or an array of objects.
template <class State, class Parse>
std::vector<State> explicit_states(const Env& env, Parse parse) {
  const Json& st = env.cfg["initial"]["state"];
  std::vector<State> out;
  if (st.is_array()) {
    for (const auto& j : st) out.push_back(parse(j));
  } else {
    out.push_back(parse(st));
  }
  if (out.empty()) throw ConfigError("initial.state is an empty list");
  return out;
}

std::vector<ProductState> product_states(const Env& env, long n) {
  if (env.explicit_mode()) {
    return explicit_states<ProductState>(
        env, [&](const Json& j) { return product_from_json(j, env.k); });
  }
  Rng rng(env.seed());
  const RegularSampleSpec spec = sample_spec(env);
  std::vector<ProductState> out;
  for (long i = 0; i < n; ++i) out.push_back(sample_regular_horizontal(rng, spec));
  return out;
}

IntegratorConfig integrator_config(const Env& env, Scheme fallback) {
  const Json& j = env.cfg["integrator"];
  IntegratorConfig c;
  const std::string scheme = j["scheme"];
  c.scheme = scheme == "auto" ? fallback : scheme_from_string(scheme);
  if (c.scheme != fallback) {
    throw ConfigError("scheme '" + scheme + "' does not apply to system '" +
                      env.cfg["system"].get<std::string>() + "' (expected '" +
                      to_string(fallback) + "')");
  }
  c.dt = j["dt"];
  c.t_max = j["t_max"];
  c.newton_tol = j["newton_tol"];
  c.newton_max_iter = j["newton_max_iter"];
  c.sample_stride = j["sample_stride"];
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("integrator: ") + e.what());
  }
  return c;
}

std::vector<I> integral_ids(const Env& env, std::vector<I> fallback) {
  const Json& names = env.cfg["analysis"]["integrals"];
  if (names.empty()) return fallback;
  std::vector<I> out;
  for (const auto& n : names) out.push_back(integral_from_string(n));
  return out;
}

Json base_report(const Env& env, const std::string& command) {
  return {{"command", command}, {"version", kVersion}, {"config", env.cfg}};
}

void emit(const Env& env, const std::string& file, const std::string& contents) {
  write_atomic(env.ctx.out_dir / file, contents);
  env.say("wrote " + (env.ctx.out_dir / file).string());
}

void emit_report(const Env& env, const std::string& command, const Json& report) {
  emit(env, command + ".json", dump_report(report));
}

std::string indexed(const std::string& stem, std::size_t i, std::size_t n, const char* ext) {
  if (n == 1) return stem + ext;
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%03zu", i);
  return stem + buf + ext;
}

Json drift_json(const std::vector<DriftEntry>& entries) {
  Json j = Json::object();
  for (const auto& e : entries) j[e.name] = e.max_relative_drift;
  return j;
}

template <class State>
Json energy_summary(const Trajectory<State>& traj) {
  std::vector<double> energy;
  double resid = 0.0;
  for (const auto& d : traj.diagnostics) {
    energy.push_back(d.energy);
    resid = std::max(resid, d.constraint_residual);
  }
  return {{"samples", traj.size()},
          {"final_time", traj.times.empty() ? 0.0 : traj.times.back()},
          {"energy_relative_drift", relative_drift(energy)},
          {"max_constraint_residual", resid}};
}

template <class State>
Json simulate_one(const Env& env, const Trajectory<State>& traj, std::size_t i, std::size_t n) {
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  const std::string file = indexed("trajectory", i, n, ".csv");
  emit(env, file, csv.str());
  Json j = energy_summary(traj);
  j["csv"] = file;
  j["integral_drift"] = drift_json(drift_report(traj, traj.integral_names));
  j["initial"] = to_json(traj.states.front());
  return j;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Env& env) {
  const SystemTag tag = system_tag_from_string(env.cfg["system"]);
  Json runs = Json::array();
  switch (tag) {
    case SystemTag::H_product: {
      const auto cfg = integrator_config(env, Scheme::split_product);
      const auto ids = integral_ids(env, {I::H1, I::H2, I::f1, I::f2, I::f3, I::psi, I::nu1,
                                          I::nu2, I::nu3});
      const auto states = product_states(env, env.count());
      for (std::size_t i = 0; i < states.size(); ++i) {
        runs.push_back(simulate_one(
            env, integrate(states[i], cfg, tracked_integrals<ProductState>(ids)), i,
            states.size()));
      }
      break;
    }
    case SystemTag::H1:
    case SystemTag::H1_variant: {
      const bool variant = tag == SystemTag::H1_variant;
      const auto cfg = integrator_config(
          env, variant ? Scheme::implicit_midpoint_chart : Scheme::euler_arnold_nil);
      const auto ids = integral_ids(
          env, variant ? std::vector<I>{I::H1_variant, I::f1, I::f2}
                       : std::vector<I>{I::H1, I::f1, I::f2, I::f3, I::nu1, I::nu2, I::nu3});
      std::vector<NilCotangent> states;
      if (env.explicit_mode()) {
        states = explicit_states<NilCotangent>(
            env, [&](const Json& j) { return nil_from_json(j, env.k); });
      } else {
        for (const auto& ps : product_states(env, env.count())) states.push_back(ps.nil);
      }
      const NilChartHamiltonian ham(true, env.k);
      for (std::size_t i = 0; i < states.size(); ++i) {
        const auto tracked = tracked_integrals<NilCotangent>(ids);
        runs.push_back(simulate_one(env,
                                    variant ? integrate(ham, states[i], cfg, tracked)
                                            : integrate(states[i], cfg, tracked),
                                    i, states.size()));
      }
      break;
    }
    case SystemTag::H2: {
      const auto cfg = integrator_config(env, Scheme::exact_sphere);
      const auto ids = integral_ids(env, {I::H2, I::psi2});
      std::vector<SphereCotangent> states;
      if (env.explicit_mode()) {
        states = explicit_states<SphereCotangent>(env, sphere_from_json);
      } else {
        for (const auto& ps : product_states(env, env.count())) states.push_back(ps.sphere);
      }
      for (std::size_t i = 0; i < states.size(); ++i) {
        runs.push_back(simulate_one(
            env, integrate(states[i], cfg, tracked_integrals<SphereCotangent>(ids)), i,
            states.size()));
      }
      break;
    }
    case SystemTag::H_reduced: {
      const auto cfg = integrator_config(env, Scheme::implicit_midpoint_chart);
      const ReducedHamiltonian ham(FiberProfile::by_name(env.cfg["profile"]), env.k);
      // Integrals are evaluated on the horizontal lift at t = 0.
      const auto ids = integral_ids(env, {I::f1, I::f2, I::f3});
      TrackedList<ReducedState> tracked;
      for (I id : ids) {
        tracked.emplace_back(to_string(id), [id](const ReducedState& s) {
          return evaluate(id, product_from_reduced(s));
        });
      }
      std::vector<ReducedState> states;
      if (env.explicit_mode()) {
        states = explicit_states<ReducedState>(
            env, [&](const Json& j) { return reduced_from_json(j, env.k); });
      } else {
        Rng rng(env.seed());
        const auto spec = sample_spec(env);
        for (long i = 0; i < env.count(); ++i) states.push_back(sample_regular_reduced(rng, spec));
      }
      for (std::size_t i = 0; i < states.size(); ++i) {
        runs.push_back(simulate_one(env, integrate(ham, states[i], cfg, tracked), i,
                                    states.size()));
      }
      break;
    }
  }
  Json report = base_report(env, "simulate");
  report["runs"] = runs;
  emit_report(env, "simulate", report);
  return 0;
}

int cmd_audit(const Env& env) {
  const auto cfg = integrator_config(env, Scheme::split_product);
  const auto ids =
      integral_ids(env, {I::H1, I::H2, I::f1, I::f2, I::f3, I::psi, I::nu1, I::nu2, I::nu3});
  Json runs = Json::array();
  std::map<std::string, double> worst;
  bool bound_ok = true;
  for (const auto& s : product_states(env, env.count())) {
    const auto traj = integrate(s, cfg, tracked_integrals<ProductState>(ids));
    Json run;
    run["initial"] = to_json(s);
    run["integral_drift"] = drift_json(drift_report(traj, ids));
    for (const auto& e : drift_report(traj, ids)) {
      worst[e.name] = std::max(worst[e.name], e.max_relative_drift);
    }
    if (std::abs(s.nil.p.z()) > 0.0) {
      const NuBoundReport nb = nu_bound_check(traj);
      run["nu_bound"] = {{"holds", nb.bound_holds},
                         {"max_ratio", nb.max_ratio},
                         {"nu_drift", nb.nu_drift},
                         {"first_violation", nb.first_violation
                                                 ? Json(*nb.first_violation)
                                                 : Json(nullptr)}};
      bound_ok = bound_ok && nb.ok();
    }
    run["fibration_drift"] = {
        {"fprime1", drift_json(fibration_drift(FibrationKind::fprime1, traj))},
        {"f1", drift_json(fibration_drift(FibrationKind::f1, traj))}};
    runs.push_back(run);
    env.say("audited trajectory " + std::to_string(runs.size()));
  }
  Json report = base_report(env, "audit-invariants");
  report["runs"] = runs;
  report["max_relative_drift"] = worst;
  report["nu_bound_ok"] = bound_ok;
  emit_report(env, "audit-invariants", report);
  return 0;
}

int cmd_brackets(const Env& env) {
  const auto states = product_states(env, env.cfg["analysis"]["samples"].get<long>());
  const auto ids = integral_ids(env, {I::H1, I::H2, I::f1, I::f2, I::f3});
  const double h = env.cfg["analysis"]["bracket_h"];
  if (h < 1e-6 || h > 1e-4) throw ConfigError("analysis.bracket_h must lie in [1e-6, 1e-4]");
  Json pairs = Json::array();
  double max_asserted = 0.0;
  for (const auto& rep : commutation_matrix(ids, states, h)) {
    pairs.push_back({{"pair", {rep.first, rep.second}},
                     {"samples", rep.samples()},
                     {"h", rep.h},
                     {"margin", rep.margin},
                     {"max_abs", rep.max_abs},
                     {"asserted_commuting", rep.asserted_commuting},
                     {"per_sample", rep.values}});
    if (rep.asserted_commuting) max_asserted = std::max(max_asserted, rep.max_abs);
  }
  Json report = base_report(env, "brackets");
  report["pairs"] = pairs;
  report["max_abs_asserted"] = max_asserted;
  emit_report(env, "brackets", report);
  env.say("max |{F,G}| over asserted pairs: " + format_double(max_asserted));
  return 0;
}

int cmd_rank(const Env& env) {
  const auto states = product_states(env, env.cfg["analysis"]["samples"].get<long>());
  const auto ids = integral_ids(env, {I::H1, I::H2, I::f1, I::f2, I::f3});
  const double h = env.cfg["analysis"]["bracket_h"];
  std::vector<Observable> fns;
  for (I id : ids) fns.push_back(observable(id, env.k));
  std::map<std::string, long> histogram;
  Json per_sample = Json::array();
  long full = 0;
  for (const auto& s : states) {
    const RankReport rr = rank_report(fns, chart_from_product(s), h, true, env.k);
    ++histogram[std::to_string(rr.rank)];
    if (rr.rank == static_cast<int>(ids.size())) ++full;
    per_sample.push_back({{"rank", rr.rank}, {"singular_values", rr.singular_values}});
  }
  Json names = Json::array();
  for (I id : ids) names.push_back(to_string(id));
  Json report = base_report(env, "rank");
  report["ids"] = names;
  report["histogram"] = histogram;
  report["full_rank_fraction"] = static_cast<double>(full) / static_cast<double>(states.size());
  report["per_sample"] = per_sample;
  emit_report(env, "rank", report);
  return 0;
}

int cmd_scan_tori(const Env& env) {
  const auto kind = fibration_from_string(env.cfg["analysis"]["fibration"]);
  const auto cfg = integrator_config(env, Scheme::split_product);
  const auto states = product_states(env, env.count());
  std::vector<std::string> header{"index"};
  const std::size_t ncomp = kind == FibrationKind::fprime1 ? 5 : 4;
  const char* names5[] = {"theta1", "theta2", "c", "e2", "e1"};
  const char* names4[] = {"theta1", "c", "e2", "e1"};
  for (std::size_t j = 0; j < ncomp; ++j) {
    header.emplace_back(kind == FibrationKind::fprime1 ? names5[j] : names4[j]);
  }
  header.insert(header.end(), {"regular", "rank", "max_drift"});
  std::vector<std::vector<double>> rows;
  Json tori = Json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const FibrationValue fv = fibration_value(kind, states[i]);
    const int rank = rank_of_fibration(kind, states[i]);
    double max_drift = 0.0;
    Json drift = Json::object();
    if (fv.regular) {
      const auto traj = integrate(states[i], cfg);
      for (const auto& e : fibration_drift(kind, traj)) {
        drift[e.name] = e.max_relative_drift;
        max_drift = std::max(max_drift, e.max_relative_drift);
      }
    }
    std::vector<double> row{static_cast<double>(i)};
    row.insert(row.end(), fv.components.begin(), fv.components.end());
    row.insert(row.end(), {fv.regular ? 1.0 : 0.0, static_cast<double>(rank), max_drift});
    rows.push_back(row);
    tori.push_back({{"components", fv.components},
                    {"regular", fv.regular},
                    {"rank", rank},
                    {"drift", drift}});
  }
  std::ostringstream csv;
  write_csv(csv, header, rows);
  emit(env, "scan-tori.csv", csv.str());
  Json report = base_report(env, "scan-tori");
  report["fibration"] = to_string(kind);
  report["tori"] = tori;
  emit_report(env, "scan-tori", report);
  return 0;
}

std::vector<AngleObservable> angles_from_config(const Env& env, const ProductState& s) {
  std::vector<AngleObservable> out;
  for (const auto& n : env.cfg["analysis"]["rotation"]["angles"]) {
    const std::string name = n;
    if (name == "x") out.push_back(angle_x());
    else if (name == "y") out.push_back(angle_y());
    else if (name == "s") out.push_back(angle_s());
    else if (name == "nil_phase") out.push_back(angle_nil_phase());
    else if (name == "fibre") out.push_back(angle_fibre());
    else if (name == "sphere_phase") out.push_back(angle_sphere_phase(s.sphere));
    else throw ConfigError("unknown angle '" + name + "'");
  }
  if (out.empty()) throw ConfigError("analysis.rotation.angles is empty");
  return out;
}

int cmd_rotation(const Env& env) {
  const auto cfg = integrator_config(env, Scheme::split_product);
  const Json& rc = env.cfg["analysis"]["rotation"];
  const double tol = rc["tol"];
  std::vector<std::vector<double>> rows;
  Json runs = Json::array();
  const auto states = product_states(env, env.count());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto traj = integrate(states[i], cfg);
    const RotationEstimate est = rotation_vector(traj, angles_from_config(env, states[i]),
                                                 rc["fiber_tol"], rc["skip_fraction"]);
    const MinimalityVerdict verdict = minimality_heuristic(est, tol);
    for (std::size_t j = 0; j < est.names.size(); ++j) {
      rows.push_back({static_cast<double>(i), static_cast<double>(j), est.frequencies[j],
                      est.residuals[j]});
    }
    runs.push_back({{"angles", est.names},
                    {"frequencies", est.frequencies},
                    {"residuals", est.residuals},
                    {"residual", est.residual},
                    {"window", est.window},
                    {"verdict", to_string(verdict)}});
  }
  std::ostringstream csv;
  write_csv(csv, {"index", "angle", "frequency", "residual"}, rows);
  emit(env, "rotation.csv", csv.str());
  Json report = base_report(env, "rotation");
  report["runs"] = runs;
  emit_report(env, "rotation", report);
  return 0;
}

int cmd_recurrence(const Env& env) {
  const Json& j = env.cfg["analysis"]["recurrence"];
  RecurrenceConfig rc;
  rc.dt = j["dt"];
  rc.t_max = j["t_max"];
  rc.epsilons = j["epsilons"].get<std::vector<double>>();
  rc.min_abs_c = j["min_abs_c"];
  if (!(rc.dt > 0.0) || !(rc.t_max > 0.0) || rc.epsilons.empty()) {
    throw ConfigError("analysis.recurrence needs positive dt, t_max and some epsilons");
  }
  std::vector<std::vector<double>> rows;
  Json runs = Json::array();
  const auto states = product_states(env, env.count());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const RecurrenceReport rep = recurrence_stat(states[i], rc);
    Json table = Json::array();
    for (const auto& row : rep.table) {
      table.push_back({{"epsilon", row.epsilon},
                       {"forward", row.forward ? Json(*row.forward) : Json(nullptr)},
                       {"backward", row.backward ? Json(*row.backward) : Json(nullptr)}});
      // Missing returns are written as -1 in the CSV.
      rows.push_back({static_cast<double>(i), row.epsilon, row.forward.value_or(-1.0),
                      row.backward.value_or(-1.0)});
    }
    runs.push_back({{"table", table},
                    {"min_distance_forward", rep.min_distance_forward},
                    {"min_distance_backward", rep.min_distance_backward}});
  }
  std::ostringstream csv;
  write_csv(csv, {"index", "epsilon", "forward", "backward"}, rows);
  emit(env, "recurrence.csv", csv.str());
  Json report = base_report(env, "recurrence");
  report["runs"] = runs;
  emit_report(env, "recurrence", report);
  return 0;
}

int cmd_lyapunov(const Env& env) {
  const Json& j = env.cfg["analysis"]["lyapunov"];
  LyapunovConfig lc;
  lc.separation = j["separation"];
  lc.renorm_interval = j["renorm_interval"];
  lc.dt = j["dt"];
  lc.t_max = j["t_max"];
  const double from = j["checkpoints_from"];
  const int per_decade = j["per_decade"];
  if (!(from > 0.0) || from > lc.t_max || per_decade < 1) {
    throw ConfigError("analysis.lyapunov needs 0 < checkpoints_from <= t_max, per_decade >= 1");
  }
  lc.checkpoints = log_checkpoints(from, lc.t_max, per_decade);
  Rng seeds(env.seed() ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<double>> rows;
  Json runs = Json::array();
  const auto states = product_states(env, env.count());
  for (std::size_t i = 0; i < states.size(); ++i) {
    lc.seed = seeds.next();
    Json series = Json::array();
    for (const auto& smp : lyapunov_max(states[i], lc)) {
      series.push_back({{"t", smp.t}, {"lambda", smp.lambda}});
      rows.push_back({static_cast<double>(i), smp.t, smp.lambda});
    }
    runs.push_back({{"shadow_seed", lc.seed}, {"lambda", series}});
  }
  std::ostringstream csv;
  write_csv(csv, {"index", "t", "lambda"}, rows);
  emit(env, "lyapunov.csv", csv.str());
  Json report = base_report(env, "lyapunov");
  report["runs"] = runs;
  emit_report(env, "lyapunov", report);
  return 0;
}

int cmd_selftest(const Env& env) {
  const auto suite = run_acceptance(env.seed(), [&](const CriterionResult& r) {
    if (!env.ctx.quiet && env.ctx.log) *env.ctx.log << format_line(r) << '\n';
  });
  Json report = base_report(env, "selftest");
  report["suite"] = suite.report();
  emit_report(env, "selftest", report);
  return suite.all_passed() ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "audit-invariants", "brackets",
                                              "rank",     "scan-tori",        "rotation",
                                              "recurrence", "lyapunov",       "selftest"};
  return names;
}

int run_command(const std::string& name, const RunContext& ctx) {
  const Env env{ctx, ctx.config, EulerNumber(ctx.config["k"].get<int>())};
  if (name == "simulate") return cmd_simulate(env);
  if (name == "audit-invariants") return cmd_audit(env);
  if (name == "brackets") return cmd_brackets(env);
  if (name == "rank") return cmd_rank(env);
  if (name == "scan-tori") return cmd_scan_tori(env);
  if (name == "rotation") return cmd_rotation(env);
  if (name == "recurrence") return cmd_recurrence(env);
  if (name == "lyapunov") return cmd_lyapunov(env);
  if (name == "selftest") return cmd_selftest(env);
  throw ConfigError("unknown command '" + name + "'");
}

}  // namespace nilflow::app
