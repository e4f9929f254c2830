#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include <nilflow/nilflow.hpp>
#include <nilflow/version.hpp>

namespace nilflow::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Distinct, reproducible streams per criterion.
Rng stream(std::uint64_t seed, std::uint64_t criterion) {
  return Rng(seed * 1000003ULL + criterion);
}

CriterionResult make(const char* id, const char* title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  r.details = Json::object();
  return r;
}

bool in_pair_set(IntegralId f, IntegralId g, const std::vector<IntegralId>& left,
                 const std::vector<IntegralId>& right) {
  auto has = [](const std::vector<IntegralId>& v, IntegralId id) {
    return std::find(v.begin(), v.end(), id) != v.end();
  };
  return (has(left, f) && has(right, g)) || (has(left, g) && has(right, f));
}

double angle_distance(double a, double b) { return std::abs(circular_difference(a, b)); }

}  // namespace

bool SuiteResult::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

Json SuiteResult::report() const {
  Json crit = Json::array();
  for (const auto& c : criteria) {
    crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"details", c.details}});
  }
  return {{"seed", seed}, {"version", kVersion}, {"criteria", crit}, {"all_passed", all_passed()}};
}

std::string format_line(const CriterionResult& r) {
  return r.id + " " + (r.passed ? "PASS" : "FAIL") + "  " + r.title + ": " + r.summary;
}

// AC1 -----------------------------------------------------------------------

CriterionResult conservation_suite(std::uint64_t seed) {
  auto res = make("AC1", "conservation suite");
  const auto t0 = Clock::now();
  constexpr double kTol = 1e-7;
  constexpr int kTrajectories = 20;
  const std::vector<IntegralId> ids{IntegralId::H1,  IntegralId::H2,  IntegralId::f1,
                                    IntegralId::f2,  IntegralId::f3,  IntegralId::psi,
                                    IntegralId::nu1, IntegralId::nu2, IntegralId::nu3};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1e3;
  cfg.sample_stride = 100;
  cfg.scheme = Scheme::split_product;

  Rng rng = stream(seed, 1);
  std::map<std::string, double> worst;
  for (int i = 0; i < kTrajectories; ++i) {
    const ProductState s = sample_regular_horizontal(rng);
    const auto traj = integrate(s, cfg, tracked_integrals<ProductState>(ids));
    for (const auto& e : drift_report(traj, ids)) {
      worst[e.name] = std::max(worst[e.name], e.max_relative_drift);
    }
  }
  double max_drift = 0.0;
  for (const auto& [name, d] : worst) max_drift = std::max(max_drift, d);
  const double elapsed = seconds_since(t0);
  res.passed = max_drift < kTol && elapsed < 60.0;
  res.details = {{"trajectories", kTrajectories}, {"dt", cfg.dt},       {"t_max", cfg.t_max},
                 {"threshold", kTol},             {"max_relative_drift", worst},
                 {"runtime_target_s", 60.0}};
  res.summary = "max relative drift " + sci(max_drift) + " (< " + sci(kTol) + ") over " +
                std::to_string(kTrajectories) + " trajectories, " + sci(elapsed) +
                " s (< 60 s)";
  return res;
}

// AC2 -----------------------------------------------------------------------

CriterionResult commutation_suite(std::uint64_t seed) {
  auto res = make("AC2", "commutation suite");
  constexpr double kTol = 1e-6;
  constexpr double kNonCommuting = 1e-3;
  constexpr int kSamples = 100;
  Rng rng = stream(seed, 2);
  std::vector<ProductState> states;
  for (int i = 0; i < kSamples; ++i) states.push_back(sample_regular_horizontal(rng));

  using I = IntegralId;
  const std::vector<I> base{I::H1, I::H2, I::f1, I::f2, I::f3};
  const std::vector<I> commuting{I::H1, I::H2, I::f1, I::f2};
  const std::vector<I> left{I::H1, I::H2, I::f1};
  const std::vector<I> right{I::f2, I::f3};

  double worst = 0.0, f2f3 = 0.0;
  Json pairs = Json::object();
  for (const auto& rep : commutation_matrix(base, states)) {
    const I f = integral_from_string(rep.first), g = integral_from_string(rep.second);
    pairs[rep.first + "," + rep.second] = rep.max_abs;
    if (in_pair_set(f, g, commuting, commuting) || in_pair_set(f, g, left, right)) {
      worst = std::max(worst, rep.max_abs);
    }
    if (in_pair_set(f, g, {I::f2}, {I::f3})) f2f3 = rep.max_abs;
  }

  const std::vector<I> variant{I::H1_variant, I::H2, I::f1, I::f2};
  double worst_variant = 0.0;
  Json variant_pairs = Json::object();
  for (const auto& rep : commutation_matrix(variant, states)) {
    variant_pairs[rep.first + "," + rep.second] = rep.max_abs;
    worst_variant = std::max(worst_variant, rep.max_abs);
  }

  res.passed = worst < kTol && f2f3 > kNonCommuting && worst_variant < kTol;
  res.details = {{"samples", kSamples},
                 {"h", kDefaultBracketStep},
                 {"threshold", kTol},
                 {"noncommuting_threshold", kNonCommuting},
                 {"max_abs", pairs},
                 {"variant_max_abs", variant_pairs},
                 {"max_asserted", worst},
                 {"max_variant", worst_variant},
                 {"max_f2_f3", f2f3}};
  res.summary = "max |{F,G}| " + sci(worst) + ", variant set " + sci(worst_variant) +
                " (< " + sci(kTol) + "); max |{f2,f3}| " + sci(f2f3) + " (> " +
                sci(kNonCommuting) + ")";
  return res;
}

// AC3 -----------------------------------------------------------------------

CriterionResult independence_suite(std::uint64_t seed) {
  auto res = make("AC3", "functional independence");
  constexpr int kSamples = 1000;
  constexpr double kFraction = 0.95;
  using I = IntegralId;
  const std::vector<I> ids{I::H1, I::H2, I::f1, I::f2, I::f3};
  Rng rng = stream(seed, 3);

  int full = 0;
  for (int i = 0; i < kSamples; ++i) {
    if (independence_rank(ids, sample_regular_horizontal(rng)) == 5) ++full;
  }
  const double fraction = static_cast<double>(full) / kSamples;

  // Points on each stratum of {c e1 e2 = 0}, built by editing regular samples.
  constexpr int kPerStratum = 10;
  std::map<std::string, int> max_rank{{"c=0", 0}, {"e1=0", 0}, {"e2=0", 0}};
  for (int i = 0; i < kPerStratum; ++i) {
    const ProductState base = sample_regular_horizontal(rng);
    const LeftMomenta m = base.nil.left();

    ProductState c0 = base;
    c0.nil = NilCotangent::from_left(base.nil.q, {m.a, m.b, 0.0}, base.nil.k);
    const Eigen::Vector3d e_phi = rotation_generator(0, c0.sphere.xi).normalized();
    c0.sphere.p -= c0.sphere.p.dot(e_phi) * e_phi;
    max_rank["c=0"] = std::max(max_rank["c=0"], independence_rank(ids, c0));

    ProductState e1 = base;
    e1.nil = NilCotangent::from_left(base.nil.q, {0.0, 0.0, m.c}, base.nil.k);
    max_rank["e1=0"] = std::max(max_rank["e1=0"], independence_rank(ids, e1));

    ProductState e2 = base;
    PolarPoint pp = polar_from_embedded(base.sphere);
    pp.r = 0.5 * std::numbers::pi;
    pp.p_r = 0.0;
    e2.sphere = embedded_from_polar(pp);
    max_rank["e2=0"] = std::max(max_rank["e2=0"], independence_rank(ids, e2));
  }
  bool deficits = true;
  for (const auto& [name, r] : max_rank) deficits = deficits && r <= 4;

  res.passed = fraction >= kFraction && deficits;
  res.details = {{"samples", kSamples},
                 {"full_rank_fraction", fraction},
                 {"required_fraction", kFraction},
                 {"stratum_samples", kPerStratum},
                 {"stratum_max_rank", max_rank}};
  res.summary = "rank 5 on " + sci(100.0 * fraction) + "% of " + std::to_string(kSamples) +
                " samples (>= 95%); max rank on c=0 / e1=0 / e2=0: " +
                std::to_string(max_rank["c=0"]) + " / " + std::to_string(max_rank["e1=0"]) +
                " / " + std::to_string(max_rank["e2=0"]) + " (<= 4)";
  return res;
}

// AC4 -----------------------------------------------------------------------

CriterionResult submersion_suite(std::uint64_t seed) {
  auto res = make("AC4", "submersion cross-validation");
  constexpr double kTrajTol = 1e-6;
  constexpr double kFrameTol = 1e-10;
  constexpr int kTrajectories = 10;
  constexpr int kPoints = 100;
  Rng rng = stream(seed, 4);

  IntegratorConfig cfg;
  cfg.dt = 5e-5;
  cfg.t_max = 10.0;
  cfg.sample_stride = 200;
  const ReducedHamiltonian ham(FiberProfile::submersion());

  double worst = 0.0;
  for (int i = 0; i < kTrajectories; ++i) {
    const ProductState ps = sample_regular_horizontal(rng);
    cfg.scheme = Scheme::implicit_midpoint_chart;
    const auto chart = integrate(ham, reduced_from_product(ps), cfg);
    cfg.scheme = Scheme::split_product;
    const auto lifted = integrate(ps, cfg);
    for (std::size_t j = 0; j < chart.size(); ++j) {
      const ReducedState a = chart.states[j];
      const ReducedState b = reduced_from_product(lifted.states[j]);
      worst = std::max({worst, std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.r - b.r),
                        angle_distance(a.s, b.s), std::abs(a.p_x - b.p_x),
                        std::abs(a.p_y - b.p_y), std::abs(a.p_r - b.p_r),
                        std::abs(a.p_s - b.p_s)});
    }
  }

  // Frame identities: X, Y, R unit, S of squared norm v(r), all orthogonal to
  // the fibre direction T.
  double frame_err = 0.0;
  const FiberProfile sub = FiberProfile::submersion();
  for (int i = 0; i < kPoints; ++i) {
    const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
    const double r = rng.uniform(0.05, std::numbers::pi - 0.05);
    const auto g = lifted_metric(x, y, r);
    const auto F = lifted_frame(x, y, r);
    const double v = sub.coefficient(r);
    for (int c = 0; c < 3; ++c) {
      frame_err = std::max(frame_err, std::abs(F.col(c).dot(g * F.col(c)) - 1.0));
    }
    frame_err = std::max(frame_err, std::abs(std::sqrt(F.col(3).dot(g * F.col(3))) - std::sqrt(v)));
    for (int c = 0; c < 4; ++c) {
      frame_err = std::max(frame_err, std::abs(F.col(c).dot(g * F.col(4))));
    }
  }

  res.passed = worst < kTrajTol && frame_err < kFrameTol;
  res.details = {{"trajectories", kTrajectories}, {"dt", cfg.dt},
                 {"t_max", cfg.t_max},            {"max_chart_deviation", worst},
                 {"threshold", kTrajTol},         {"frame_points", kPoints},
                 {"max_frame_error", frame_err},  {"frame_threshold", kFrameTol}};
  res.summary = "chart vs lifted trajectory " + sci(worst) + " (< " + sci(kTrajTol) +
                ") over t=10; frame identities " + sci(frame_err) + " (< " + sci(kFrameTol) +
                ")";
  return res;
}

// AC5 -----------------------------------------------------------------------

CriterionResult cover_dynamics_suite(std::uint64_t seed) {
  auto res = make("AC5", "cover dynamics");
  constexpr int kTrajectories = 20;
  constexpr double kEps = 0.5;
  constexpr double kTMax = 1e4;
  Rng rng = stream(seed, 5);
  RegularSampleSpec spec;
  spec.unit_energy = true;

  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_max = kTMax;
  cfg.sample_stride = 10;
  RecurrenceConfig rc;
  rc.dt = cfg.dt;
  rc.t_max = kTMax;
  rc.epsilons = {kEps};

  bool all_ok = true;
  double max_ratio = 0.0, nu_drift = 0.0, worst_fwd = 0.0, worst_bwd = 0.0;
  int missing = 0;
  for (int i = 0; i < kTrajectories; ++i) {
    const ProductState s = sample_regular_horizontal(rng, spec);
    const NuBoundReport nb = nu_bound_check(integrate(s, cfg));
    max_ratio = std::max(max_ratio, nb.max_ratio);
    nu_drift = std::max(nu_drift, nb.nu_drift);
    all_ok = all_ok && nb.ok(1e-7);
    const RecurrenceReport rep = recurrence_stat(s, rc);
    const auto& row = rep.table.front();
    if (row.forward && row.backward) {
      worst_fwd = std::max(worst_fwd, *row.forward);
      worst_bwd = std::max(worst_bwd, *row.backward);
    } else {
      ++missing;
    }
  }
  res.passed = all_ok && missing == 0;
  res.details = {{"trajectories", kTrajectories},     {"dt", cfg.dt},
                 {"t_max", kTMax},                    {"epsilon", kEps},
                 {"max_bound_ratio", max_ratio},      {"max_nu_drift", nu_drift},
                 {"missing_returns", missing},        {"latest_forward_return", worst_fwd},
                 {"latest_backward_return", worst_bwd}};
  res.summary = "bound ratio <= " + sci(max_ratio) + ", nu drift " + sci(nu_drift) +
                "; eps=0.5 returns by t=" + sci(worst_fwd) + " forward, " + sci(worst_bwd) +
                " backward, " + std::to_string(missing) + " missing";
  return res;
}

// AC6 -----------------------------------------------------------------------

CriterionResult entropy_suite(std::uint64_t seed) {
  auto res = make("AC6", "entropy-zero evidence");
  constexpr int kTrajectories = 10;
  constexpr double kBound = 5e-3;
  Rng rng = stream(seed, 6);
  LyapunovConfig cfg;
  cfg.t_max = 1e4;
  cfg.checkpoints = log_checkpoints(100.0, 1e4, 2);

  bool ok = true;
  double worst_final = 0.0;
  Json runs = Json::array();
  for (int i = 0; i < kTrajectories; ++i) {
    cfg.seed = rng.next();
    const auto est = lyapunov_max(sample_regular_horizontal(rng), cfg);
    Json series = Json::array();
    bool decreasing = true;
    for (std::size_t j = 0; j < est.size(); ++j) {
      series.push_back({est[j].t, est[j].lambda});
      if (j > 0 && !(est[j].lambda < est[j - 1].lambda)) decreasing = false;
    }
    const double final = est.empty() ? INFINITY : est.back().lambda;
    worst_final = std::max(worst_final, final);
    ok = ok && decreasing && final < kBound && est.size() == cfg.checkpoints.size();
    runs.push_back({{"lambda", series}, {"decreasing", decreasing}});
  }
  res.passed = ok;
  res.details = {{"trajectories", kTrajectories}, {"bound", kBound}, {"runs", runs},
                 {"max_final_lambda", worst_final}};
  res.summary = "max lambda(1e4) " + sci(worst_final) + " (< " + sci(kBound) + "), " +
                (ok ? "all" : "not all") + " decreasing over 5 checkpoints";
  return res;
}

// AC7 -----------------------------------------------------------------------

CriterionResult fibration_suite(std::uint64_t seed) {
  auto res = make("AC7", "fibration suite");
  constexpr double kTol = 1e-6;
  constexpr int kTrajectories = 10;
  constexpr int kRankSamples = 100;
  Rng rng = stream(seed, 7);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1e3;
  cfg.sample_stride = 100;

  double worst_prime = 0.0, worst_f1 = 0.0;
  for (int i = 0; i < kTrajectories; ++i) {
    const auto traj = integrate(sample_regular_horizontal(rng), cfg);
    for (const auto& e : fibration_drift(FibrationKind::fprime1, traj)) {
      worst_prime = std::max(worst_prime, e.max_relative_drift);
    }
    for (const auto& e : fibration_drift(FibrationKind::f1, traj)) {
      worst_f1 = std::max(worst_f1, e.max_relative_drift);
    }
  }
  int prime_ok = 0, f1_ok = 0;
  for (int i = 0; i < kRankSamples; ++i) {
    const ProductState s = sample_regular_horizontal(rng);
    if (rank_of_fibration(FibrationKind::fprime1, s) == 5) ++prime_ok;
    if (rank_of_fibration(FibrationKind::f1, s) == 4) ++f1_ok;
  }
  res.passed = worst_prime < kTol && worst_f1 < kTol && prime_ok == kRankSamples &&
               f1_ok == kRankSamples;
  res.details = {{"trajectories", kTrajectories},   {"threshold", kTol},
                 {"max_drift_fprime1", worst_prime}, {"max_drift_f1", worst_f1},
                 {"rank_samples", kRankSamples},    {"rank5_fprime1", prime_ok},
                 {"rank4_f1", f1_ok}};
  res.summary = "drift f'1 " + sci(worst_prime) + ", f1 " + sci(worst_f1) + " (< " +
                sci(kTol) + "); rank 5 / 4 at " + std::to_string(prime_ok) + " / " +
                std::to_string(f1_ok) + " of " + std::to_string(kRankSamples) +
                " regular points";
  return res;
}

// AC8 -----------------------------------------------------------------------

CriterionResult integrator_suite(std::uint64_t seed) {
  auto res = make("AC8", "integrator quality");
  constexpr double kLo = 3.5, kHi = 4.5;
  constexpr double kExactTol = 1e-12;
  constexpr long kSteps = 1000000;
  Rng rng = stream(seed, 8);

  const ReducedHamiltonian ham(FiberProfile::submersion());
  auto endpoint = [&](const ReducedState& s0, double dt) {
    IntegratorConfig c;
    c.dt = dt;
    c.t_max = 1.0;
    c.scheme = Scheme::implicit_midpoint_chart;
    c.sample_stride = static_cast<int>(c.step_count());
    return ReducedHamiltonian::pack(integrate(ham, s0, c).states.back());
  };
  Json ratios = Json::array();
  bool order_ok = true;
  for (int i = 0; i < 3; ++i) {
    const ReducedState s0 = sample_regular_reduced(rng);
    constexpr double dt = 0.02;
    const auto ref = endpoint(s0, dt / 16.0);
    const double ratio = (endpoint(s0, dt) - ref).norm() / (endpoint(s0, dt / 2.0) - ref).norm();
    ratios.push_back(ratio);
    order_ok = order_ok && ratio >= kLo && ratio <= kHi;
  }

  std::map<std::string, double> exact;
  for (int i = 0; i < 3; ++i) {
    const ProductState s0 = sample_regular_horizontal(rng);
    ProductState s = s0;
    for (long j = 0; j < kSteps; ++j) s = step_split_product(s, 1e-3);
    auto rel = [](double now, double then) {
      return std::abs(now - then) / std::max(1.0, std::abs(then));
    };
    auto bump = [&](const char* name, double v) { exact[name] = std::max(exact[name], v); };
    bump("H1", rel(h1(s.nil), h1(s0.nil)));
    bump("c", rel(s.nil.p.z(), s0.nil.p.z()));
    bump("ab_norm", rel(std::hypot(s.nil.left().a, s.nil.left().b),
                        std::hypot(s0.nil.left().a, s0.nil.left().b)));
    bump("H2", rel(h2(s.sphere), h2(s0.sphere)));
    bump("psi2", rel(sphere_momentum(s.sphere), sphere_momentum(s0.sphere)));
    bump("psi", std::abs(anti_diagonal_momentum(s)));
    bump("sphere_norm", s.sphere.norm_residual());
    bump("sphere_tangency", s.sphere.tangency_residual());
  }
  double exact_worst = 0.0;
  for (const auto& [name, v] : exact) exact_worst = std::max(exact_worst, v);

  res.passed = order_ok && exact_worst <= kExactTol;
  double rmin = INFINITY, rmax = 0.0;
  for (const auto& r : ratios) {
    rmin = std::min(rmin, r.get<double>());
    rmax = std::max(rmax, r.get<double>());
  }
  res.details = {{"convergence_ratios", ratios}, {"ratio_range", {kLo, kHi}},
                 {"exact_steps", kSteps},         {"exact_max_error", exact},
                 {"exact_threshold", kExactTol}};
  res.summary = "midpoint convergence factor " + sci(rmin) + ".." + sci(rmax) +
                " (in [3.5, 4.5]); exact schemes over 1e6 steps " + sci(exact_worst) +
                " (<= 1e-12)";
  return res;
}

// Suite ---------------------------------------------------------------------

SuiteResult run_acceptance(std::uint64_t seed, const CriterionCallback& on_result) {
  using Fn = CriterionResult (*)(std::uint64_t);
  const Fn criteria[] = {conservation_suite, commutation_suite,    independence_suite,
                         submersion_suite,   cover_dynamics_suite, entropy_suite,
                         fibration_suite,    integrator_suite};
  auto run_all = [&](bool notify) {
    SuiteResult out;
    out.seed = seed;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
      CriterionResult r;
      try {
        r = criteria[i](seed);
      } catch (const std::exception& e) {
        r.id = "AC" + std::to_string(i + 1);
        r.passed = false;
        r.summary = std::string("threw: ") + e.what();
        r.details = {{"error", e.what()}};
      }
      if (notify && on_result) on_result(r);
      out.criteria.push_back(std::move(r));
    }
    return out;
  };

  SuiteResult first = run_all(true);
  const SuiteResult second = run_all(false);
  const std::string a = first.report().dump(), b = second.report().dump();

  auto res = make("AC9", "determinism");
  res.passed = a == b;
  res.details = {{"report_bytes", a.size()}, {"identical", a == b}};
  res.summary = "two in-process runs with seed " + std::to_string(seed) + " gave " +
                (a == b ? "byte-identical" : "DIFFERENT") + " reports (" +
                std::to_string(a.size()) + " bytes)";
  if (on_result) on_result(res);
  first.criteria.push_back(std::move(res));
  return first;
}

}  // namespace nilflow::app
