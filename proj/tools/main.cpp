#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nilflow/errors.hpp>
#include <nilflow/version.hpp>

#include "app/commands.hpp"
#include "app/config.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace nilflow::app;

  CLI::App cli{"Geodesic flows on the Heisenberg nilmanifold, the round sphere and their "
               "reduced product"};
  cli.set_version_flag("--version", std::string(nilflow::kVersion));
  cli.require_subcommand(1, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;

  cli.add_option("--config", config_path, "JSON experiment config");
  cli.add_option("--set", overrides, "Override a config value, KEY=VALUE with dotted keys")
      ->take_all();
  cli.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  auto* seed_opt = cli.add_option("--seed", seed, "Seed for random initial states");
  cli.add_flag("--quiet", quiet, "Suppress progress output");

  const std::map<std::string, std::string> about{
      {"simulate", "Integrate trajectories and write CSV time series"},
      {"audit-invariants", "Drift of first integrals, the nu bound and fibration drift"},
      {"brackets", "Finite-difference Poisson brackets of first integrals"},
      {"rank", "Rank of the integral differentials over samples"},
      {"scan-tori", "Fibration values, ranks and drift over samples"},
      {"rotation", "Rotation vectors on regular fibres and a minimality verdict"},
      {"recurrence", "Forward and backward first-return times"},
      {"lyapunov", "Largest Lyapunov exponent estimates"},
      {"selftest", "Run the acceptance suite"},
  };
  for (const auto& name : command_names()) {
    const auto it = about.find(name);
    cli.add_subcommand(name, it == about.end() ? "" : it->second)->fallthrough();
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }
  const std::string command = cli.get_subcommands().front()->get_name();

  RunContext ctx;
  ctx.quiet = quiet;
  ctx.log = &std::cout;
  try {
    Json user = config_path.empty() ? Json(nullptr) : load_config_file(config_path);
    Json cfg = merge_config(user);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (seed_opt->count() > 0) cfg["seed"] = seed;
    if (!out_dir.empty()) cfg["output"]["dir"] = out_dir;
    validate(cfg);
    ctx.config = cfg;
    ctx.out_dir = cfg["output"]["dir"].get<std::string>();
    return run_command(command, ctx);
  } catch (const ConfigError& e) {
    std::cerr << "nilflow " << command << ": config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const Json::exception& e) {
    std::cerr << "nilflow " << command << ": config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const nilflow::NumericalError& e) {
    std::cerr << "nilflow " << command << ": numerical failure: " << e.what() << '\n';
    return kNumericalExit;
  } catch (const std::exception& e) {
    std::cerr << "nilflow " << command << ": " << e.what() << '\n';
    return 1;
  }
}
