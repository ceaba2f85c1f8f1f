// Command-line front end: configuration, runs, sweeps and CSV output.
//
//   tumorfront [--config FILE] [--set key=value]... [--out DIR] [--jobs N]
//              <analytic|profile|relation> <1d|2d|3d>
//   tumorfront ... <sim1d|simradial|sweep>
//   tumorfront ... compare <1d|radial>
//
// Exit status: 0 success, 1 configuration error, 2 solver error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tumorfront/config.hpp"
#include "tumorfront/freeboundary.hpp"
#include "tumorfront/runner.hpp"

using namespace tumorfront;

namespace {

int dim_from_label(const std::string& s) {
  if (s == "1d") return 1;
  if (s == "2d") return 2;
  if (s == "3d") return 3;
  throw ConfigError("dimension must be 1d, 2d or 3d, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Front propagation in the Brinkman tumor growth model"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int jobs = 1;
  long seed = 0;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides, "override one key, key=value (repeatable)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "concurrent sweep entries")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "reserved; the solvers are deterministic");

  std::string label;
  std::vector<std::pair<CLI::App*, Command>> subs;
  auto add = [&](Command c, const std::string& help, bool positional) {
    auto* sub = app.add_subcommand(to_string(c), help);
    if (positional) sub->add_option("geometry", label, "1d, 2d, 3d (compare: 1d or radial)");
    subs.emplace_back(sub, c);
  };
  add(Command::Analytic, "integrate the free boundary front system", true);
  add(Command::Profile, "three-zone W and Sigma profile", true);
  add(Command::Relation, "inner radius as a function of the outer radius", true);
  add(Command::Sim1d, "1D cell density simulation", false);
  add(Command::SimRadial, "radially symmetric 2D cell density simulation", false);
  add(Command::Compare, "PDE against the free boundary system", true);
  add(Command::Sweep, "parameter sweep", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  RunConfig cfg;
  try {
    FlatConfig flat;
    if (!config_path.empty()) flat = load_config_file(config_path);
    for (const auto& kv : overrides) apply_override(flat, kv);
    for (const auto& [sub, command] : subs) {
      if (!sub->parsed()) continue;
      flat["command"] = to_string(command);
      if (!label.empty()) {
        if (command == Command::Compare) flat["compare.geometry"] = label;
        else flat["geometry.dim"] = dim_from_label(label);
      }
    }
    if (flat.find("command") == flat.end())
      throw ConfigError("no command given (subcommand or 'command' key)");
    if (!out_dir.empty()) flat["output.directory"] = out_dir;
    cfg = config_from_flat(flat);
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    run(cfg, jobs, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const analytic::NoAnsatzSolution& e) {
    std::cerr << "no three-zone solution: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
