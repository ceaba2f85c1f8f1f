#pragma once

// Run configuration. Files are JSON objects; nested objects are flattened to
// dotted keys ("params.c_z"), and `--set key=value` overrides a single key.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tumorfront/model.hpp"

namespace tumorfront {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Analytic, Profile, Relation, Sim1d, SimRadial, Compare, Sweep };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct RunConfig {
  Command command = Command::Analytic;
  ModelParams params;

  // geometry
  int dim = 1;
  double r0 = 1.5;
  std::optional<double> r1_0;  // inner radius; solved from the relation when absent

  // grid (one of n / spacing)
  double x_max = 10.0;  // 1D half-width, domain [-x_max, x_max]
  double l_r = 10.0;    // radial domain [0, l_r]
  std::optional<int> n;
  std::optional<double> spacing;

  // time (one of dt / cfl)
  double t_end = 5.0;
  std::optional<double> dt;
  std::optional<double> cfl;

  // output
  std::string out_dir = "out";
  int snapshot_stride = 0;  // 0 disables snapshots
  int diag_stride = 10;

  // analytic helpers
  double analytic_eta = 0.0;
  double relation_r_min = 0.5;
  double relation_r_max = 3.0;
  int relation_count = 101;
  double profile_extent = 3.0;
  int profile_points = 601;

  // scheme
  bool support_mask = true;
  double stiffness = 1.0;
  std::string radial_closure = "verbatim";  // or "one_sided"

  // diagnostics
  double threshold = 0.5;
  bool median3 = false;
  int speed_window = 5;
  std::string jump_rule = "extrapolated";  // or "outermost_cell"

  // compare
  std::string compare_geometry = "1d";  // or "radial"
  double dae_dt = 1e-3;

  // sweep
  std::string sweep_parameter;
  std::vector<double> sweep_values;
  std::string sweep_command = "sim1d";

  /// Throws ConfigError naming the first problem.
  void validate() const;
  int cells() const;
  double cell_width() const;
};

/// Flattened key/value view of a configuration.
using FlatConfig = std::map<std::string, nlohmann::json>;

FlatConfig flatten(const nlohmann::json& doc);
FlatConfig load_config_file(const std::string& path);
/// Parses "key=value". The value is read as JSON when possible, otherwise
/// as a plain string.
void apply_override(FlatConfig& flat, const std::string& assignment);
/// Throws ConfigError on unknown keys or wrong value types.
RunConfig config_from_flat(const FlatConfig& flat);
FlatConfig config_to_flat(const RunConfig& cfg);

}  // namespace tumorfront
