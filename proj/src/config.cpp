#include "tumorfront/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace tumorfront {
namespace {

using nlohmann::json;

struct Field {
  std::function<void(RunConfig&, const json&)> set;
  std::function<std::optional<json>(const RunConfig&)> get;
};

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' expects a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
  const double d = as_number(v, key);
  if (d != std::floor(d) || std::abs(d) > 2e9)
    throw ConfigError("config key '" + key + "' expects an integer");
  return static_cast<int>(d);
}

bool as_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("config key '" + key + "' expects true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config key '" + key + "' expects a string");
  return v.get<std::string>();
}

template <class T>
Field plain(T RunConfig::*member) {
  Field f;
  f.get = [member](const RunConfig& c) -> std::optional<json> { return json(c.*member); };
  return f;
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    auto number = [&t](const std::string& key, double RunConfig::*m) {
      Field f = plain(m);
      f.set = [m, key](RunConfig& c, const json& v) { c.*m = as_number(v, key); };
      t[key] = f;
    };
    auto integer = [&t](const std::string& key, int RunConfig::*m) {
      Field f = plain(m);
      f.set = [m, key](RunConfig& c, const json& v) { c.*m = as_int(v, key); };
      t[key] = f;
    };
    auto boolean = [&t](const std::string& key, bool RunConfig::*m) {
      Field f = plain(m);
      f.set = [m, key](RunConfig& c, const json& v) { c.*m = as_bool(v, key); };
      t[key] = f;
    };
    auto text = [&t](const std::string& key, std::string RunConfig::*m) {
      Field f = plain(m);
      f.set = [m, key](RunConfig& c, const json& v) { c.*m = as_string(v, key); };
      t[key] = f;
    };
    auto param = [&t](const std::string& key, double ModelParams::*m) {
      Field f;
      f.set = [m, key](RunConfig& c, const json& v) { c.params.*m = as_number(v, key); };
      f.get = [m](const RunConfig& c) -> std::optional<json> { return json(c.params.*m); };
      t[key] = f;
    };
    auto maybe_number = [&t](const std::string& key, std::optional<double> RunConfig::*m) {
      Field f;
      f.set = [m, key](RunConfig& c, const json& v) {
        if (v.is_null()) c.*m = std::nullopt;
        else c.*m = as_number(v, key);
      };
      f.get = [m](const RunConfig& c) -> std::optional<json> {
        if (!(c.*m)) return std::nullopt;
        return json(*(c.*m));
      };
      t[key] = f;
    };

    Field cmd;
    cmd.set = [](RunConfig& c, const json& v) {
      c.command = command_from_string(as_string(v, "command"));
    };
    cmd.get = [](const RunConfig& c) -> std::optional<json> { return json(to_string(c.command)); };
    t["command"] = cmd;

    param("params.c_s", &ModelParams::c_s);
    param("params.c_z", &ModelParams::c_z);
    param("params.c_p", &ModelParams::c_p);
    param("params.c_nu", &ModelParams::c_nu);
    param("params.eta", &ModelParams::eta);

    integer("geometry.dim", &RunConfig::dim);
    number("geometry.r0", &RunConfig::r0);
    maybe_number("geometry.r1_0", &RunConfig::r1_0);

    number("grid.x_max", &RunConfig::x_max);
    number("grid.l_r", &RunConfig::l_r);
    maybe_number("grid.dx", &RunConfig::spacing);
    Field cells;
    cells.set = [](RunConfig& c, const json& v) {
      if (v.is_null()) c.n = std::nullopt;
      else c.n = as_int(v, "grid.n");
    };
    cells.get = [](const RunConfig& c) -> std::optional<json> {
      if (!c.n) return std::nullopt;
      return json(*c.n);
    };
    t["grid.n"] = cells;

    number("time.t_end", &RunConfig::t_end);
    maybe_number("time.dt", &RunConfig::dt);
    maybe_number("time.cfl", &RunConfig::cfl);

    text("output.directory", &RunConfig::out_dir);
    integer("output.snapshot_stride", &RunConfig::snapshot_stride);
    integer("output.diag_stride", &RunConfig::diag_stride);

    number("analytic.eta", &RunConfig::analytic_eta);
    number("relation.r_min", &RunConfig::relation_r_min);
    number("relation.r_max", &RunConfig::relation_r_max);
    integer("relation.count", &RunConfig::relation_count);
    number("profile.extent", &RunConfig::profile_extent);
    integer("profile.points", &RunConfig::profile_points);

    boolean("scheme.support_mask", &RunConfig::support_mask);
    number("scheme.stiffness", &RunConfig::stiffness);
    text("scheme.radial_closure", &RunConfig::radial_closure);

    number("diagnostics.threshold", &RunConfig::threshold);
    boolean("diagnostics.median3", &RunConfig::median3);
    integer("diagnostics.speed_window", &RunConfig::speed_window);
    text("diagnostics.jump_rule", &RunConfig::jump_rule);

    text("compare.geometry", &RunConfig::compare_geometry);
    number("compare.dae_dt", &RunConfig::dae_dt);

    text("sweep.parameter", &RunConfig::sweep_parameter);
    text("sweep.command", &RunConfig::sweep_command);
    Field values;
    values.set = [](RunConfig& c, const json& v) {
      if (!v.is_array()) throw ConfigError("config key 'sweep.values' expects a list of numbers");
      c.sweep_values.clear();
      for (const auto& x : v) c.sweep_values.push_back(as_number(x, "sweep.values"));
    };
    values.get = [](const RunConfig& c) -> std::optional<json> { return json(c.sweep_values); };
    t["sweep.values"] = values;
    return t;
  }();
  return table;
}

void flatten_into(const json& node, const std::string& prefix, FlatConfig& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten_into(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  out[prefix] = node;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Analytic: return "analytic";
    case Command::Profile: return "profile";
    case Command::Relation: return "relation";
    case Command::Sim1d: return "sim1d";
    case Command::SimRadial: return "simradial";
    case Command::Compare: return "compare";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::Analytic, Command::Profile, Command::Relation, Command::Sim1d,
                    Command::SimRadial, Command::Compare, Command::Sweep}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("unknown command '" + s + "'");
}

int RunConfig::cells() const {
  const double width = command == Command::SimRadial ||
                               (command == Command::Compare && compare_geometry == "radial")
                           ? l_r
                           : 2.0 * x_max;
  if (n) return *n;
  const double dx = spacing.value_or(0.0125);
  return static_cast<int>(std::lround(width / dx));
}

double RunConfig::cell_width() const {
  const bool radial = command == Command::SimRadial ||
                      (command == Command::Compare && compare_geometry == "radial");
  return (radial ? l_r : 2.0 * x_max) / cells();
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(dim >= 1 && dim <= 3, "geometry.dim must be 1, 2 or 3");
  require(std::isfinite(r0) && r0 > 0.0, "geometry.r0 must be positive");
  if (r1_0) require(*r1_0 >= 0.0 && *r1_0 <= r0, "geometry.r1_0 must lie in [0, geometry.r0]");
  require(x_max > 0.0 && l_r > 0.0, "grid extents must be positive");
  require(!(n && spacing), "give only one of grid.n and grid.dx");
  if (n) require(*n >= 3, "grid.n must be at least 3");
  if (spacing) require(*spacing > 0.0, "grid.dx must be positive");
  require(std::isfinite(t_end) && t_end > 0.0, "time.t_end must be positive");
  require(!(dt && cfl), "give only one of time.dt and time.cfl");
  if (dt) require(*dt > 0.0, "time.dt must be positive");
  if (cfl) require(*cfl > 0.0 && *cfl <= 0.5, "time.cfl must lie in (0, 0.5]");
  require(snapshot_stride >= 0, "output.snapshot_stride must be >= 0");
  require(diag_stride >= 1, "output.diag_stride must be >= 1");
  require(!out_dir.empty(), "output.directory must not be empty");
  require(analytic_eta >= 0.0 && analytic_eta < params.c_p,
          "analytic.eta must lie in [0, params.c_p)");
  require(relation_r_min > 0.0 && relation_r_max >= relation_r_min && relation_count >= 1,
          "relation range must satisfy 0 < r_min <= r_max and count >= 1");
  require(profile_extent > 0.0 && profile_points >= 2, "profile grid is empty");
  require(radial_closure == "verbatim" || radial_closure == "one_sided",
          "scheme.radial_closure must be 'verbatim' or 'one_sided'");
  require(threshold > 0.0, "diagnostics.threshold must be positive");
  require(speed_window >= 3 && speed_window % 2 == 1,
          "diagnostics.speed_window must be odd and >= 3");
  require(jump_rule == "extrapolated" || jump_rule == "outermost_cell",
          "diagnostics.jump_rule must be 'extrapolated' or 'outermost_cell'");
  require(compare_geometry == "1d" || compare_geometry == "radial",
          "compare.geometry must be '1d' or 'radial'");
  require(dae_dt > 0.0, "compare.dae_dt must be positive");
  if (command == Command::Sweep) {
    require(!sweep_parameter.empty(), "sweep.parameter is required");
    require(fields().count(sweep_parameter) == 1,
            "sweep.parameter '" + sweep_parameter + "' is not a config key");
    require(!sweep_values.empty(), "sweep.values must not be empty");
    const bool positive = sweep_parameter.rfind("params.", 0) == 0 ||
                          sweep_parameter.rfind("grid.", 0) == 0 ||
                          sweep_parameter.rfind("time.", 0) == 0;
    for (double v : sweep_values) {
      require(std::isfinite(v), "sweep.values must be finite");
      if (positive) require(v > 0.0, "sweep.values must be positive for " + sweep_parameter);
    }
    const Command inner = command_from_string(sweep_command);
    require(inner != Command::Sweep, "sweep.command cannot be 'sweep'");
  }
  if (command == Command::Analytic) require(!cfl, "analytic runs take time.dt, not time.cfl");
}

FlatConfig flatten(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  FlatConfig out;
  flatten_into(doc, "", out);
  return out;
}

FlatConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return flatten(json::parse(in, nullptr, true, true));
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

void apply_override(FlatConfig& flat, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  flat[key] = value;
}

RunConfig config_from_flat(const FlatConfig& flat) {
  RunConfig cfg;
  const auto& table = fields();
  for (const auto& [key, value] : flat) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second.set(cfg, value);
  }
  return cfg;
}

FlatConfig config_to_flat(const RunConfig& cfg) {
  FlatConfig out;
  for (const auto& [key, field] : fields()) {
    if (auto v = field.get(cfg)) out[key] = *v;
  }
  return out;
}

}  // namespace tumorfront
