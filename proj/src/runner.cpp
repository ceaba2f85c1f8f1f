#include "tumorfront/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tumorfront/freeboundary.hpp"
#include "tumorfront/pde1d.hpp"
#include "tumorfront/pde_radial.hpp"

namespace tumorfront {
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void prepare_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_config_copy(const RunConfig& cfg, const std::string& dir) {
  nlohmann::json doc(nlohmann::json::value_t::object);
  for (const auto& [k, v] : config_to_flat(cfg)) doc[k] = v;
  std::ofstream out(join(dir, "config.json"), std::ios::binary);
  out << doc.dump(2) << '\n';
}

double limit_speed(const ModelParams& p) {
  const auto tw = analytic::traveling_wave(p);
  return tw ? tw->speed : kNaN;
}

diag::FrontOptions front_options(const RunConfig& cfg) {
  diag::FrontOptions o;
  o.threshold = cfg.threshold;
  o.median3 = cfg.median3;
  o.rule = cfg.jump_rule == "outermost_cell" ? diag::JumpRule::OutermostCell
                                             : diag::JumpRule::Extrapolated;
  return o;
}

double fit_or_nan(const std::vector<double>& x, const std::vector<double>& v, diag::FitMode mode,
                  double limit) {
  if (std::isnan(limit)) return kNaN;
  try {
    return diag::fit_rate(x, v, mode, limit).slope;
  } catch (const diag::FitUnreliable&) {
    return kNaN;
  }
}

// Glue between the generic driver and the two geometries.
struct OneD {
  using State = pde::SimState;
  using Options = pde::SchemeOptions;
  static constexpr double kEdgeTolerance = 1e-8;

  static State init(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    const double r1 =
        cfg.r1_0 ? *cfg.r1_0 : analytic::solve_r1_given_r(analytic::Dim::One, cfg.r0, p, p.eta);
    const auto grid = pde::Grid1D::make(-cfg.x_max, cfg.x_max, cfg.cells());
    return pde::init_from_analytic(analytic::LayerGeometry::make(r1, cfg.r0), p, grid);
  }
  static Options options(const RunConfig& cfg) {
    Options o;
    o.support_mask = cfg.support_mask;
    o.cfl = cfg.cfl.value_or(0.4);
    o.stiffness = cfg.stiffness;
    return o;
  }
  static double adaptive(State& s, const ModelParams& p, double dt_max, const Options& o) {
    return pde::step_adaptive(s, p, dt_max, o);
  }
  static void fixed(State& s, const ModelParams& p, double dt, const Options& o) {
    s = pde::step(s, p, dt, o);
  }
  static double limit_residual(const State& s, const ModelParams& p, double dt, const Options& o) {
    return pde::interior_limit_residual(s, pde::predict_w(s, p, dt, o), p);
  }
  static std::vector<double> nodes(const State& s) { return s.grid.nodes(); }
  static double edge_w(const State& s) { return std::max(std::abs(s.w.front()), std::abs(s.w.back())); }
};

struct Radial {
  using State = pde::RadialState;
  using Options = pde::RadialOptions;
  static constexpr double kEdgeTolerance = 1e-6;

  static State init(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    const double r1 =
        cfg.r1_0 ? *cfg.r1_0 : analytic::solve_r1_given_r(analytic::Dim::Two, cfg.r0, p, p.eta);
    const auto grid = pde::RadialGrid::make(cfg.l_r, cfg.cells());
    return pde::init_from_analytic_radial(analytic::LayerGeometry::make(r1, cfg.r0), p, grid);
  }
  static Options options(const RunConfig& cfg) {
    Options o;
    o.support_mask = cfg.support_mask;
    o.cfl = cfg.cfl.value_or(0.4);
    o.stiffness = cfg.stiffness;
    o.closure = cfg.radial_closure == "one_sided" ? pde::RadialDerivativeClosure::OneSided
                                                  : pde::RadialDerivativeClosure::Verbatim;
    return o;
  }
  static double adaptive(State& s, const ModelParams& p, double dt_max, const Options& o) {
    return pde::step_adaptive_radial(s, p, dt_max, o);
  }
  static void fixed(State& s, const ModelParams& p, double dt, const Options& o) {
    s = pde::step_radial(s, p, dt, o);
  }
  static double limit_residual(const State& s, const ModelParams& p, double dt, const Options& o) {
    return pde::interior_limit_residual_radial(s, pde::predict_w_radial(s, p, dt, o), p);
  }
  static std::vector<double> nodes(const State& s) { return s.grid.nodes(); }
  static double edge_w(const State& s) { return std::abs(s.w.back()); }
};

template <class G>
void write_snapshot(const typename G::State& s, const std::string& dir, long index) {
  char name[64];
  std::snprintf(name, sizeof name, "snapshot_%04ld.csv", index);
  CsvWriter csv(join(dir, name), {"x_or_r", "rho", "Sigma", "W"});
  const auto x = G::nodes(s);
  for (std::size_t j = 0; j < x.size(); ++j) csv.row({x[j], s.rho[j], s.sigma[j], s.w[j]});
}

template <class G>
SimTrace simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const ModelParams& p = cfg.params;
  const auto opt = G::options(cfg);
  const auto fopt = front_options(cfg);
  auto s = G::init(cfg);
  if (!out_dir.empty()) prepare_dir(out_dir);

  SimTrace trace;
  trace.min_rho = *std::min_element(s.rho.begin(), s.rho.end());
  trace.max_sigma = *std::max_element(s.sigma.begin(), s.sigma.end());
  trace.max_w = *std::max_element(s.w.begin(), s.w.end());
  trace.min_w = *std::min_element(s.w.begin(), s.w.end());
  trace.max_l2_rate = -std::numeric_limits<double>::infinity();

  auto record = [&]() {
    diag::DiagnosticsRecord r;
    r.t = s.t;
    try {
      r.front = diag::detect_front(s, cfg.threshold);
      r.jump = diag::measure_jump(s, fopt);
    } catch (const diag::NotDetected& e) {
      std::ostringstream os;
      os << "front lost at t=" << s.t << " (" << e.what() << "); enlarge the domain";
      throw std::runtime_error(os.str());
    }
    r.volume = diag::volume(s);
    const auto m = diag::stability_monitors(s, p);
    r.l2_rho = m.l2_rho;
    r.l2_sigma = m.l2_sigma;
    r.max_sigma = m.max_sigma;
    r.max_w = m.max_w;
    trace.records.push_back(r);
  };

  record();
  long snapshot = 0;
  if (!out_dir.empty() && cfg.snapshot_stride > 0) write_snapshot<G>(s, out_dir, snapshot++);

  double l2sq = std::pow(diag::stability_monitors(s, p).l2_rho, 2);
  double last_dt = cfg.dt.value_or(0.0);
  const double t_stop = cfg.t_end * (1.0 - 1e-12);
  while (s.t < t_stop) {
    const double remaining = cfg.t_end - s.t;
    if (cfg.dt) {
      last_dt = std::min(*cfg.dt, remaining);
      G::fixed(s, p, last_dt, opt);
    } else {
      last_dt = G::adaptive(s, p, remaining, opt);
    }
    ++trace.steps;

    const auto m = diag::stability_monitors(s, p);
    trace.min_rho = std::min(trace.min_rho, *std::min_element(s.rho.begin(), s.rho.end()));
    trace.max_sigma = std::max(trace.max_sigma, m.max_sigma);
    trace.max_w = std::max(trace.max_w, m.max_w);
    trace.min_w = std::min(trace.min_w, m.min_w);
    const double l2sq_next = m.l2_rho * m.l2_rho;
    if (l2sq > 0.0 && l2sq_next > 0.0)
      trace.max_l2_rate = std::max(trace.max_l2_rate, std::log(l2sq_next / l2sq) / last_dt);
    l2sq = l2sq_next;

    const bool done = s.t >= t_stop;
    if (trace.steps % cfg.diag_stride == 0 || done) record();
    if (!out_dir.empty() && cfg.snapshot_stride > 0 && trace.steps % cfg.snapshot_stride == 0)
      write_snapshot<G>(s, out_dir, snapshot++);
  }
  if (last_dt > 0.0) trace.limit_residual = G::limit_residual(s, p, last_dt, opt);

  std::vector<double> t, front;
  for (const auto& r : trace.records) {
    t.push_back(r.t);
    front.push_back(r.front);
  }
  if (t.size() >= 2) {
    const int window = std::min<int>(cfg.speed_window, static_cast<int>(t.size()) | 1);
    const auto v = diag::estimate_speed(t, front, std::max(3, window));
    for (std::size_t i = 0; i < v.size(); ++i) trace.records[i].speed = v[i];
  }

  const double wmax = std::max(std::abs(trace.max_w), std::abs(trace.min_w));
  trace.boundary_w_ratio = wmax > 0.0 ? G::edge_w(s) / wmax : 0.0;
  if (trace.boundary_w_ratio > G::kEdgeTolerance) {
    log << "warning: |W| at the domain edge is " << trace.boundary_w_ratio
        << " of its maximum (limit " << G::kEdgeTolerance << "); enlarge the domain\n";
  }

  if (!out_dir.empty()) {
    CsvWriter csv(join(out_dir, "diagnostics.csv"),
                  {"t", "front", "speed", "jump", "volume", "l2_rho", "l2_sigma", "max_sigma",
                   "max_w"});
    for (const auto& r : trace.records)
      csv.row({r.t, r.front, r.speed, r.jump, r.volume, r.l2_rho, r.l2_sigma, r.max_sigma,
               r.max_w});
  }
  return trace;
}

// Indices of records in the last `fraction` of the time span.
std::vector<std::size_t> tail(const SimTrace& trace, double fraction) {
  std::vector<std::size_t> idx;
  if (trace.records.empty()) return idx;
  const double t0 = trace.records.front().t;
  const double t1 = trace.records.back().t;
  const double cut = t1 - fraction * (t1 - t0);
  for (std::size_t i = 0; i < trace.records.size(); ++i)
    if (trace.records[i].t >= cut) idx.push_back(i);
  return idx;
}

double tail_slope(const SimTrace& trace, double fraction, double diag::DiagnosticsRecord::*field) {
  const auto idx = tail(trace, fraction);
  if (idx.size() < 2) return kNaN;
  double mt = 0.0, my = 0.0;
  for (auto i : idx) {
    mt += trace.records[i].t;
    my += trace.records[i].*field;
  }
  mt /= static_cast<double>(idx.size());
  my /= static_cast<double>(idx.size());
  double stt = 0.0, sty = 0.0;
  for (auto i : idx) {
    const double dt = trace.records[i].t - mt;
    stt += dt * dt;
    sty += dt * (trace.records[i].*field - my);
  }
  return sty / stt;
}

RunSummary run_analytic(const RunConfig& cfg, std::ostream& log) {
  const auto dim = analytic::dim_from_int(cfg.dim);
  const ModelParams& p = cfg.params;
  const auto series = analytic::integrate_front(dim, cfg.r0, p, cfg.t_end, cfg.dt.value_or(1e-2));
  prepare_dir(cfg.out_dir);
  CsvWriter csv(join(cfg.out_dir, "front.csv"), {"t", "R", "R1", "R2", "speed", "jump"});
  for (std::size_t i = 0; i < series.size(); ++i)
    csv.row({series.t[i], series.r[i], series.r1[i], series.r[i] - series.r1[i], series.speed[i],
             series.jump[i]});

  RunSummary s;
  s.final_speed = series.speed.back();
  s.final_jump = series.jump.back();
  s.fitted_rate = dim == analytic::Dim::One
                      ? fit_or_nan(series.t, series.speed, diag::FitMode::ExponentialInT,
                                   limit_speed(p))
                      : fit_or_nan(series.r, series.speed, diag::FitMode::AlgebraicInR,
                                   limit_speed(p));
  log << "analytic " << cfg.dim << "d: R(" << cfg.t_end << ")=" << series.r.back()
      << " speed=" << s.final_speed << " jump=" << s.final_jump << '\n';
  return s;
}

RunSummary run_profile(const RunConfig& cfg, std::ostream& log) {
  const auto dim = analytic::dim_from_int(cfg.dim);
  const ModelParams& p = cfg.params;
  const double r1 = cfg.r1_0 ? *cfg.r1_0 : analytic::solve_r1_given_r(dim, cfg.r0, p, cfg.analytic_eta);
  const auto grid = dim == analytic::Dim::One
                        ? linspace(-cfg.profile_extent, cfg.profile_extent, cfg.profile_points)
                        : linspace(0.0, cfg.profile_extent, cfg.profile_points);
  const auto prof =
      analytic::profile(dim, analytic::LayerGeometry::make(r1, cfg.r0), p, cfg.analytic_eta, grid);
  prepare_dir(cfg.out_dir);
  CsvWriter csv(join(cfg.out_dir, "profile.csv"), {"x_or_r", "zone", "W", "Sigma"});
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv.row({format_double(grid[i]), analytic::to_string(prof.zone[i]), format_double(prof.w[i]),
             format_double(prof.sigma[i])});
  log << "profile " << cfg.dim << "d: R=" << cfg.r0 << " R1=" << r1
      << " relation residual=" << prof.relation_residual
      << (prof.relation_violated ? " (W has a kink at R)" : "") << '\n';
  RunSummary s;
  s.final_speed = analytic::front_speed(dim, cfg.r0, r1, p, cfg.analytic_eta);
  s.final_jump = analytic::pressure_jump(dim, cfg.r0, r1, p, cfg.analytic_eta);
  s.fitted_rate = kNaN;
  return s;
}

RunSummary run_relation(const RunConfig& cfg, std::ostream& log) {
  const auto dim = analytic::dim_from_int(cfg.dim);
  prepare_dir(cfg.out_dir);
  CsvWriter csv(join(cfg.out_dir, "relation.csv"), {"R", "R1", "R2"});
  int missing = 0;
  for (double r : linspace(cfg.relation_r_min, cfg.relation_r_max, cfg.relation_count)) {
    double r1 = kNaN;
    try {
      r1 = analytic::solve_r1_given_r(dim, r, cfg.params, cfg.analytic_eta);
    } catch (const analytic::NoAnsatzSolution&) {
      ++missing;
    }
    csv.row({r, r1, r - r1});
  }
  if (missing > 0) log << "relation: " << missing << " radii admit no three-zone solution\n";
  return RunSummary{kNaN, kNaN, kNaN};
}

template <class G>
RunSummary run_sim(const RunConfig& cfg, std::ostream& log, diag::FitMode mode) {
  const auto trace = simulate<G>(cfg, cfg.out_dir, log);
  write_config_copy(cfg, cfg.out_dir);
  RunSummary s;
  s.final_speed = late_speed(trace);
  s.final_jump = late_jump(trace);
  std::vector<double> x, v;
  for (const auto& r : trace.records) {
    x.push_back(mode == diag::FitMode::ExponentialInT ? r.t : r.front);
    v.push_back(r.speed);
  }
  s.fitted_rate = fit_or_nan(x, v, mode, limit_speed(cfg.params));
  log << to_string(cfg.command) << ": " << trace.steps << " steps, front "
      << trace.records.back().front << " at t=" << trace.records.back().t
      << ", late speed " << s.final_speed << ", late jump " << s.final_jump << '\n';
  return s;
}

RunSummary run_compare(const RunConfig& cfg, std::ostream& log) {
  const bool radial = cfg.compare_geometry == "radial";
  const auto dim = radial ? analytic::Dim::Two : analytic::Dim::One;
  const auto trace = radial ? simulate<Radial>(cfg, cfg.out_dir, log)
                            : simulate<OneD>(cfg, cfg.out_dir, log);
  write_config_copy(cfg, cfg.out_dir);
  const auto& rec = trace.records;

  // The free boundary system needs a radius that admits the three-zone
  // ansatz; start it at the first sample where the PDE front does.
  std::size_t start = rec.size();
  double r_start = 0.0;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const double r = i == 0 ? cfg.r0 : rec[i].front;
    try {
      analytic::solve_r1_given_r(dim, r, cfg.params);
      start = i;
      r_start = r;
      break;
    } catch (const analytic::NoAnsatzSolution&) {
    }
  }
  analytic::FrontSeries dae;
  if (start < rec.size()) {
    const double span = rec.back().t - rec[start].t;
    if (span > 0.0) dae = analytic::integrate_front(dim, r_start, cfg.params, span, cfg.dae_dt);
    if (start > 0)
      log << "compare: free boundary system starts at t=" << rec[start].t << " (R=" << r_start
          << ")\n";
  } else {
    log << "compare: the PDE front never admits a three-zone solution\n";
  }

  auto dae_at = [&](double t, const std::vector<double>& field) {
    if (dae.size() == 0) return kNaN;
    const double tau = t - rec[start].t;
    if (tau < -1e-12) return kNaN;
    auto it = std::lower_bound(dae.t.begin(), dae.t.end(), tau);
    if (it == dae.t.end()) return field.back();
    const auto k = static_cast<std::size_t>(it - dae.t.begin());
    if (k == 0) return field.front();
    const double w = (tau - dae.t[k - 1]) / (dae.t[k] - dae.t[k - 1]);
    return (1.0 - w) * field[k - 1] + w * field[k];
  };

  CsvWriter csv(join(cfg.out_dir, "discrepancy.csv"),
                {"t", "R_pde", "R_dae", "jump_pde", "jump_dae", "abs_err_R", "rel_err_R",
                 "abs_err_jump", "rel_err_jump"});
  for (const auto& r : rec) {
    const double rd = dae_at(r.t, dae.r);
    const double jd = dae_at(r.t, dae.jump);
    csv.row({r.t, r.front, rd, r.jump, jd, std::abs(r.front - rd), std::abs(r.front - rd) / rd,
             std::abs(r.jump - jd), std::abs(r.jump - jd) / jd});
  }
  RunSummary s;
  s.final_speed = late_speed(trace);
  s.final_jump = late_jump(trace);
  s.fitted_rate = kNaN;
  if (dae.size() > 0)
    log << "compare: R_pde=" << rec.back().front << " R_dae=" << dae.r.back() << '\n';
  return s;
}

std::string entry_name(const std::string& key, double value) {
  const auto dot = key.rfind('.');
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return (dot == std::string::npos ? key : key.substr(dot + 1)) + "_" + buf;
}

RunSummary run_sweep(const RunConfig& cfg, int jobs, std::ostream& log) {
  const std::size_t n = cfg.sweep_values.size();
  std::vector<RunConfig> entries;
  for (double v : cfg.sweep_values) {
    FlatConfig flat = config_to_flat(cfg);
    flat["command"] = cfg.sweep_command;
    flat[cfg.sweep_parameter] = v;
    flat["output.directory"] = join(cfg.out_dir, entry_name(cfg.sweep_parameter, v));
    flat.erase("sweep.parameter");
    flat.erase("sweep.values");
    auto sub = config_from_flat(flat);
    sub.validate();
    entries.push_back(sub);
  }

  std::vector<RunSummary> results(n);
  std::vector<std::ostringstream> logs(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = run(entries[i], 1, logs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < n; ++i) log << logs[i].str();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  prepare_dir(cfg.out_dir);
  CsvWriter csv(join(cfg.out_dir, "summary.csv"),
                {"value", "final_speed", "final_jump", "fitted_rate"});
  for (std::size_t i = 0; i < n; ++i)
    csv.row({cfg.sweep_values[i], results[i].final_speed, results[i].final_jump,
             results[i].fitted_rate});
  return RunSummary{kNaN, kNaN, kNaN};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary | std::ios::trunc);
  if (!impl_->out) {
    delete impl_;
    throw std::runtime_error("cannot write '" + path + "'");
  }
  row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) impl_->out << ',';
    impl_->out << cells[i];
  }
  impl_->out << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row(cells);
}

SimTrace simulate_1d(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  return simulate<OneD>(cfg, out_dir, log);
}

SimTrace simulate_radial(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  return simulate<Radial>(cfg, out_dir, log);
}

double late_speed(const SimTrace& trace, double fraction) {
  return tail_slope(trace, fraction, &diag::DiagnosticsRecord::front);
}

double late_volume_slope(const SimTrace& trace, double fraction) {
  return tail_slope(trace, fraction, &diag::DiagnosticsRecord::volume);
}

double late_jump(const SimTrace& trace, double fraction) {
  const auto idx = tail(trace, fraction);
  if (idx.empty()) return kNaN;
  double sum = 0.0;
  for (auto i : idx) sum += trace.records[i].jump;
  return sum / static_cast<double>(idx.size());
}

RunSummary run(const RunConfig& cfg, int jobs, std::ostream& log) {
  cfg.validate();
  switch (cfg.command) {
    case Command::Analytic:
      return run_analytic(cfg, log);
    case Command::Profile:
      return run_profile(cfg, log);
    case Command::Relation:
      return run_relation(cfg, log);
    case Command::Sim1d:
      return run_sim<OneD>(cfg, log, diag::FitMode::ExponentialInT);
    case Command::SimRadial:
      return run_sim<Radial>(cfg, log, diag::FitMode::AlgebraicInR);
    case Command::Compare:
      return run_compare(cfg, log);
    case Command::Sweep:
      return run_sweep(cfg, jobs, log);
  }
  throw ConfigError("unhandled command");
}

}  // namespace tumorfront
