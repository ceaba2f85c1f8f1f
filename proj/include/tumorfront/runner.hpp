#pragma once

// Command execution: every subcommand writes its CSV files into the output
// directory and returns a short summary used by sweeps.

#include <iosfwd>
#include <string>
#include <vector>

#include "tumorfront/config.hpp"
#include "tumorfront/diagnostics.hpp"

namespace tumorfront {

struct RunSummary {
  double final_speed = 0.0;
  double final_jump = 0.0;
  double fitted_rate = 0.0;
};

/// Diagnostics of one PDE trajectory plus step statistics.
struct SimTrace {
  std::vector<diag::DiagnosticsRecord> records;
  long steps = 0;
  double min_rho = 0.0;
  double max_sigma = 0.0;
  double max_w = 0.0;
  double min_w = 0.0;
  /// Largest per-step value of ln(|rho|^2_{n+1} / |rho|^2_n) / dt.
  double max_l2_rate = 0.0;
  /// Interior residual |-c_s D_xx W* - H| of the last predictor.
  double limit_residual = 0.0;
  double boundary_w_ratio = 0.0;  // |W| at the outer edge over max |W|
};

/// Formats with 17 significant digits.
std::string format_double(double v);

/// Writes a header line and rows; LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  struct Impl;
  Impl* impl_;
};

/// PDE drivers. `out_dir` empty means no files are written.
SimTrace simulate_1d(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);
SimTrace simulate_radial(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Front speed over the last `fraction` of a trace, from a least-squares line.
double late_speed(const SimTrace& trace, double fraction = 0.2);
double late_jump(const SimTrace& trace, double fraction = 0.2);
double late_volume_slope(const SimTrace& trace, double fraction = 0.2);

/// Executes cfg.command. Sweeps run up to `jobs` entries concurrently.
RunSummary run(const RunConfig& cfg, int jobs, std::ostream& log);

}  // namespace tumorfront
