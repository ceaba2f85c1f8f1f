#pragma once

// Quantities extracted from simulation states: front position, pressure
// jump, volume, front speed, convergence-rate fits and stability monitors.

#include <stdexcept>
#include <vector>

#include "tumorfront/model.hpp"
#include "tumorfront/pde1d.hpp"
#include "tumorfront/pde_radial.hpp"

namespace tumorfront::diag {

class NotDetected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitUnreliable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double front = 0.0;
  double speed = 0.0;
  double jump = 0.0;
  double volume = 0.0;
  double l2_rho = 0.0;
  double l2_sigma = 0.0;
  double max_sigma = 0.0;
  double max_w = 0.0;
};

enum class JumpRule {
  /// Straight line through Sigma on `fit_cells` cells ending `skip` cells
  /// inside the outermost rho >= threshold node, evaluated at the front.
  Extrapolated,
  /// Sigma at the outermost rho >= threshold node, no correction.
  OutermostCell,
};

struct FrontOptions {
  double threshold = 0.5;
  /// Replace each Sigma value by the median of it and its two neighbours
  /// before reading the jump.
  bool median3 = false;
  JumpRule rule = JumpRule::Extrapolated;
  int skip = 3;
  int fit_cells = 8;
};

/// Outermost position where rho drops through the threshold, linearly
/// interpolated between the bracketing nodes. Throws NotDetected when rho
/// never reaches the threshold or never drops below it.
double detect_front(const std::vector<double>& rho, const std::vector<double>& nodes,
                    double threshold = 0.5);
double detect_front(const pde::SimState& s, double threshold = 0.5);
double detect_front(const pde::RadialState& s, double threshold = 0.5);

/// Inner limit of Sigma at the front. The outermost cells are smeared by the
/// transport scheme (rho just below or barely above one, so Sigma is near
/// zero there); by default the value is extrapolated from the cells behind
/// them. Only cells with Sigma > 0 enter the fit. Returns 0 when Sigma
/// vanishes on the whole support.
double measure_jump(const std::vector<double>& rho, const std::vector<double>& sigma,
                    const std::vector<double>& nodes, const FrontOptions& opt = {});
double measure_jump(const pde::SimState& s, const FrontOptions& opt = {});
double measure_jump(const pde::RadialState& s, const FrontOptions& opt = {});

/// Midpoint sum of rho dx, or 2 pi sum rho_j r_j dr on a radial grid.
double volume(const pde::SimState& s);
double volume(const pde::RadialState& s);

/// Centred differences of positions over a sliding window of `window`
/// samples (odd, >= 3). The ends shrink the window one-sidedly.
std::vector<double> estimate_speed(const std::vector<double>& t, const std::vector<double>& r,
                                   int window = 5);

enum class FitMode { ExponentialInT, AlgebraicInR };

struct RateFit {
  double slope = 0.0;
  double prefactor = 0.0;  // exp(intercept)
  double r2fit = 0.0;
  int samples = 0;
};

/// Least-squares fit of log|speed - limit| against t (exponential) or
/// log(x) (algebraic). Samples with |speed - limit| < 1e-13 are dropped;
/// fewer than four remaining samples throw FitUnreliable.
RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& speed, FitMode mode,
                 double limit);

struct StabilityMonitors {
  double l2_rho = 0.0;
  double l2_sigma = 0.0;
  double max_sigma = 0.0;
  double min_sigma = 0.0;
  double max_w = 0.0;
  double min_w = 0.0;
  double support_volume = 0.0;
  bool normalized = false;  // c_s = c_z = c_p = 1
  bool sigma_bound_violated = false;
  bool w_bound_violated = false;
};

/// L2 norms use the quadrature weights of the grid.
StabilityMonitors stability_monitors(const pde::SimState& s, const ModelParams& p);
StabilityMonitors stability_monitors(const pde::RadialState& s, const ModelParams& p);

/// Discrete Gronwall check of one step on squared norms:
/// l2sq_next <= l2sq_prev * exp(rate dt).
bool l2_growth_ok(double l2sq_prev, double l2sq_next, double dt, double rate = 3.5);

}  // namespace tumorfront::diag
