#pragma once

// Prediction-correction-projection scheme for the cell density model on a
// symmetric 1D interval with zero boundary values for W and Sigma.

#include <vector>

#include "tumorfront/freeboundary.hpp"
#include "tumorfront/model.hpp"
#include "tumorfront/tridiag.hpp"

namespace tumorfront::pde {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 0.0;
  int n = 0;
  double dx = 0.0;

  static Grid1D make(double x_min, double x_max, int n);
  double node(int j) const { return x_min + (j + 0.5) * dx; }
  std::vector<double> nodes() const;
};

struct SimState {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<double> w;
  Grid1D grid;
};

struct SchemeOptions {
  /// Apply the C_nu terms of the W predictor only where Sigma > 0. With the
  /// flag off the predictor is used everywhere, which switches growth on in
  /// empty space (H(c_p - 0) = 1).
  bool support_mask = true;
  double cfl = 0.4;
  /// Adaptive steps also keep dt * c_s * c_nu / c_z below this number. The
  /// transport sees the pressure relax at rate c_s c_nu / c_z on the grid
  /// scale, and larger steps excite oscillations at the front.
  double stiffness = 1.0;
};

/// dt cap from the stiffness rule (infinite when stiffness <= 0).
double stiffness_dt_limit(const ModelParams& p, const SchemeOptions& opt);

/// Second difference with zero ghost values.
Tridiagonal laplacian_1d(const Grid1D& g);
/// Centered first difference with zero ghost values.
std::vector<double> gradient_1d(const std::vector<double>& v, double dx);

std::vector<double> predict_w(const SimState& s, const ModelParams& p, double dt,
                              const SchemeOptions& opt = {});
std::vector<double> advance_rho(const SimState& s, const std::vector<double>& w_star,
                                const ModelParams& p, double dt, const SchemeOptions& opt = {});

struct Projection {
  std::vector<double> sigma;
  std::vector<double> w;
};
Projection project_w(const std::vector<double>& rho_next, const ModelParams& p,
                     const Grid1D& g);

/// Max-norm of (I - c_z D_xx) w - sigma.
double helmholtz_residual(const std::vector<double>& w, const std::vector<double>& sigma,
                          const ModelParams& p, const Grid1D& g);

/// Max over cells whose neighbours are all inside the support (Sigma > 0) of
/// |-c_s D_xx W* - H|. Zero when no such cell exists.
double interior_limit_residual(const SimState& s, const std::vector<double>& w_star,
                               const ModelParams& p);

SimState step(const SimState& s, const ModelParams& p, double dt, const SchemeOptions& opt = {});

/// Step with dt chosen from the CFL rule, capped by dt_max. The predictor is
/// recomputed with a reduced dt when the new velocities violate the CFL
/// bound. Returns the dt actually used.
double step_adaptive(SimState& s, const ModelParams& p, double dt_max,
                     const SchemeOptions& opt = {});

/// Sigma and W from the (regularized) three-zone profile; rho inverts the
/// state law inside the support and vanishes outside.
SimState init_from_analytic(const analytic::LayerGeometry& geom, const ModelParams& p,
                            const Grid1D& g);

}  // namespace tumorfront::pde
