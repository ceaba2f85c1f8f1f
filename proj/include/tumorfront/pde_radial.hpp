#pragma once

// Radially symmetric 2D version of the scheme. Nodes sit at cell centres
// r_j = dr/2 + (j-1) dr, so the origin is never a node; both ends use
// Neumann closures for W and the transport acts on g = r rho.

#include <vector>

#include "tumorfront/freeboundary.hpp"
#include "tumorfront/model.hpp"
#include "tumorfront/pde1d.hpp"
#include "tumorfront/tridiag.hpp"

namespace tumorfront::pde {

struct RadialGrid {
  double l_r = 0.0;
  int n_r = 0;
  double dr = 0.0;

  static RadialGrid make(double l_r, int n_r);
  double node(int j) const { return (j + 0.5) * dr; }  // j is zero-based
  std::vector<double> nodes() const;
};

struct RadialState {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> sigma;
  std::vector<double> w;
  RadialGrid grid;
};

/// First-derivative closure at the two end nodes.
enum class RadialDerivativeClosure {
  Verbatim,  // (W2 - W1)/(2 dr), i.e. a centred difference with a mirror ghost
  OneSided,  // (W2 - W1)/dr
};

struct RadialOptions : SchemeOptions {
  RadialDerivativeClosure closure = RadialDerivativeClosure::Verbatim;
};

/// (1/r)(r W_r)_r with Neumann closures at both ends.
Tridiagonal radial_laplacian_matrix(const RadialGrid& g);
std::vector<double> radial_laplacian(const std::vector<double>& w, const RadialGrid& g);
std::vector<double> radial_gradient(const std::vector<double>& v, const RadialGrid& g,
                                    RadialDerivativeClosure closure);

std::vector<double> predict_w_radial(const RadialState& s, const ModelParams& p, double dt,
                                     const RadialOptions& opt = {});
std::vector<double> advance_rho_radial(const RadialState& s, const std::vector<double>& w_star,
                                       const ModelParams& p, double dt,
                                       const RadialOptions& opt = {});
Projection project_w_radial(const std::vector<double>& rho_next, const ModelParams& p,
                            const RadialGrid& g);

double helmholtz_residual_radial(const std::vector<double>& w, const std::vector<double>& sigma,
                                 const ModelParams& p, const RadialGrid& g);
double interior_limit_residual_radial(const RadialState& s, const std::vector<double>& w_star,
                                      const ModelParams& p);

RadialState step_radial(const RadialState& s, const ModelParams& p, double dt,
                        const RadialOptions& opt = {});
double step_adaptive_radial(RadialState& s, const ModelParams& p, double dt_max,
                            const RadialOptions& opt = {});

RadialState init_from_analytic_radial(const analytic::LayerGeometry& geom, const ModelParams& p,
                                      const RadialGrid& g);

}  // namespace tumorfront::pde
