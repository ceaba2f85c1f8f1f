#pragma once

// Constitutive law, growth switch and physical constants of the Brinkman
// cell-density model.

#include <stdexcept>

namespace tumorfront {

/// Physical constants of the cell-density model.
///
/// c_s   mobility in the transport term
/// c_z   Brinkman viscosity (screening length is sqrt(c_z))
/// c_p   homeostatic pressure threshold of the growth switch
/// c_nu  stiffness of the logarithmic state law
/// eta   width of the regularized Heaviside, 0 < eta < c_p
struct ModelParams {
  double c_s = 1.0;
  double c_z = 0.2;
  double c_p = 1.0;
  double c_nu = 50.0;
  double eta = 1e-3;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

/// Pressure of the log state law: 0 for rho <= 1, c_nu * ln(rho) above.
double sigma_of_rho(double rho, const ModelParams& p);

/// Inverse of sigma_of_rho on the rho >= 1 branch.
///
/// Sigma = 0 is ambiguous between empty space (rho = 0) and the contact
/// density (rho = 1); this returns 1 and leaves the choice to the caller.
double rho_of_sigma(double sigma, const ModelParams& p);

/// Piecewise-linear Heaviside of width p.eta.
double heaviside_eta(double u, const ModelParams& p);

/// Growth term rho * H_eta(c_p - sigma).
double growth(double rho, double sigma, const ModelParams& p);

}  // namespace tumorfront
