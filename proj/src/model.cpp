#include "tumorfront/model.hpp"

#include <cmath>
#include <string>

namespace tumorfront {

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("ModelParams: ") + what);
  };
  require(std::isfinite(c_s) && c_s > 0.0, "c_s must be positive");
  require(std::isfinite(c_z) && c_z > 0.0, "c_z must be positive");
  require(std::isfinite(c_p) && c_p > 0.0, "c_p must be positive");
  require(std::isfinite(c_nu) && c_nu > 0.0, "c_nu must be positive");
  require(std::isfinite(eta) && eta > 0.0, "eta must be positive");
  require(eta < c_p, "eta must be smaller than c_p");
}

double sigma_of_rho(double rho, const ModelParams& p) {
  if (!(rho >= 0.0)) throw std::domain_error("sigma_of_rho: negative density");
  if (rho <= 1.0) return 0.0;
  return p.c_nu * std::log(rho);
}

double rho_of_sigma(double sigma, const ModelParams& p) {
  if (!(sigma >= 0.0)) throw std::domain_error("rho_of_sigma: negative pressure");
  return std::exp(sigma / p.c_nu);
}

double heaviside_eta(double u, const ModelParams& p) {
  if (u <= 0.0) return 0.0;
  if (u >= p.eta) return 1.0;
  return u / p.eta;
}

double growth(double rho, double sigma, const ModelParams& p) {
  return rho * heaviside_eta(p.c_p - sigma, p);
}

}  // namespace tumorfront
