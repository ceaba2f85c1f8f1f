#include "tumorfront/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tumorfront::specfun {
namespace {

constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;

// Above this argument the scaled asymptotic expansion of I_m is used; its
// smallest term is ~exp(-2z), far below double rounding.
constexpr double kIAsymptoticSwitch = 20.0;
// Below this argument K_m uses its ascending series.
constexpr double kKSeriesSwitch = 2.0;
// Below this argument i_1 uses its power series (the closed form cancels).
constexpr double kSphericalSeriesSwitch = 1.0;

void check_order(int order, const char* who) {
  if (order != 0 && order != 1)
    throw std::invalid_argument(std::string(who) + ": order must be 0 or 1");
}

// Ascending series of I_m; every term is positive.
double i_series(int order, double z) {
  const double q = 0.25 * z * z;
  double term = order == 0 ? 1.0 : 0.5 * z;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// exp(-z) I_m(z) ~ (2 pi z)^{-1/2} sum_k (-1)^k a_k(m) / z^k.
double i_scaled_asymptotic(int order, double z) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * z);
    if (std::abs(term) > std::abs(prev)) break;
    sum += term;
    prev = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * z);
}

// Ascending series of K_0 and K_1 for small z.
double k_series(int order, double z) {
  const double q = 0.25 * z * z;
  const double log_half = std::log(0.5 * z);
  if (order == 0) {
    double term = 1.0;
    double harmonic = 0.0;
    double sum = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * k);
      harmonic += 1.0 / k;
      sum += term * harmonic;
      if (term * harmonic < 1e-17 * std::abs(sum)) break;
    }
    return -(log_half + kEulerGamma) * i_series(0, z) + sum;
  }
  // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
  double term = 1.0;
  double h_k = 0.0;
  double sum = -2.0 * kEulerGamma + 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    h_k += 1.0 / k;
    const double psi_sum = -2.0 * kEulerGamma + 2.0 * h_k + 1.0 / (k + 1);
    sum += term * psi_sum;
    if (std::abs(term * psi_sum) < 1e-17 * std::abs(sum)) break;
  }
  return 1.0 / z + log_half * i_series(1, z) - 0.25 * z * sum;
}

// exp(z) K_m(z) = int_0^inf exp(-z (cosh t - 1)) cosh(m t) dt. The integrand
// is analytic in a strip and decays doubly exponentially, so the trapezoidal
// rule converges geometrically in 1/h.
double k_scaled_integral(int order, double z) {
  const double h = std::min(0.25, 0.6 / std::sqrt(z));
  double sum = 0.5;
  for (int k = 1; k < 100000; ++k) {
    const double t = k * h;
    const double arg = z * (std::cosh(t) - 1.0);
    const double f = std::exp(-arg) * (order == 0 ? 1.0 : std::cosh(t));
    sum += f;
    if (arg > 45.0 && f < 1e-18 * sum) break;
  }
  return h * sum;
}

double i1_spherical_series(double z) {
  // sum_k z^{2k+1} (2k+2)/(2k+3)!
  const double z2 = z * z;
  double power = z;
  double fact = 6.0;  // (2k+3)! at k = 0
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    const double term = power * (2.0 * k + 2.0) / fact;
    sum += term;
    if (term < 1e-18 * sum) break;
    power *= z2;
    fact *= (2.0 * k + 4.0) * (2.0 * k + 5.0);
  }
  return sum;
}

double i0_spherical_series(double z) {
  // sum_k z^{2k}/(2k+1)!
  const double z2 = z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= z2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double bessel_i_scaled(int order, double z) {
  check_order(order, "bessel_i");
  if (!(z >= 0.0)) throw std::domain_error("bessel_i: argument must be >= 0");
  if (z == 0.0) return order == 0 ? 1.0 : 0.0;
  if (z <= kIAsymptoticSwitch) return std::exp(-z) * i_series(order, z);
  return i_scaled_asymptotic(order, z);
}

double bessel_i(int order, double z) {
  check_order(order, "bessel_i");
  if (!(z >= 0.0)) throw std::domain_error("bessel_i: argument must be >= 0");
  if (z > kMaxUnscaledArg)
    throw std::overflow_error(
        "bessel_i: argument above 700 overflows; use bessel_i_scaled or ratio_large_z");
  if (z <= kIAsymptoticSwitch) return z == 0.0 ? (order == 0 ? 1.0 : 0.0) : i_series(order, z);
  return std::exp(z) * i_scaled_asymptotic(order, z);
}

double bessel_k_scaled(int order, double z) {
  check_order(order, "bessel_k");
  if (!(z > 0.0)) throw std::domain_error("bessel_k: argument must be > 0");
  if (z <= kKSeriesSwitch) return std::exp(z) * k_series(order, z);
  return k_scaled_integral(order, z);
}

double bessel_k(int order, double z) {
  check_order(order, "bessel_k");
  if (!(z > 0.0)) throw std::domain_error("bessel_k: argument must be > 0");
  if (z <= kKSeriesSwitch) return k_series(order, z);
  return std::exp(-z) * k_scaled_integral(order, z);
}

double spherical_i(int order, double z) {
  check_order(order, "spherical_i");
  if (!(z >= 0.0)) throw std::domain_error("spherical_i: argument must be >= 0");
  if (z > kMaxUnscaledArg)
    throw std::overflow_error(
        "spherical_i: argument above 700 overflows; use spherical_i_scaled or ratio_large_z");
  if (order == 0) return z < 1e-4 ? i0_spherical_series(z) : std::sinh(z) / z;
  if (z < kSphericalSeriesSwitch) return i1_spherical_series(z);
  return (z * std::cosh(z) - std::sinh(z)) / (z * z);
}

double spherical_i_scaled(int order, double z) {
  check_order(order, "spherical_i");
  if (!(z >= 0.0)) throw std::domain_error("spherical_i: argument must be >= 0");
  if (z < kSphericalSeriesSwitch) {
    const double raw = order == 0 ? i0_spherical_series(z) : i1_spherical_series(z);
    return std::exp(-z) * raw;
  }
  const double e2 = std::exp(-2.0 * z);
  if (order == 0) return -std::expm1(-2.0 * z) / (2.0 * z);
  return (z * (1.0 + e2) + std::expm1(-2.0 * z)) / (2.0 * z * z);
}

double spherical_k(int order, double z) {
  check_order(order, "spherical_k");
  if (!(z > 0.0)) throw std::domain_error("spherical_k: argument must be > 0");
  return std::exp(-z) * spherical_k_scaled(order, z);
}

double spherical_k_scaled(int order, double z) {
  check_order(order, "spherical_k");
  if (!(z > 0.0)) throw std::domain_error("spherical_k: argument must be > 0");
  if (order == 0) return 0.5 * kPi / z;
  return 0.5 * kPi * (z + 1.0) / (z * z);
}

double ratio_large_z(Ratio kind, double z) {
  if (!(z > 0.0)) throw std::domain_error("ratio_large_z: argument must be > 0");
  switch (kind) {
    case Ratio::I1_over_I0:
      return bessel_i_scaled(1, z) / bessel_i_scaled(0, z);
    case Ratio::K0_over_K1:
      return bessel_k_scaled(0, z) / bessel_k_scaled(1, z);
    case Ratio::i1_over_i0:
      if (z < kSphericalSeriesSwitch) return i1_spherical_series(z) / i0_spherical_series(z);
      return 1.0 / std::tanh(z) - 1.0 / z;
    case Ratio::k0_over_k1:
      return z / (z + 1.0);
  }
  throw std::invalid_argument("ratio_large_z: unknown ratio kind");
}

double cosh_ratio(double x, double y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  return std::exp(ax - ay) * (1.0 + std::exp(-2.0 * ax)) / (1.0 + std::exp(-2.0 * ay));
}

}  // namespace tumorfront::specfun
