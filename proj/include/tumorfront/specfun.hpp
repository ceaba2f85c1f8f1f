#pragma once

// Modified Bessel functions of order 0 and 1, cylindrical and spherical.
//
// Every function has an exponentially scaled companion so that ratios such
// as I1(z)/I0(z) or K0(z)/K1(z) stay finite far beyond the double overflow
// threshold of the raw values.

namespace tumorfront::specfun {

/// Largest argument for which unscaled I_m and i_m are returned.
inline constexpr double kMaxUnscaledArg = 700.0;

/// I_m(z), m in {0, 1}, z >= 0. Throws std::overflow_error for z > 700.
double bessel_i(int order, double z);
/// exp(-z) * I_m(z).
double bessel_i_scaled(int order, double z);

/// K_m(z), m in {0, 1}, z > 0.
double bessel_k(int order, double z);
/// exp(z) * K_m(z).
double bessel_k_scaled(int order, double z);

/// i_0(z) = sinh(z)/z and i_1(z) = (z cosh z - sinh z)/z^2.
double spherical_i(int order, double z);
/// exp(-z) * i_m(z).
double spherical_i_scaled(int order, double z);

/// k_0(z) = (pi/2) e^{-z}/z and k_1(z) = (pi/2) e^{-z}(z+1)/z^2.
double spherical_k(int order, double z);
/// exp(z) * k_m(z).
double spherical_k_scaled(int order, double z);

enum class Ratio { I1_over_I0, K0_over_K1, i1_over_i0, k0_over_k1 };

/// Exact ratio evaluated from scaled values; finite for every z > 0.
/// For large z these behave like 1 - 1/(2z) (cylindrical) and 1 - 1/z
/// (spherical).
double ratio_large_z(Ratio kind, double z);

/// cosh(x)/cosh(y) without overflow.
double cosh_ratio(double x, double y);

}  // namespace tumorfront::specfun
