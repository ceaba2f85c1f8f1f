#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <stdexcept>

#include "tumorfront/specfun.hpp"

using namespace tumorfront::specfun;

namespace {

// Reference values frozen from a 30-digit arbitrary precision evaluation.
struct Frozen {
  double z, i0, i1, k0, k1;
};
constexpr Frozen kFrozen[] = {
    {0.1, 1.0025015629340956, 0.050062526047092694, 2.4270690247020164, 9.853844780870606},
    {1.0, 1.2660658777520084, 0.56515910399248503, 0.42102443824070834, 0.60190723019723458},
    {2.5, 3.2898391440501231, 2.5167162452886984, 0.062347553200366189, 0.073890816347747065},
    {5.0, 27.239871823604446, 24.335642142450528, 0.0036910983340425942, 0.0040446134454521646},
    {10.0, 2815.7166284662544, 2670.9883037012546, 1.778006231616765e-5, 1.8648773453825585e-5},
    {30.0, 781672297823.97754, 768532038938.95703, 2.1324774964630563e-14,
     2.1677320018915495e-14},
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Long double power series, independent of the library code paths.
long double series_i(int m, long double z) {
  long double term = m == 0 ? 1.0L : z / 2;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= z * z / 4 / (static_cast<long double>(k) * (k + m));
    sum += term;
  }
  return sum;
}

long double series_k0(long double z) {
  long double term = 1.0L, harmonic = 0.0L, sum = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= z * z / 4 / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    sum += term * harmonic;
  }
  return -(std::log(z / 2) + std::numbers::egamma_v<long double>) * series_i(0, z) + sum;
}

}  // namespace

TEST_CASE("cylindrical functions match frozen reference values") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.z);
    CHECK(rel(bessel_i(0, f.z), f.i0) < 1e-13);
    CHECK(rel(bessel_i(1, f.z), f.i1) < 1e-13);
    CHECK(rel(bessel_k(0, f.z), f.k0) < 1e-12);
    CHECK(rel(bessel_k(1, f.z), f.k1) < 1e-12);
  }
}

TEST_CASE("long double series oracle") {
  CHECK(std::abs(bessel_i(0, 1.0) - static_cast<double>(series_i(0, 1.0L))) < 1e-14);
  CHECK(std::abs(bessel_k(0, 1.0) - static_cast<double>(series_k0(1.0L))) < 1e-14);
  for (double z : {0.3, 1.7, 4.0, 12.0}) {
    CAPTURE(z);
    CHECK(rel(bessel_i(1, z), static_cast<double>(series_i(1, z))) < 1e-13);
  }
}

TEST_CASE("Wronskian") {
  for (double z = 0.1; z <= 50.0; z += 0.05) {
    const double w = z * (bessel_i_scaled(0, z) * bessel_k_scaled(1, z) +
                          bessel_i_scaled(1, z) * bessel_k_scaled(0, z));
    REQUIRE(std::abs(w - 1.0) < 1e-12);
  }
}

TEST_CASE("scaled and unscaled forms agree") {
  for (double z : {0.05, 0.9, 3.0, 19.9, 20.1, 80.0}) {
    CAPTURE(z);
    CHECK(rel(bessel_i_scaled(0, z) * std::exp(z), bessel_i(0, z)) < 1e-14);
    CHECK(rel(bessel_k_scaled(1, z) * std::exp(-z), bessel_k(1, z)) < 1e-14);
    CHECK(rel(spherical_i_scaled(1, z) * std::exp(z), spherical_i(1, z)) < 1e-12);
  }
  CHECK_THROWS_AS(bessel_i(0, 701.0), std::overflow_error);
  CHECK_THROWS_AS(bessel_k(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_i(2, 1.0), std::invalid_argument);
}

TEST_CASE("spherical functions against long double closed forms") {
  for (double z = 0.01; z < 30.0; z *= 1.37) {
    const long double zl = z;
    const long double i0 = std::sinh(zl) / zl;
    const long double i1 = z < 0.1 ? static_cast<long double>(spherical_i(1, z))
                                   : (zl * std::cosh(zl) - std::sinh(zl)) / (zl * zl);
    const long double k0 = std::numbers::pi_v<long double> / 2 * std::exp(-zl) / zl;
    const long double k1 =
        std::numbers::pi_v<long double> / 2 * std::exp(-zl) * (zl + 1) / (zl * zl);
    CAPTURE(z);
    CHECK(rel(spherical_i(0, z), static_cast<double>(i0)) < 1e-12);
    if (z >= 0.1) CHECK(rel(spherical_i(1, z), static_cast<double>(i1)) < 1e-12);
    CHECK(rel(spherical_k(0, z), static_cast<double>(k0)) < 1e-12);
    CHECK(rel(spherical_k(1, z), static_cast<double>(k1)) < 1e-12);
  }
  // Small-argument i1 from its leading terms z/3 + z^3/30.
  const double z = 1e-3;
  CHECK(rel(spherical_i(1, z), z / 3 + z * z * z / 30) < 1e-12);
}

TEST_CASE("ratios stay finite far beyond overflow") {
  for (double z : {1e3, 1e5, 1e8}) {
    CAPTURE(z);
    CHECK(std::abs(ratio_large_z(Ratio::I1_over_I0, z) - (1 - 0.5 / z)) < 1e-15 + 1.0 / (z * z));
    CHECK(std::abs(ratio_large_z(Ratio::K0_over_K1, z) - (1 - 0.5 / z)) < 1e-15 + 1.0 / (z * z));
    CHECK(std::abs(ratio_large_z(Ratio::i1_over_i0, z) - (1 - 1.0 / z)) < 1e-15);
    CHECK(ratio_large_z(Ratio::k0_over_k1, z) == doctest::Approx(z / (z + 1)).epsilon(1e-15));
  }
  CHECK(cosh_ratio(800.0, 801.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}
