#pragma once

// Radially symmetric three-zone solutions of the incompressible-limit
// (Hele-Shaw/Brinkman) free boundary problem in one, two and three space
// dimensions, and the differential-algebraic system driving the front.
//
// Zones:
//   Omega1  r <= r1       saturated core, Sigma = c_p (c_p - eta at r1)
//   Omega2  r1 < r <= r   growing rim, -c_s Lap W = 1
//   Omega3  r > r         empty space, Sigma = 0, W decays
//
// W is C^1 across both interfaces exactly when the boundary relation between
// r1 and r holds; Sigma jumps across the outer interface.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tumorfront/model.hpp"

namespace tumorfront::analytic {

enum class Dim : int { One = 1, Two = 2, Three = 3 };

inline int as_int(Dim d) { return static_cast<int>(d); }
Dim dim_from_int(int n);

/// Thrown when the three-zone ansatz admits no solution for the parameters.
class NoAnsatzSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LayerGeometry {
  double r1 = 0.0;  // inner interface
  double r = 0.0;   // outer interface
  double r2 = 0.0;  // rim width, r - r1

  /// Validates 0 <= r1 <= r.
  static LayerGeometry make(double r1, double r);
};

/// Closed-form coefficients of one three-zone solution.
///
/// The Omega3 kernel is normalized to one at the outer interface, so `d` is
/// W(r) in every dimension (in 1D this coincides with the textbook
/// coefficient of exp(-(x - r)/sqrt(c_z))).
struct ProfileCoefficients {
  double a = 0.0;
  double b = 0.0;
  double big_a = 0.0;
  double d = 0.0;
  Dim dimension = Dim::One;
  double eta_used = 0.0;

  double r1 = 0.0;
  double r = 0.0;           // NaN until the outer radius is attached
  double s_inner = 0.0;     // sqrt(eta c_s + c_z)
  double inner_ratio = 0.0; // tanh, I1/I0 or i1/i0 at r1 / s_inner
  double b0 = 0.0;          // W at the inner interface: c_p - s_inner^2 / c_s
  bool has_outer() const;
};

enum class Zone { Omega1, Omega2, Omega3 };

std::string to_string(Zone z);

struct Profile {
  std::vector<double> grid;
  std::vector<double> w;
  std::vector<double> sigma;
  std::vector<Zone> zone;
  double relation_residual = 0.0;
  /// Set when (r1, r) violate the boundary relation; W then has a kink at r.
  bool relation_violated = false;
};

/// Coefficients a, b, A for the given inner radius. When `r` is provided, d
/// is filled in as well.
ProfileCoefficients coefficients(Dim dim, double r1, const ModelParams& p, double eta,
                                 std::optional<double> r = std::nullopt);

/// W and Sigma from the closed form of `zone`, evaluated at |x| (analytic
/// continuation outside the zone, used for one-sided derivative probes).
double w_in_zone(const ProfileCoefficients& c, const ModelParams& p, Zone zone, double x);
double sigma_in_zone(const ProfileCoefficients& c, const ModelParams& p, Zone zone, double x);
Zone zone_of(const ProfileCoefficients& c, double x);

/// Piecewise W and Sigma sampled on `grid`. The grid must be sorted, and
/// nonnegative when dim > 1.
Profile profile(Dim dim, const LayerGeometry& geom, const ModelParams& p, double eta,
                const std::vector<double>& grid);

/// Residual of the C^1 matching condition at the outer interface.
///
/// dim = 1 returns the quadratic in r2 = r - r1; dims 2 and 3 return
/// sqrt(c_z) k0/k1 (r/sqrt(c_z)) (-W'(r)) - W(r) with the rim closed form.
/// The sign is negative for too thin a rim and positive for too thick a rim.
double boundary_relation_residual(Dim dim, double r1, double r, const ModelParams& p,
                                  double eta = 0.0);

/// Tolerance used by the root solvers: 1e-10 * max(1, c_p).
double relation_tolerance(const ModelParams& p);

/// Rim width r2 >= 0 matching inner radius r1.
double solve_r2_given_r1(Dim dim, double r1, const ModelParams& p, double eta = 0.0);

/// Inner radius r1 in [0, r] matching outer radius r. `hint` seeds a local
/// bracket (used by the front integrator); the global bracket [0, r] is the
/// fallback.
double solve_r1_given_r(Dim dim, double r, const ModelParams& p, double eta = 0.0,
                        std::optional<double> hint = std::nullopt);

/// dR/dt = -c_s W'(r).
double front_speed(Dim dim, double r, double r1, const ModelParams& p, double eta = 0.0);

/// Sigma(r^-), the pressure on the inner side of the outer interface.
double pressure_jump(Dim dim, double r, double r1, const ModelParams& p, double eta = 0.0);

struct TravelingWave {
  double speed = 0.0;
  double width = 0.0;
  double jump = 0.0;
};

/// Large-radius limit. Empty when c_p c_s < 2 c_z (no rim survives).
std::optional<TravelingWave> traveling_wave(const ModelParams& p);

enum class Branch { Plus, Minus };

/// Leading-order rim width alpha0 = +/- sqrt(2 c_p c_s) - 2 sqrt(c_z). The
/// leading order is the same in every dimension; the 1/r1 correction is only
/// available numerically as solve_r2_given_r1(...) - alpha0.
double asymptotic_width(Dim dim, const ModelParams& p, Branch sign);

struct FrontSeries {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> r1;
  std::vector<double> speed;
  std::vector<double> jump;

  std::size_t size() const { return t.size(); }
};

/// Classical RK4 integration of dR/dt = front_speed(R, r1(R)), with r1
/// re-solved from the boundary relation at every stage.
FrontSeries integrate_front(Dim dim, double r0, const ModelParams& p, double t_end, double dt);

}  // namespace tumorfront::analytic
