#include "tumorfront/freeboundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tumorfront/specfun.hpp"

namespace tumorfront::analytic {
namespace {

using specfun::Ratio;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os.precision(6);
  os << "c_s=" << p.c_s << " c_z=" << p.c_z << " c_p=" << p.c_p;
  return os.str();
}

// Ratio of the inner kernel (cosh, I0, i0) at x to its value at y.
double inner_kernel_ratio(Dim dim, double x, double y) {
  if (y == 0.0) return 1.0;
  switch (dim) {
    case Dim::One:
      return specfun::cosh_ratio(x, y);
    case Dim::Two:
      return specfun::bessel_i_scaled(0, x) / specfun::bessel_i_scaled(0, y) * std::exp(x - y);
    case Dim::Three:
      return specfun::spherical_i_scaled(0, x) / specfun::spherical_i_scaled(0, y) *
             std::exp(x - y);
  }
  return kNaN;
}

// Inner kernel derivative over value at the same point: tanh, I1/I0, i1/i0.
double inner_log_slope(Dim dim, double z) {
  if (z == 0.0) return 0.0;
  switch (dim) {
    case Dim::One:
      return std::tanh(z);
    case Dim::Two:
      return specfun::ratio_large_z(Ratio::I1_over_I0, z);
    case Dim::Three:
      return specfun::ratio_large_z(Ratio::i1_over_i0, z);
  }
  return kNaN;
}

double inner_kernel_value(Dim dim, double z) {
  switch (dim) {
    case Dim::One:
      return std::cosh(z);
    case Dim::Two:
      return z > specfun::kMaxUnscaledArg ? std::numeric_limits<double>::infinity()
                                          : specfun::bessel_i(0, z);
    case Dim::Three:
      return z > specfun::kMaxUnscaledArg ? std::numeric_limits<double>::infinity()
                                          : specfun::spherical_i(0, z);
  }
  return kNaN;
}

// Outer kernel ratio k0/k1 at z = r / sqrt(c_z); identically one in 1D.
double outer_log_ratio(Dim dim, double z) {
  switch (dim) {
    case Dim::One:
      return 1.0;
    case Dim::Two:
      return specfun::ratio_large_z(Ratio::K0_over_K1, z);
    case Dim::Three:
      return specfun::ratio_large_z(Ratio::k0_over_k1, z);
  }
  return kNaN;
}

// Outer kernel at z over its value at zr (zr = outer radius / sqrt(c_z)).
double outer_kernel_ratio(Dim dim, double z, double zr) {
  const double decay = std::exp(zr - z);
  switch (dim) {
    case Dim::One:
      return decay;
    case Dim::Two:
      return specfun::bessel_k_scaled(0, z) / specfun::bessel_k_scaled(0, zr) * decay;
    case Dim::Three:
      return zr / z * decay;
  }
  return kNaN;
}

// The rim closed form W = b0 - (x^2 - r1^2)/(2n c_s) + a (phi(x) - phi(r1))
// with phi = x, ln x, 1/x. Written in differences so that large r1 does not
// cancel catastrophically.
struct Rim {
  Dim dim;
  double c_s;
  double r1;
  double s_inner;
  double ratio;      // inner log-slope at r1 / s_inner
  double a = 0.0;
  double a_over_r1;  // 3D only; finite at r1 = 0
  double b0;

  Rim(Dim d, double inner, const ModelParams& p, double eta)
      : dim(d), c_s(p.c_s), r1(inner), s_inner(std::sqrt(eta * p.c_s + p.c_z)) {
    ratio = inner_log_slope(dim, r1 / s_inner);
    b0 = p.c_p - s_inner * s_inner / p.c_s;
    a_over_r1 = 0.0;
    switch (dim) {
      case Dim::One:
        a = (r1 - s_inner * ratio) / c_s;
        break;
      case Dim::Two:
        a = r1 * (0.5 * r1 - s_inner * ratio) / c_s;
        break;
      case Dim::Three:
        a_over_r1 = r1 * (-r1 / 3.0 + s_inner * ratio) / c_s;
        a = r1 * a_over_r1;
        break;
    }
  }

  int n() const { return as_int(dim); }

  double w(double x) const {
    const double quad = (x - r1) * (x + r1) / (2.0 * n() * c_s);
    double shift = 0.0;
    switch (dim) {
      case Dim::One:
        shift = a * (x - r1);
        break;
      case Dim::Two:
        shift = r1 > 0.0 ? a * std::log1p((x - r1) / r1) : 0.0;
        break;
      case Dim::Three:
        shift = r1 > 0.0 ? -a_over_r1 * (x - r1) / x : 0.0;
        break;
    }
    return b0 - quad + shift;
  }

  // -W'(x), arranged as (x^n - r1^n)/(n c_s x^{n-1}) + (r1/x)^{n-1} s ratio / c_s.
  double minus_slope(double x) const {
    const double dx = x - r1;
    switch (dim) {
      case Dim::One:
        return (dx + s_inner * ratio) / c_s;
      case Dim::Two:
        return (dx * (x + r1) / (2.0 * x) + r1 / x * s_inner * ratio) / c_s;
      case Dim::Three:
        return (dx * (x * x + x * r1 + r1 * r1) / (3.0 * x * x) +
                (r1 / x) * (r1 / x) * s_inner * ratio) /
               c_s;
    }
    return kNaN;
  }

  // Constant term of the rim polynomial in the textbook form, W = -x^2/(2 n c_s) + a phi + b.
  double constant_term() const {
    switch (dim) {
      case Dim::One:
        return b0 - r1 * r1 / (2.0 * c_s) + r1 * s_inner * ratio / c_s;
      case Dim::Two:
        return b0 + r1 * r1 / (4.0 * c_s) - (r1 > 0.0 ? a * std::log(r1) : 0.0);
      case Dim::Three:
        return b0 + r1 * r1 / (2.0 * c_s) - r1 * s_inner * ratio / c_s;
    }
    return kNaN;
  }
};

double residual_general(const Rim& rim, double r, const ModelParams& p) {
  if (r == 0.0) return -rim.b0;
  const double s = std::sqrt(p.c_z);
  return s * outer_log_ratio(rim.dim, r / s) * rim.minus_slope(r) - rim.w(r);
}

// Bisection down to a coarse bracket, then safeguarded Newton polishing.
// Requires f(lo) and f(hi) of opposite sign (or zero).
template <class F>
double bracketed_root(F&& f, double lo, double hi, double f_lo, double f_hi, double tol) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  const bool increasing = f_hi > 0.0;
  auto shrink = [&](double x, double fx) {
    if ((fx > 0.0) == increasing) {
      hi = x;
      f_hi = fx;
    } else {
      lo = x;
      f_lo = fx;
    }
  };

  double best = 0.5 * (lo + hi);
  double f_best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) < std::abs(f_best)) {
      best = mid;
      f_best = fm;
    }
    if (fm == 0.0) return mid;
    shrink(mid, fm);
    if (hi - lo <= 1e-7 * std::max(1.0, std::abs(mid))) break;
  }

  // At least three Newton steps, more while the residual is above tolerance.
  double x = best;
  double fx = f_best;
  for (int it = 0; it < 30; ++it) {
    if (it >= 3 && std::abs(fx) <= tol) break;
    const double h = 1e-7 * std::max(1.0, std::abs(x));
    const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
    double next = slope != 0.0 ? x - fx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double fn = f(next);
    shrink(next, fn);
    if (std::abs(fn) <= std::abs(f_best)) {
      best = next;
      f_best = fn;
    }
    if (next == x) break;
    x = next;
    fx = fn;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
      break;
  }
  return best;
}

}  // namespace

Dim dim_from_int(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  return static_cast<Dim>(n);
}

LayerGeometry LayerGeometry::make(double r1, double r) {
  if (!(r1 >= 0.0) || !(r >= r1) || !std::isfinite(r))
    throw std::invalid_argument("LayerGeometry: need 0 <= r1 <= r");
  return LayerGeometry{r1, r, r - r1};
}

bool ProfileCoefficients::has_outer() const { return !std::isnan(r); }

std::string to_string(Zone z) {
  switch (z) {
    case Zone::Omega1:
      return "Omega1";
    case Zone::Omega2:
      return "Omega2";
    case Zone::Omega3:
      return "Omega3";
  }
  return "?";
}

ProfileCoefficients coefficients(Dim dim, double r1, const ModelParams& p, double eta,
                                 std::optional<double> r) {
  if (!(r1 >= 0.0)) throw std::invalid_argument("coefficients: r1 must be >= 0");
  if (!(eta >= 0.0) || !(eta < p.c_p))
    throw std::invalid_argument("coefficients: need 0 <= eta < c_p");
  const Rim rim(dim, r1, p, eta);
  ProfileCoefficients c;
  c.dimension = dim;
  c.eta_used = eta;
  c.r1 = r1;
  c.s_inner = rim.s_inner;
  c.inner_ratio = rim.ratio;
  c.b0 = rim.b0;
  c.a = rim.a;
  c.b = rim.constant_term();
  c.big_a = -rim.s_inner * rim.s_inner / (p.c_s * inner_kernel_value(dim, r1 / rim.s_inner));
  c.r = kNaN;
  c.d = kNaN;
  if (r) {
    if (!(*r >= r1)) throw std::invalid_argument("coefficients: need r >= r1");
    c.r = *r;
    c.d = rim.w(*r);
  }
  return c;
}

Zone zone_of(const ProfileCoefficients& c, double x) {
  const double ax = std::abs(x);
  if (ax <= c.r1) return Zone::Omega1;
  if (ax <= c.r) return Zone::Omega2;
  return Zone::Omega3;
}

double w_in_zone(const ProfileCoefficients& c, const ModelParams& p, Zone zone, double x) {
  const double ax = std::abs(x);
  switch (zone) {
    case Zone::Omega1:
      return p.c_p - c.s_inner * c.s_inner / p.c_s *
                         inner_kernel_ratio(c.dimension, ax / c.s_inner, c.r1 / c.s_inner);
    case Zone::Omega2: {
      const Rim rim(c.dimension, c.r1, p, c.eta_used);
      return rim.w(ax);
    }
    case Zone::Omega3: {
      if (!c.has_outer()) throw std::logic_error("w_in_zone: outer radius not set");
      const double s = std::sqrt(p.c_z);
      return c.d * outer_kernel_ratio(c.dimension, ax / s, c.r / s);
    }
  }
  return kNaN;
}

double sigma_in_zone(const ProfileCoefficients& c, const ModelParams& p, Zone zone, double x) {
  const double ax = std::abs(x);
  switch (zone) {
    case Zone::Omega1:
      if (c.eta_used == 0.0) return p.c_p;
      return p.c_p -
             c.eta_used * inner_kernel_ratio(c.dimension, ax / c.s_inner, c.r1 / c.s_inner);
    case Zone::Omega2:
      return w_in_zone(c, p, Zone::Omega2, ax) + p.c_z / p.c_s;
    case Zone::Omega3:
      return 0.0;
  }
  return kNaN;
}

Profile profile(Dim dim, const LayerGeometry& geom, const ModelParams& p, double eta,
                const std::vector<double>& grid) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("profile: grid must be sorted");
  if (dim != Dim::One && !grid.empty() && grid.front() < 0.0)
    throw std::invalid_argument("profile: radial grid must be nonnegative");
  const auto c = coefficients(dim, geom.r1, p, eta, geom.r);

  Profile out;
  out.grid = grid;
  out.w.reserve(grid.size());
  out.sigma.reserve(grid.size());
  out.zone.reserve(grid.size());
  for (double x : grid) {
    const Zone z = zone_of(c, x);
    out.zone.push_back(z);
    out.w.push_back(w_in_zone(c, p, z, x));
    out.sigma.push_back(sigma_in_zone(c, p, z, x));
  }
  out.relation_residual = boundary_relation_residual(dim, geom.r1, geom.r, p, eta);
  // Profiles off the relation are still returned (kinked W), only flagged.
  out.relation_violated = std::abs(out.relation_residual) > 1e-6 * std::max(1.0, p.c_p);
  return out;
}

double boundary_relation_residual(Dim dim, double r1, double r, const ModelParams& p,
                                  double eta) {
  if (!(r1 >= 0.0) || !(r >= r1))
    throw std::invalid_argument("boundary_relation_residual: need 0 <= r1 <= r");
  const Rim rim(dim, r1, p, eta);
  if (dim == Dim::One) {
    // r2^2 + 2 (s + s_eta tau) r2 + 2 (s s_eta tau + c_z + eta c_s - c_p c_s)
    const double s = std::sqrt(p.c_z);
    const double st = rim.s_inner * rim.ratio;
    const double r2 = r - r1;
    return r2 * r2 + 2.0 * (s + st) * r2 + 2.0 * (s * st + p.c_z + eta * p.c_s - p.c_p * p.c_s);
  }
  return residual_general(rim, r, p);
}

double relation_tolerance(const ModelParams& p) { return 1e-10 * std::max(1.0, p.c_p); }

double solve_r2_given_r1(Dim dim, double r1, const ModelParams& p, double eta) {
  if (!(r1 >= 0.0)) throw std::invalid_argument("solve_r2_given_r1: r1 must be >= 0");
  const Rim rim(dim, r1, p, eta);
  if (dim == Dim::One) {
    const double s = std::sqrt(p.c_z);
    const double st = rim.s_inner * rim.ratio;
    const double half_b = s + st;
    const double c = 2.0 * (s * st + p.c_z + eta * p.c_s - p.c_p * p.c_s);
    const double disc = half_b * half_b - c;
    if (disc < 0.0 || c > 0.0) {
      throw NoAnsatzSolution("no nonnegative rim width for r1=" + std::to_string(r1) + " (" +
                             describe(p) + ")");
    }
    // Product of roots is c; this form avoids cancellation when c is small.
    return -c / (half_b + std::sqrt(disc));
  }

  const double r2_max = 10.0 * std::sqrt(2.0 * p.c_p * p.c_s);
  auto f = [&](double r2) { return residual_general(rim, r1 + r2, p); };
  const double f_lo = f(0.0);
  const double f_hi = f(r2_max);
  if (f_lo > 0.0 || f_hi < 0.0) {
    throw NoAnsatzSolution("boundary relation has no root in r2 in [0, " +
                           std::to_string(r2_max) + "] for r1=" + std::to_string(r1) + " (" +
                           describe(p) + ")");
  }
  return bracketed_root(f, 0.0, r2_max, f_lo, f_hi, relation_tolerance(p));
}

double solve_r1_given_r(Dim dim, double r, const ModelParams& p, double eta,
                        std::optional<double> hint) {
  if (!(r > 0.0)) throw std::invalid_argument("solve_r1_given_r: r must be > 0");
  const double tol = relation_tolerance(p);
  auto f = [&](double r1) { return boundary_relation_residual(dim, r1, r, p, eta); };

  if (hint && *hint > 0.0 && *hint < r) {
    double delta = 1e-3 * std::max(1.0, *hint);
    while (delta < r) {
      const double lo = std::max(0.0, *hint - delta);
      const double hi = std::min(r, *hint + delta);
      const double f_lo = f(lo);
      const double f_hi = f(hi);
      if (f_lo >= 0.0 && f_hi <= 0.0) return bracketed_root(f, lo, hi, f_lo, f_hi, tol);
      if (lo == 0.0 && hi == r) break;
      delta *= 8.0;
    }
  }

  const double f0 = f(0.0);
  if (f0 < 0.0) {
    if (std::abs(f0) <= tol) return 0.0;
    throw NoAnsatzSolution("outer radius r=" + std::to_string(r) +
                           " is below the smallest three-zone radius (" + describe(p) + ")");
  }
  const double fr = f(r);
  if (fr > 0.0) {
    throw NoAnsatzSolution("boundary relation has no root in r1 in [0, " + std::to_string(r) +
                           "] (" + describe(p) + ")");
  }
  return bracketed_root(f, 0.0, r, f0, fr, tol);
}

double front_speed(Dim dim, double r, double r1, const ModelParams& p, double eta) {
  if (!(r > 0.0) || !(r1 >= 0.0) || !(r1 <= r))
    throw std::invalid_argument("front_speed: need 0 <= r1 <= r, r > 0");
  const Rim rim(dim, r1, p, eta);
  return p.c_s * rim.minus_slope(r);
}

double pressure_jump(Dim dim, double r, double r1, const ModelParams& p, double eta) {
  if (!(r1 >= 0.0) || !(r1 <= r)) throw std::invalid_argument("pressure_jump: need 0 <= r1 <= r");
  const Rim rim(dim, r1, p, eta);
  return rim.w(r) + p.c_z / p.c_s;
}

std::optional<TravelingWave> traveling_wave(const ModelParams& p) {
  const double root = std::sqrt(2.0 * p.c_p * p.c_s);
  const double s = std::sqrt(p.c_z);
  const double width = root - 2.0 * s;
  if (width < 0.0) return std::nullopt;
  return TravelingWave{root - s, width, std::sqrt(2.0 * p.c_z * p.c_p / p.c_s)};
}

double asymptotic_width(Dim /*dim*/, const ModelParams& p, Branch sign) {
  const double root = std::sqrt(2.0 * p.c_p * p.c_s);
  return (sign == Branch::Plus ? root : -root) - 2.0 * std::sqrt(p.c_z);
}

FrontSeries integrate_front(Dim dim, double r0, const ModelParams& p, double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_front: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate_front: t_end must be >= 0");

  double r1_guess = solve_r1_given_r(dim, r0, p);
  auto rhs = [&](double r, double& r1_out) {
    r1_out = solve_r1_given_r(dim, r, p, 0.0, r1_guess);
    return front_speed(dim, r, r1_out, p);
  };

  FrontSeries out;
  auto record = [&](double t, double r, double r1) {
    out.t.push_back(t);
    out.r.push_back(r);
    out.r1.push_back(r1);
    out.speed.push_back(front_speed(dim, r, r1, p));
    out.jump.push_back(pressure_jump(dim, r, r1, p));
  };

  double t = 0.0;
  double r = r0;
  record(t, r, r1_guess);
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  for (long k = 0; k < steps; ++k) {
    const double h = std::min(dt, t_end - t);
    double r1_stage = 0.0;
    const double k1 = rhs(r, r1_stage);
    const double k2 = rhs(r + 0.5 * h * k1, r1_stage);
    const double k3 = rhs(r + 0.5 * h * k2, r1_stage);
    const double k4 = rhs(r + h * k3, r1_stage);
    r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = k + 1 == steps ? t_end : t + h;
    double r1_now = 0.0;
    rhs(r, r1_now);
    r1_guess = r1_now;
    record(t, r, r1_now);
  }
  return out;
}

}  // namespace tumorfront::analytic
