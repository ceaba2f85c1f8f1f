#include "tumorfront/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tumorfront {

double limited_slope(double left, double center, double right) {
  const double fwd = right - center;
  const double bwd = center - left;
  if (fwd * bwd < 0.0) return 0.0;
  if (std::abs(fwd) > std::abs(bwd)) return bwd;
  return fwd;
}

double advective_dt_limit(const std::vector<double>& u_faces, double dx, double cfl) {
  double umax = 0.0;
  for (double u : u_faces) umax = std::max(umax, std::abs(u));
  if (umax == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * dx / umax;
}

std::vector<double> transport_step(const std::vector<double>& q,
                                   const std::vector<double>& u_faces,
                                   const std::vector<double>& growth, double dx, double dt,
                                   double cfl, const TransportBoundary& bc) {
  const std::size_t n = q.size();
  if (u_faces.size() != n + 1 || growth.size() != n)
    throw std::invalid_argument("transport_step: array sizes do not match");

  const double dt_adv = advective_dt_limit(u_faces, dx, cfl);
  if (dt > dt_adv * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "CFL violated: dt=" << dt << " exceeds admissible dt=" << dt_adv;
    throw CflViolation(os.str(), dt_adv);
  }
  double hmax = 0.0;
  for (double h : growth) hmax = std::max(hmax, h);
  if (dt * hmax >= 1.0) {
    std::ostringstream os;
    os << "growth limit violated: dt=" << dt << " needs dt*max(h) < 1";
    throw CflViolation(os.str(), 0.9 / hmax);
  }

  // Reconstructions on the padded array; ghost cells are first order.
  auto value = [&](std::ptrdiff_t j) {
    if (j < 0) return bc.ghost_left;
    if (j >= static_cast<std::ptrdiff_t>(n)) return bc.ghost_right;
    return q[static_cast<std::size_t>(j)];
  };
  std::vector<double> right(n + 2), left(n + 2);  // index j+1 for cell j
  right[0] = left[0] = bc.ghost_left;
  right[n + 1] = left[n + 1] = bc.ghost_right;
  for (std::size_t j = 0; j < n; ++j) {
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const double s = limited_slope(value(sj - 1), q[j], value(sj + 1));
    right[j + 1] = q[j] + 0.5 * s;
    left[j + 1] = q[j] - 0.5 * s;
  }

  // flux[k] = u (qR_{k-1} + qL_k) - |u| (qR_{k-1} - qL_k) on face k
  std::vector<double> flux(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double u = u_faces[k];
    const double qr = right[k];
    const double ql = left[k + 1];
    flux[k] = u * (qr + ql) - std::abs(u) * (qr - ql);
  }

  std::vector<double> out(n);
  const double lambda = dt / (2.0 * dx);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = (q[j] + lambda * (flux[j + 1] - flux[j])) / (1.0 - dt * growth[j]);
  }
  return out;
}

}  // namespace tumorfront
