#include "tumorfront/pde1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tumorfront/transport.hpp"

namespace tumorfront::pde {
namespace {

std::vector<double> growth_rates(const std::vector<double>& sigma, const ModelParams& p) {
  std::vector<double> h(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) h[j] = heaviside_eta(p.c_p - sigma[j], p);
  return h;
}

// Faces carry u = c_s (W_{k} - W_{k-1}) / dx with zero ghosts on both ends.
std::vector<double> face_velocities(const std::vector<double>& w, double c_s, double dx) {
  const std::size_t n = w.size();
  std::vector<double> u(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double right = k < n ? w[k] : 0.0;
    const double left = k > 0 ? w[k - 1] : 0.0;
    u[k] = c_s * (right - left) / dx;
  }
  return u;
}

void check_state(const SimState& s) {
  const auto n = static_cast<std::size_t>(s.grid.n);
  if (s.rho.size() != n || s.sigma.size() != n || s.w.size() != n)
    throw std::invalid_argument("SimState: field sizes do not match the grid");
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, int n) {
  if (n < 3) throw std::invalid_argument("Grid1D: need at least 3 cells");
  if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: need x_max > x_min");
  return Grid1D{x_min, x_max, n, (x_max - x_min) / n};
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = node(j);
  return x;
}

Tridiagonal laplacian_1d(const Grid1D& g) {
  const auto n = static_cast<std::size_t>(g.n);
  const double inv = 1.0 / (g.dx * g.dx);
  Tridiagonal l(n);
  for (std::size_t j = 0; j < n; ++j) {
    l.lower[j] = inv;
    l.diag[j] = -2.0 * inv;
    l.upper[j] = inv;
  }
  return l;
}

std::vector<double> gradient_1d(const std::vector<double>& v, double dx) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double right = j + 1 < n ? v[j + 1] : 0.0;
    const double left = j > 0 ? v[j - 1] : 0.0;
    d[j] = (right - left) / (2.0 * dx);
  }
  return d;
}

std::vector<double> predict_w(const SimState& s, const ModelParams& p, double dt,
                              const SchemeOptions& opt) {
  check_state(s);
  if (!(dt > 0.0)) throw std::invalid_argument("predict_w: dt must be positive");
  const double stiff = dt * p.c_s * p.c_nu;
  if (!std::isfinite(stiff)) throw std::overflow_error("predict_w: dt * c_s * c_nu overflows");

  const auto n = static_cast<std::size_t>(s.grid.n);
  const Tridiagonal lap = laplacian_1d(s.grid);
  const auto lap_w = lap.apply(s.w);
  const auto dsig = gradient_1d(s.sigma, s.grid.dx);
  const auto dw = gradient_1d(s.w, s.grid.dx);
  const auto h = growth_rates(s.sigma, p);

  Tridiagonal m(n);
  std::vector<double> rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double chi = (!opt.support_mask || s.sigma[j] > 0.0) ? 1.0 : 0.0;
    const double coef = p.c_z + chi * stiff;
    m.lower[j] = -coef * lap.lower[j];
    m.diag[j] = 1.0 - coef * lap.diag[j];
    m.upper[j] = -coef * lap.upper[j];
    rhs[j] = s.w[j] - p.c_z * lap_w[j] + dt * p.c_s * dsig[j] * dw[j] +
             chi * dt * p.c_nu * h[j];
  }
  return m.solve(std::move(rhs));
}

std::vector<double> advance_rho(const SimState& s, const std::vector<double>& w_star,
                                const ModelParams& p, double dt, const SchemeOptions& opt) {
  check_state(s);
  if (w_star.size() != s.rho.size()) throw std::invalid_argument("advance_rho: size mismatch");
  const auto u = face_velocities(w_star, p.c_s, s.grid.dx);
  const auto h = growth_rates(s.sigma, p);
  auto next = transport_step(s.rho, u, h, s.grid.dx, dt, opt.cfl);
  for (double v : next)
    if (v < 0.0) throw std::runtime_error("advance_rho: negative density produced");
  return next;
}

Projection project_w(const std::vector<double>& rho_next, const ModelParams& p,
                     const Grid1D& g) {
  if (rho_next.size() != static_cast<std::size_t>(g.n))
    throw std::invalid_argument("project_w: size mismatch");
  Projection out;
  out.sigma.resize(rho_next.size());
  for (std::size_t j = 0; j < rho_next.size(); ++j) out.sigma[j] = sigma_of_rho(rho_next[j], p);
  Tridiagonal m = laplacian_1d(g);
  for (std::size_t j = 0; j < m.size(); ++j) {
    m.lower[j] *= -p.c_z;
    m.diag[j] = 1.0 - p.c_z * m.diag[j];
    m.upper[j] *= -p.c_z;
  }
  out.w = m.solve(out.sigma);
  return out;
}

double helmholtz_residual(const std::vector<double>& w, const std::vector<double>& sigma,
                          const ModelParams& p, const Grid1D& g) {
  const auto lap_w = laplacian_1d(g).apply(w);
  double r = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j)
    r = std::max(r, std::abs(w[j] - p.c_z * lap_w[j] - sigma[j]));
  return r;
}

double interior_limit_residual(const SimState& s, const std::vector<double>& w_star,
                               const ModelParams& p) {
  const auto lap = laplacian_1d(s.grid).apply(w_star);
  double r = 0.0;
  for (std::size_t j = 1; j + 1 < s.sigma.size(); ++j) {
    if (!(s.sigma[j - 1] > 0.0 && s.sigma[j] > 0.0 && s.sigma[j + 1] > 0.0)) continue;
    const double h = heaviside_eta(p.c_p - s.sigma[j], p);
    r = std::max(r, std::abs(-p.c_s * lap[j] - h));
  }
  return r;
}

SimState step(const SimState& s, const ModelParams& p, double dt, const SchemeOptions& opt) {
  const auto w_star = predict_w(s, p, dt, opt);
  auto rho = advance_rho(s, w_star, p, dt, opt);
  auto proj = project_w(rho, p, s.grid);
  return SimState{s.t + dt, std::move(rho), std::move(proj.sigma), std::move(proj.w), s.grid};
}

double stiffness_dt_limit(const ModelParams& p, const SchemeOptions& opt) {
  if (!(opt.stiffness > 0.0)) return std::numeric_limits<double>::infinity();
  return opt.stiffness * p.c_z / (p.c_s * p.c_nu);
}

double step_adaptive(SimState& s, const ModelParams& p, double dt_max, const SchemeOptions& opt) {
  if (!(dt_max > 0.0)) throw std::invalid_argument("step_adaptive: dt_max must be positive");
  double dt = std::min({dt_max, 0.9, stiffness_dt_limit(p, opt),
                        advective_dt_limit(face_velocities(s.w, p.c_s, s.grid.dx), s.grid.dx,
                                           opt.cfl)});
  std::vector<double> w_star;
  for (int attempt = 0;; ++attempt) {
    w_star = predict_w(s, p, dt, opt);
    const double limit =
        advective_dt_limit(face_velocities(w_star, p.c_s, s.grid.dx), s.grid.dx, opt.cfl);
    if (dt <= limit) break;
    if (attempt == 20) throw std::runtime_error("step_adaptive: no admissible time step");
    dt = 0.9 * limit;
  }
  auto rho = advance_rho(s, w_star, p, dt, opt);
  auto proj = project_w(rho, p, s.grid);
  s.t += dt;
  s.rho = std::move(rho);
  s.sigma = std::move(proj.sigma);
  s.w = std::move(proj.w);
  return dt;
}

SimState init_from_analytic(const analytic::LayerGeometry& geom, const ModelParams& p,
                            const Grid1D& g) {
  const auto x = g.nodes();
  const auto prof = analytic::profile(analytic::Dim::One, geom, p, p.eta, x);
  SimState s;
  s.grid = g;
  s.w = prof.w;
  s.sigma.resize(x.size());
  s.rho.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (prof.zone[j] == analytic::Zone::Omega3) {
      s.sigma[j] = 0.0;
      s.rho[j] = 0.0;
    } else {
      s.sigma[j] = std::max(0.0, prof.sigma[j]);
      s.rho[j] = rho_of_sigma(s.sigma[j], p);
    }
  }
  return s;
}

}  // namespace tumorfront::pde
