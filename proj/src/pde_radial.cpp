#include "tumorfront/pde_radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tumorfront/transport.hpp"

namespace tumorfront::pde {
namespace {

std::vector<double> growth_rates(const std::vector<double>& sigma, const ModelParams& p) {
  std::vector<double> h(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) h[j] = heaviside_eta(p.c_p - sigma[j], p);
  return h;
}

// u vanishes on the face at the origin and on the outer (Neumann) face.
std::vector<double> face_velocities(const std::vector<double>& w, double c_s, double dr) {
  const std::size_t n = w.size();
  std::vector<double> u(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k) u[k] = c_s * (w[k] - w[k - 1]) / dr;
  return u;
}

void check_state(const RadialState& s) {
  const auto n = static_cast<std::size_t>(s.grid.n_r);
  if (s.rho.size() != n || s.sigma.size() != n || s.w.size() != n)
    throw std::invalid_argument("RadialState: field sizes do not match the grid");
}

Tridiagonal helmholtz_matrix(const RadialGrid& g, const std::vector<double>& coef) {
  Tridiagonal m = radial_laplacian_matrix(g);
  for (std::size_t j = 0; j < m.size(); ++j) {
    m.lower[j] *= -coef[j];
    m.diag[j] = 1.0 - coef[j] * m.diag[j];
    m.upper[j] *= -coef[j];
  }
  return m;
}

}  // namespace

RadialGrid RadialGrid::make(double l_r, int n_r) {
  if (n_r < 3) throw std::invalid_argument("RadialGrid: need at least 3 cells");
  if (!(l_r > 0.0)) throw std::invalid_argument("RadialGrid: need l_r > 0");
  return RadialGrid{l_r, n_r, l_r / n_r};
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(static_cast<std::size_t>(n_r));
  for (int j = 0; j < n_r; ++j) r[static_cast<std::size_t>(j)] = node(j);
  return r;
}

Tridiagonal radial_laplacian_matrix(const RadialGrid& g) {
  const auto n = static_cast<std::size_t>(g.n_r);
  const double dr = g.dr;
  Tridiagonal l(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = g.node(static_cast<int>(j));
    const double r_minus = j == 0 ? 0.0 : r - 0.5 * dr;
    const double r_plus = j + 1 == n ? 0.0 : r + 0.5 * dr;
    const double scale = 1.0 / (r * dr * dr);
    l.lower[j] = scale * r_minus;
    l.upper[j] = scale * r_plus;
    l.diag[j] = -scale * (r_minus + r_plus);
  }
  return l;
}

std::vector<double> radial_laplacian(const std::vector<double>& w, const RadialGrid& g) {
  if (w.size() != static_cast<std::size_t>(g.n_r))
    throw std::invalid_argument("radial_laplacian: size mismatch");
  return radial_laplacian_matrix(g).apply(w);
}

std::vector<double> radial_gradient(const std::vector<double>& v, const RadialGrid& g,
                                    RadialDerivativeClosure closure) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  const double end_div = closure == RadialDerivativeClosure::Verbatim ? 2.0 * g.dr : g.dr;
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (v[j + 1] - v[j - 1]) / (2.0 * g.dr);
  d[0] = (v[1] - v[0]) / end_div;
  d[n - 1] = (v[n - 1] - v[n - 2]) / end_div;
  return d;
}

std::vector<double> predict_w_radial(const RadialState& s, const ModelParams& p, double dt,
                                     const RadialOptions& opt) {
  check_state(s);
  if (!(dt > 0.0)) throw std::invalid_argument("predict_w_radial: dt must be positive");
  const double stiff = dt * p.c_s * p.c_nu;
  if (!std::isfinite(stiff))
    throw std::overflow_error("predict_w_radial: dt * c_s * c_nu overflows");

  const std::size_t n = s.w.size();
  const auto lap_w = radial_laplacian(s.w, s.grid);
  const auto dsig = radial_gradient(s.sigma, s.grid, opt.closure);
  const auto dw = radial_gradient(s.w, s.grid, opt.closure);
  const auto h = growth_rates(s.sigma, p);

  std::vector<double> coef(n), rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double chi = (!opt.support_mask || s.sigma[j] > 0.0) ? 1.0 : 0.0;
    coef[j] = p.c_z + chi * stiff;
    rhs[j] = s.w[j] - p.c_z * lap_w[j] + dt * p.c_s * dsig[j] * dw[j] +
             chi * dt * p.c_nu * h[j];
  }
  return helmholtz_matrix(s.grid, coef).solve(std::move(rhs));
}

std::vector<double> advance_rho_radial(const RadialState& s, const std::vector<double>& w_star,
                                       const ModelParams& p, double dt,
                                       const RadialOptions& opt) {
  check_state(s);
  if (w_star.size() != s.rho.size())
    throw std::invalid_argument("advance_rho_radial: size mismatch");
  const auto r = s.grid.nodes();
  std::vector<double> g(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) g[j] = r[j] * s.rho[j];

  // g is odd about the origin and flat beyond the outer face.
  TransportBoundary bc{-g.front(), g.back()};
  const auto u = face_velocities(w_star, p.c_s, s.grid.dr);
  const auto h = growth_rates(s.sigma, p);
  auto g_next = transport_step(g, u, h, s.grid.dr, dt, opt.cfl, bc);

  std::vector<double> rho(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    rho[j] = g_next[j] / r[j];
    if (rho[j] < 0.0) throw std::runtime_error("advance_rho_radial: negative density produced");
  }
  return rho;
}

Projection project_w_radial(const std::vector<double>& rho_next, const ModelParams& p,
                            const RadialGrid& g) {
  if (rho_next.size() != static_cast<std::size_t>(g.n_r))
    throw std::invalid_argument("project_w_radial: size mismatch");
  Projection out;
  out.sigma.resize(rho_next.size());
  for (std::size_t j = 0; j < rho_next.size(); ++j) out.sigma[j] = sigma_of_rho(rho_next[j], p);
  const std::vector<double> coef(rho_next.size(), p.c_z);
  out.w = helmholtz_matrix(g, coef).solve(out.sigma);
  return out;
}

double helmholtz_residual_radial(const std::vector<double>& w, const std::vector<double>& sigma,
                                 const ModelParams& p, const RadialGrid& g) {
  const auto lap_w = radial_laplacian(w, g);
  double res = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j)
    res = std::max(res, std::abs(w[j] - p.c_z * lap_w[j] - sigma[j]));
  return res;
}

double interior_limit_residual_radial(const RadialState& s, const std::vector<double>& w_star,
                                      const ModelParams& p) {
  const auto lap = radial_laplacian(w_star, s.grid);
  double res = 0.0;
  for (std::size_t j = 1; j + 1 < s.sigma.size(); ++j) {
    if (!(s.sigma[j - 1] > 0.0 && s.sigma[j] > 0.0 && s.sigma[j + 1] > 0.0)) continue;
    const double h = heaviside_eta(p.c_p - s.sigma[j], p);
    res = std::max(res, std::abs(-p.c_s * lap[j] - h));
  }
  return res;
}

RadialState step_radial(const RadialState& s, const ModelParams& p, double dt,
                        const RadialOptions& opt) {
  const auto w_star = predict_w_radial(s, p, dt, opt);
  auto rho = advance_rho_radial(s, w_star, p, dt, opt);
  auto proj = project_w_radial(rho, p, s.grid);
  return RadialState{s.t + dt, std::move(rho), std::move(proj.sigma), std::move(proj.w), s.grid};
}

double step_adaptive_radial(RadialState& s, const ModelParams& p, double dt_max,
                            const RadialOptions& opt) {
  if (!(dt_max > 0.0)) throw std::invalid_argument("step_adaptive_radial: dt_max must be positive");
  double dt = std::min({dt_max, 0.9, stiffness_dt_limit(p, opt),
                        advective_dt_limit(face_velocities(s.w, p.c_s, s.grid.dr), s.grid.dr,
                                           opt.cfl)});
  std::vector<double> w_star;
  for (int attempt = 0;; ++attempt) {
    w_star = predict_w_radial(s, p, dt, opt);
    const double limit =
        advective_dt_limit(face_velocities(w_star, p.c_s, s.grid.dr), s.grid.dr, opt.cfl);
    if (dt <= limit) break;
    if (attempt == 20) throw std::runtime_error("step_adaptive_radial: no admissible time step");
    dt = 0.9 * limit;
  }
  auto rho = advance_rho_radial(s, w_star, p, dt, opt);
  auto proj = project_w_radial(rho, p, s.grid);
  s.t += dt;
  s.rho = std::move(rho);
  s.sigma = std::move(proj.sigma);
  s.w = std::move(proj.w);
  return dt;
}

RadialState init_from_analytic_radial(const analytic::LayerGeometry& geom, const ModelParams& p,
                                      const RadialGrid& g) {
  const auto r = g.nodes();
  const auto prof = analytic::profile(analytic::Dim::Two, geom, p, p.eta, r);
  RadialState s;
  s.grid = g;
  s.w = prof.w;
  s.sigma.resize(r.size());
  s.rho.resize(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
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
