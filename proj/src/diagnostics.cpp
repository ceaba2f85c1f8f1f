#include "tumorfront/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tumorfront::diag {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::ptrdiff_t outermost_at_or_above(const std::vector<double>& rho, double threshold) {
  for (auto j = static_cast<std::ptrdiff_t>(rho.size()) - 1; j >= 0; --j)
    if (rho[static_cast<std::size_t>(j)] >= threshold) return j;
  return -1;
}

double median3(double a, double b, double c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

template <class Weight>
StabilityMonitors monitors(const std::vector<double>& rho, const std::vector<double>& sigma,
                           const std::vector<double>& w, Weight weight, double dx,
                           const ModelParams& p) {
  StabilityMonitors m;
  m.min_sigma = m.min_w = 0.0;
  if (!rho.empty()) {
    m.max_sigma = m.min_sigma = sigma[0];
    m.max_w = m.min_w = w[0];
  }
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double wt = weight(j);
    m.l2_rho += rho[j] * rho[j] * wt;
    m.l2_sigma += sigma[j] * sigma[j] * wt;
    if (sigma[j] > 0.0) m.support_volume += wt;
    m.max_sigma = std::max(m.max_sigma, sigma[j]);
    m.min_sigma = std::min(m.min_sigma, sigma[j]);
    m.max_w = std::max(m.max_w, w[j]);
    m.min_w = std::min(m.min_w, w[j]);
  }
  m.l2_rho = std::sqrt(m.l2_rho);
  m.l2_sigma = std::sqrt(m.l2_sigma);
  m.normalized = p.c_s == 1.0 && p.c_z == 1.0 && p.c_p == 1.0;
  if (m.normalized) {
    const double tol = 5.0 * p.eta + 2.0 * dx;
    m.sigma_bound_violated = m.max_sigma > 1.0 + tol || m.min_sigma < -tol;
    m.w_bound_violated = m.max_w > 1.0 + tol || m.min_w < -tol;
  }
  return m;
}

}  // namespace

double detect_front(const std::vector<double>& rho, const std::vector<double>& nodes,
                    double threshold) {
  if (rho.size() != nodes.size()) throw std::invalid_argument("detect_front: size mismatch");
  const auto j = outermost_at_or_above(rho, threshold);
  if (j < 0) throw NotDetected("detect_front: density never reaches the threshold");
  const auto k = static_cast<std::size_t>(j);
  if (k + 1 == rho.size()) throw NotDetected("detect_front: support reaches the domain edge");
  const double a = rho[k];
  const double b = rho[k + 1];
  const double frac = (a - threshold) / (a - b);
  return nodes[k] + frac * (nodes[k + 1] - nodes[k]);
}

double detect_front(const pde::SimState& s, double threshold) {
  return detect_front(s.rho, s.grid.nodes(), threshold);
}

double detect_front(const pde::RadialState& s, double threshold) {
  return detect_front(s.rho, s.grid.nodes(), threshold);
}

double measure_jump(const std::vector<double>& rho, const std::vector<double>& sigma,
                    const std::vector<double>& nodes, const FrontOptions& opt) {
  if (rho.size() != sigma.size() || rho.size() != nodes.size())
    throw std::invalid_argument("measure_jump: size mismatch");
  if (std::all_of(sigma.begin(), sigma.end(), [](double v) { return v == 0.0; })) return 0.0;
  const auto k = outermost_at_or_above(rho, opt.threshold);
  if (k < 0) throw NotDetected("measure_jump: no front");

  auto value = [&](std::ptrdiff_t i) {
    const auto j = static_cast<std::size_t>(i);
    if (!opt.median3 || j == 0 || j + 1 == sigma.size()) return sigma[j];
    return median3(sigma[j - 1], sigma[j], sigma[j + 1]);
  };
  if (opt.rule == JumpRule::OutermostCell) return value(k);

  const double front = detect_front(rho, nodes, opt.threshold);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  const std::ptrdiff_t last = k - opt.skip;
  for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, last - opt.fit_cells + 1); i <= last; ++i) {
    const double y = value(i);
    if (!(sigma[static_cast<std::size_t>(i)] > 0.0)) continue;
    const double x = nodes[static_cast<std::size_t>(i)] - front;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m == 0) return value(k);
  if (m == 1) return sy;
  const double det = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / det;
  return std::max(0.0, (sy - slope * sx) / m);
}

double measure_jump(const pde::SimState& s, const FrontOptions& opt) {
  return measure_jump(s.rho, s.sigma, s.grid.nodes(), opt);
}

double measure_jump(const pde::RadialState& s, const FrontOptions& opt) {
  return measure_jump(s.rho, s.sigma, s.grid.nodes(), opt);
}

double volume(const pde::SimState& s) {
  double v = 0.0;
  for (double r : s.rho) v += r;
  return v * s.grid.dx;
}

double volume(const pde::RadialState& s) {
  double v = 0.0;
  for (int j = 0; j < s.grid.n_r; ++j) v += s.rho[static_cast<std::size_t>(j)] * s.grid.node(j);
  return kTwoPi * v * s.grid.dr;
}

std::vector<double> estimate_speed(const std::vector<double>& t, const std::vector<double>& r,
                                   int window) {
  if (t.size() != r.size()) throw std::invalid_argument("estimate_speed: size mismatch");
  if (window < 3 || window % 2 == 0)
    throw std::invalid_argument("estimate_speed: window must be odd and >= 3");
  const auto n = static_cast<std::ptrdiff_t>(t.size());
  if (n < 2) throw std::invalid_argument("estimate_speed: need at least two samples");
  const std::ptrdiff_t half = window / 2;
  std::vector<double> v(t.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, i - half));
    const auto hi = static_cast<std::size_t>(std::min(n - 1, i + half));
    v[static_cast<std::size_t>(i)] = (r[hi] - r[lo]) / (t[hi] - t[lo]);
  }
  return v;
}

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& speed, FitMode mode,
                 double limit) {
  if (x.size() != speed.size()) throw std::invalid_argument("fit_rate: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dev = std::abs(speed[i] - limit);
    if (!(dev >= 1e-13) || !std::isfinite(dev)) continue;
    if (mode == FitMode::AlgebraicInR) {
      if (!(x[i] > 0.0)) continue;
      xs.push_back(std::log(x[i]));
    } else {
      xs.push_back(x[i]);
    }
    ys.push_back(std::log(dev));
  }
  if (xs.size() < 4) throw FitUnreliable("fit_rate: fewer than four samples above the noise floor");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw FitUnreliable("fit_rate: abscissae are all equal");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.prefactor = std::exp(my - fit.slope * mx);
  fit.r2fit = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.samples = static_cast<int>(xs.size());
  return fit;
}

StabilityMonitors stability_monitors(const pde::SimState& s, const ModelParams& p) {
  const double dx = s.grid.dx;
  return monitors(s.rho, s.sigma, s.w, [dx](std::size_t) { return dx; }, dx, p);
}

StabilityMonitors stability_monitors(const pde::RadialState& s, const ModelParams& p) {
  const auto& g = s.grid;
  return monitors(
      s.rho, s.sigma, s.w,
      [&g](std::size_t j) { return kTwoPi * g.node(static_cast<int>(j)) * g.dr; }, g.dr, p);
}

bool l2_growth_ok(double l2sq_prev, double l2sq_next, double dt, double rate) {
  return l2sq_next <= l2sq_prev * std::exp(rate * dt) * (1.0 + 1e-12);
}

}  // namespace tumorfront::diag
