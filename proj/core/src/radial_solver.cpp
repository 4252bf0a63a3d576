#include "wulff/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "newton.hpp"
#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

// Distances from a layer edge to the domain end, starting at spacing h and
// growing geometrically; rescaled so the last one lands exactly on `length`.
std::vector<double> graded_offsets(double length, double h, const RadialGridOptions& g) {
  std::vector<double> d;
  if (length <= 0.0) return d;
  double step = h;
  double acc = 0.0;
  while (acc < length) {
    step = std::min(step * g.growth, std::max(g.max_spacing, h));
    acc += step;
    d.push_back(acc);
  }
  if (d.size() > 1 && length - d[d.size() - 2] < 0.5 * (d.back() - d[d.size() - 2])) d.pop_back();
  const double s = length / d.back();
  for (double& v : d) v *= s;
  return d;
}

// Exact P1 lumped weights and element stiffness for the weight x^{n-1}.
void p1_weights(const std::vector<double>& x, int n, double shift, double scale,
                std::vector<double>& mass, std::vector<double>& stiff) {
  const std::size_t N = x.size();
  mass.assign(N, 0.0);
  stiff.assign(N - 1, 0.0);
  const QuadratureRule& gl = gauss_legendre(static_cast<std::size_t>(n) + 2);
  for (std::size_t e = 0; e + 1 < N; ++e) {
    const double a = x[e], b = x[e + 1];
    const double h = b - a;
    double m0 = 0.0, m1 = 0.0, tot = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double s = 0.5 * (gl.nodes[q] + 1.0);
      const double xq = a + h * s;
      const double wt = 0.5 * h * gl.weights[q] * std::pow(std::max(0.0, shift + scale * xq), n - 1);
      m0 += wt * (1.0 - s);
      m1 += wt * s;
      tot += wt;
    }
    mass[e] += m0;
    mass[e + 1] += m1;
    stiff[e] = tot / (h * h);
  }
}

double lumped_energy(const std::vector<double>& mass, const std::vector<double>& stiff,
                     const DoubleWell& well, const std::vector<double>& w, double pot, double grad) {
  double e = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) e += pot * mass[i] * well(w[i]);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double d = w[i + 1] - w[i];
    e += grad * stiff[i] * d * d;
  }
  return e;
}

}  // namespace

RadialProblem make_radial_problem(std::shared_ptr<const OptimalProfile> profile,
                                  const AnisotropicNorm& norm, double R, double r, double eps,
                                  const RadialGridOptions& grid) {
  if (!profile) throw DomainError("radial problem needs a profile");
  if (!(R > 0.0) || !(r > 0.0 && r < R)) throw DomainError("need 0 < r < R");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
  if (!(grid.points_per_eps > 0.0 && grid.growth >= 1.0 && grid.max_spacing > 0.0 &&
        grid.layer_halfwidth > 0.0)) {
    throw ConfigError("invalid radial grid options");
  }
  RadialProblem p;
  p.profile = std::move(profile);
  p.n = norm.dim();
  p.kappa = norm.kappa();
  p.R = R;
  p.r = r;
  p.eps = eps;
  p.m = p.kappa * std::pow(R, p.n) - 2.0 * p.kappa * std::pow(r, p.n);
  p.bound = (std::pow(R, p.n) - 2.0 * std::pow(r, p.n)) / p.n;

  const double half = grid.layer_halfwidth * eps * p.profile->tau();
  p.layer_clipped = !(8.0 * eps * p.profile->tau() < std::min(r, R - r));
  const double lo = std::max(0.0, r - half);
  const double hi = std::min(R, r + half);
  const double h_target = eps / grid.points_per_eps;
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / h_target));
  const double h = (hi - lo) / static_cast<double>(count);

  const auto left = graded_offsets(lo, h, grid);
  for (auto it = left.rbegin(); it != left.rend(); ++it) p.rho.push_back(lo - *it);
  if (!p.rho.empty()) p.rho.front() = 0.0;
  for (std::size_t k = 0; k <= count; ++k) p.rho.push_back(lo + h * static_cast<double>(k));
  p.rho.back() = hi;
  for (double d : graded_offsets(R - hi, h, grid)) p.rho.push_back(hi + d);
  p.rho.back() = R;

  p1_weights(p.rho, p.n, 0.0, 1.0, p.mass, p.stiffness);
  return p;
}

double energy_G(const RadialProblem& p, const std::vector<double>& w) {
  if (w.size() != p.size()) throw DomainError("nodal vector does not match the grid");
  return lumped_energy(p.mass, p.stiffness, p.well(), w, 1.0 / p.eps, p.eps);
}

double energy_H(const RadialProblem& p, const std::vector<double>& w) {
  if (w.size() != p.size()) throw DomainError("nodal vector does not match the grid");
  std::vector<double> t(p.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.t_of(i);
  std::vector<double> mass, stiff;
  p1_weights(t, p.n, p.r, p.eps, mass, stiff);
  return lumped_energy(mass, stiff, p.well(), w, 1.0, 1.0);
}

double energy_H_profile(const OptimalProfile& profile, int n, double r, double eps) {
  const DoubleWell& well = profile.well();
  return integrate_over_layer(profile, [&](double t, double z, double zp) {
    const double rho = r + eps * t;
    if (rho <= 0.0) return 0.0;
    return (well(z) + zp * zp) * std::pow(rho, n - 1);
  });
}

std::vector<double> shifted_profile(const RadialProblem& p) {
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (*p.profile)(p.t_of(i));
  w.back() = 1.0;
  return w;
}

RadialSolveResult minimize(const RadialProblem& p, const SolverOptions& opt) {
  const std::size_t N = p.size();
  const DoubleWell& well = p.well();
  const double eps = p.eps;
  auto constraint = [&](const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += p.mass[i] * w[i];
    return s - p.bound;
  };

  double mu = 0.0;
  double rho_pen = opt.penalty;
  const double cap = 1e8;

  detail::BoxProblem box;
  box.size = N;
  box.lower.assign(N, -std::numeric_limits<double>::infinity());
  box.upper.assign(N, 1.0);
  box.lower.back() = 1.0;
  box.scale = p.mass;
  box.scale.back() = 1.0;
  box.energy = [&](const std::vector<double>& w) {
    const double shifted = std::max(0.0, mu + rho_pen * constraint(w));
    return energy_G(p, w) + (shifted * shifted - mu * mu) / (2.0 * rho_pen);
  };
  box.gradient = [&](const std::vector<double>& w, std::vector<double>& g) {
    const double lam = std::max(0.0, mu + rho_pen * constraint(w));
    for (std::size_t i = 0; i < N; ++i) g[i] = p.mass[i] * (well.prime(w[i]) / eps + lam);
    for (std::size_t e = 0; e + 1 < N; ++e) {
      const double d = 2.0 * eps * p.stiffness[e] * (w[e + 1] - w[e]);
      g[e] -= d;
      g[e + 1] += d;
    }
  };
  box.hessian = [&](const std::vector<double>& w, detail::Tridiagonal& t, std::vector<double>& u,
                    double& sigma) {
    for (std::size_t i = 0; i < N; ++i) {
      const double c = well.second(w[i]);
      t.diag[i] = p.mass[i] / eps * std::clamp(std::isfinite(c) ? c : cap, 0.0, cap);
    }
    for (std::size_t e = 0; e + 1 < N; ++e) {
      const double k = 2.0 * eps * p.stiffness[e];
      t.diag[e] += k;
      t.diag[e + 1] += k;
      t.off[e] = -k;
    }
    if (mu + rho_pen * constraint(w) > 0.0) {
      u = p.mass;
      sigma = rho_pen;
    }
  };

  RadialSolveResult out;
  std::vector<double> w = shifted_profile(p);
  const double nk = p.n * p.kappa;
  double g_prev = std::numeric_limits<double>::infinity();
  bool inner_ok = false;
  for (out.outer_iterations = 1; out.outer_iterations <= opt.max_outer; ++out.outer_iterations) {
    auto res = detail::minimize_box(box, std::move(w), opt.grad_tol, opt.max_inner);
    w = std::move(res.x);
    out.iterations += res.iterations;
    out.stationarity = res.stationarity;
    inner_ok = res.converged;
    const double g = constraint(w);
    const double mu_new = std::max(0.0, mu + rho_pen * g);
    const double gap_tol = std::min(opt.mass_tol, 0.5 * opt.kkt_tol / (nk * std::max(mu_new, 1.0)));
    const bool feasible = g <= gap_tol && (mu_new == 0.0 || std::abs(g) <= gap_tol);
    mu = mu_new;
    if (inner_ok && feasible) {
      out.converged = true;
      break;
    }
    if (std::abs(g) > 0.25 * g_prev) rho_pen = std::min(rho_pen * 10.0, 1e12);
    g_prev = std::abs(g);
  }
  if (out.outer_iterations > opt.max_outer) out.outer_iterations = opt.max_outer;

  out.lambda = mu;
  const double g = constraint(w);
  out.constraint_slack = nk * (-g);
  out.complementarity = std::abs(out.lambda * out.constraint_slack);

  std::vector<double> grad(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) grad[i] = p.mass[i] * well.prime(w[i]) / eps;
  for (std::size_t e = 0; e + 1 < N; ++e) {
    const double d = 2.0 * eps * p.stiffness[e] * (w[e + 1] - w[e]);
    grad[e] -= d;
    grad[e + 1] += d;
  }
  out.el_defect.assign(N, 0.0);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (w[i] >= 1.0) continue;
    out.el_defect[i] = std::abs(grad[i] / p.mass[i] + out.lambda);
    out.el_residual = std::max(out.el_residual, out.el_defect[i]);
  }
  out.converged = out.converged && out.el_residual <= opt.el_tol / eps &&
                  out.complementarity <= opt.kkt_tol;

  out.energy_G = energy_G(p, w);
  out.energy_H = energy_H(p, w);
  out.min_w = *std::min_element(w.begin(), w.end());
  for (std::size_t i = 0; i + 1 < N; ++i) {
    out.monotonicity_violation = std::max(out.monotonicity_violation, w[i] - w[i + 1]);
  }
  try {
    const auto zc = zero_crossing(p, w);
    out.delta = zc.delta;
    out.multiple_crossings = zc.multiple;
    out.eps_delta = eps * zc.delta;
  } catch (const DegenerateStateError&) {
    out.converged = false;
    out.delta = std::numeric_limits<double>::quiet_NaN();
    out.eps_delta = out.delta;
  }
  out.w = std::move(w);
  return out;
}

ZeroCrossing zero_crossing(const RadialProblem& p, const std::vector<double>& w) {
  if (w.size() != p.size()) throw DomainError("nodal vector does not match the grid");
  ZeroCrossing out;
  std::size_t found = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double a = w[i], b = w[i + 1];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      const double ta = p.t_of(i), tb = p.t_of(i + 1);
      const double t = b == 0.0 ? tb : ta + (tb - ta) * a / (a - b);
      ++found;
      if (std::abs(t) < std::abs(best)) best = t;
    }
  }
  if (found == 0) throw DegenerateStateError("nodal values do not change sign");
  out.delta = best;
  out.multiple = found > 1;
  return out;
}

double excess(const RadialProblem& p, double energy_h) {
  return (energy_h - p.profile->c_w() * std::pow(p.r, p.n - 1)) / p.eps;
}

double excess(const RadialProblem& p, const RadialSolveResult& result) {
  return excess(p, result.energy_H);
}

double sample_t(const RadialProblem& p, const std::vector<double>& w, double t) {
  const double rho = std::clamp(p.r + p.eps * t, 0.0, p.R);
  auto it = std::upper_bound(p.rho.begin(), p.rho.end(), rho);
  std::size_t k = static_cast<std::size_t>(it - p.rho.begin());
  k = std::clamp<std::size_t>(k, 1, p.size() - 1);
  const double a = p.rho[k - 1], b = p.rho[k];
  const double s = (rho - a) / (b - a);
  return w[k - 1] + s * (w[k] - w[k - 1]);
}

EndpointDiagnostics diagnostics_endpoint_layers(const RadialProblem& p, const std::vector<double>& w,
                                                double delta) {
  EndpointDiagnostics d;
  const double tau = p.profile->tau();
  for (std::size_t j = 0; j < d.k.size(); ++j) {
    const double off = tau + d.k[j] * p.eps;
    d.lower[j] = sample_t(p, w, delta - off) + 1.0;
    d.upper[j] = 1.0 - sample_t(p, w, delta + off);
  }
  return d;
}

}  // namespace wulff
