#include "newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wulff::detail {

bool solve_tridiagonal(const Tridiagonal& t, std::vector<double>& b) {
  const std::size_t n = t.diag.size();
  if (n == 0) return true;
  std::vector<double> c(n, 0.0);
  double piv = t.diag[0];
  if (piv == 0.0 || !std::isfinite(piv)) return false;
  b[0] /= piv;
  for (std::size_t i = 1; i < n; ++i) {
    c[i - 1] = t.off[i - 1] / piv;
    piv = t.diag[i] - t.off[i - 1] * c[i - 1];
    if (piv == 0.0 || !std::isfinite(piv)) return false;
    b[i] = (b[i] - t.off[i - 1] * b[i - 1]) / piv;
  }
  for (std::size_t i = n - 1; i-- > 0;) b[i] -= c[i] * b[i + 1];
  return true;
}

namespace {

double stationarity(const BoxProblem& p, const std::vector<double>& x, const std::vector<double>& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size; ++i) {
    const double moved = std::clamp(x[i] - g[i], p.lower[i], p.upper[i]) - x[i];
    worst = std::max(worst, std::abs(moved) / p.scale[i]);
  }
  return worst;
}

}  // namespace

BoxResult minimize_box(const BoxProblem& p, std::vector<double> x0, double tol,
                       std::size_t max_iterations) {
  const std::size_t n = p.size;
  BoxResult out;
  out.x = std::move(x0);
  auto& x = out.x;
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], p.lower[i], p.upper[i]);

  std::vector<double> g(n), d(n), y(n), u, trial(n);
  std::vector<char> active(n);
  Tridiagonal t;
  double f = p.energy(x);
  p.gradient(x, g);
  const double eps = std::numeric_limits<double>::epsilon();

  for (out.iterations = 0; out.iterations < max_iterations; ++out.iterations) {
    out.stationarity = stationarity(p, x, g);
    if (out.stationarity <= tol) {
      out.converged = true;
      return out;
    }
    // Active set: at a bound with the gradient pushing outward.
    for (std::size_t i = 0; i < n; ++i) {
      active[i] = (x[i] <= p.lower[i] && g[i] > 0.0) || (x[i] >= p.upper[i] && g[i] < 0.0) ||
                  p.lower[i] == p.upper[i];
    }
    t.diag.assign(n, 0.0);
    t.off.assign(n > 0 ? n - 1 : 0, 0.0);
    u.clear();
    double sigma = 0.0;
    p.hessian(x, t, u, sigma);
    double dmax = 0.0;
    for (double v : t.diag) dmax = std::max(dmax, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) {
        t.diag[i] = 1.0;
        if (i > 0) t.off[i - 1] = 0.0;
        if (i + 1 < n) t.off[i] = 0.0;
        d[i] = 0.0;
      } else {
        t.diag[i] += 1e-14 * dmax;
        d[i] = -g[i];
      }
    }
    bool ok = solve_tridiagonal(t, d);
    if (ok && sigma != 0.0 && !u.empty()) {
      for (std::size_t i = 0; i < n; ++i) y[i] = active[i] ? 0.0 : u[i];
      ok = solve_tridiagonal(t, y);
      double ux = 0.0, uy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) continue;
        ux += u[i] * d[i];
        uy += u[i] * y[i];
      }
      const double denom = 1.0 + sigma * uy;
      if (ok && denom != 0.0) {
        const double k = sigma * ux / denom;
        for (std::size_t i = 0; i < n; ++i) d[i] -= k * y[i];
      }
    }
    double gd = 0.0;
    for (std::size_t i = 0; i < n; ++i) gd += g[i] * d[i];
    if (!ok || !(gd < 0.0)) {
      for (std::size_t i = 0; i < n; ++i) d[i] = active[i] ? 0.0 : -g[i] / std::max(t.diag[i], 1e-300);
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = std::clamp(x[i] + alpha * d[i], p.lower[i], p.upper[i]);
        decrease += g[i] * (trial[i] - x[i]);
      }
      const double ft = p.energy(trial);
      if (ft <= f + 1e-4 * decrease + 8.0 * eps * std::abs(f)) {
        x.swap(trial);
        f = ft;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    p.gradient(x, g);
    if (!accepted) {
      out.stationarity = stationarity(p, x, g);
      out.converged = out.stationarity <= tol;
      return out;
    }
  }
  out.stationarity = stationarity(p, x, g);
  out.converged = out.stationarity <= tol;
  return out;
}

}  // namespace wulff::detail
