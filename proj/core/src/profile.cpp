#include "wulff/profile.hpp"

#include <algorithm>
#include <cmath>

#include "newton.hpp"
#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

constexpr std::size_t kIntervalRule = 10;

}  // namespace

OptimalProfile build_profile(const DoubleWell& well, std::size_t half_intervals) {
  if (half_intervals < 4 || half_intervals % 2 != 0) throw DomainError("profile table needs an even interval count >= 4");
  OptimalProfile p(well);
  const double beta = well.beta();
  const double s0 = 1.0 - well.a();
  const double e = 0.5 * (2.0 - beta);
  const double u0 = std::pow(well.a(), e);
  const std::size_t nb = half_intervals / 2;
  const std::size_t nw = half_intervals - nb;
  p.bridge_intervals_ = nb;

  const QuadratureRule& gl = gauss_legendre(kIntervalRule);
  p.t_.reserve(half_intervals + 1);
  p.z_.reserve(half_intervals + 1);
  p.t_.push_back(0.0);
  p.z_.push_back(0.0);
  double t = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    const double za = s0 * static_cast<double>(k) / static_cast<double>(nb);
    const double zb = s0 * static_cast<double>(k + 1) / static_cast<double>(nb);
    t += integrate_fixed([&](double s) { return 1.0 / std::sqrt(well(s)); }, za, zb, gl);
    p.t_.push_back(t);
    p.z_.push_back(zb);
  }
  p.t_bridge_ = t;
  p.tau_ = t + u0 / e;
  for (std::size_t j = 1; j <= nw; ++j) {
    const double u = u0 * (1.0 - static_cast<double>(j) / static_cast<double>(nw));
    p.t_.push_back(p.t_bridge_ + (u0 - u) / e);
    p.z_.push_back(1.0 - std::pow(u, 1.0 / e));
  }
  for (std::size_t k = 1; k < p.t_.size(); ++k) {
    if (!(p.t_[k] > p.t_[k - 1]) || !(p.z_[k] > p.z_[k - 1])) {
      throw NumericalError("profile table is not monotone", p.t_[k]);
    }
  }
  const double tau_ref = tau_w(well, 1e-11);
  if (std::abs(tau_ref - p.tau_) > 1e-9) throw NumericalError("profile table disagrees with tau_W", p.tau_);
  p.c_w_ = c_w(well);
  return p;
}

double OptimalProfile::eval_positive(double t, double* deriv) const {
  if (t >= tau_) {
    if (deriv) *deriv = 0.0;
    return 1.0;
  }
  const double beta = well_.beta();
  if (t >= t_bridge_) {
    const double e = 0.5 * (2.0 - beta);
    const double u = std::max(0.0, std::pow(well_.a(), e) - e * (t - t_bridge_));
    if (deriv) *deriv = std::pow(u, 1.0 / e - 1.0);
    return 1.0 - std::pow(u, 1.0 / e);
  }
  const auto end = t_.begin() + static_cast<std::ptrdiff_t>(bridge_intervals_ + 1);
  auto it = std::upper_bound(t_.begin(), end, t);
  std::size_t k = static_cast<std::size_t>(it - t_.begin());
  k = std::clamp<std::size_t>(k, 1, bridge_intervals_) - 1;
  const double t0 = t_[k], t1 = t_[k + 1];
  const double z0 = z_[k], z1 = z_[k + 1];
  const double h = t1 - t0;
  double m0 = std::sqrt(well_(z0));
  double m1 = std::sqrt(well_(z1));
  const double secant = (z1 - z0) / h;
  const double al = m0 / secant, be = m1 / secant;
  const double r2 = al * al + be * be;
  if (r2 > 9.0) {
    const double s = 3.0 / std::sqrt(r2);
    m0 *= s;
    m1 *= s;
  }
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  if (deriv) {
    const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
    *deriv = (d00 * z0 + d01 * z1) / h + d10 * m0 + d11 * m1;
  }
  return std::clamp(h00 * z0 + h10 * h * m0 + h01 * z1 + h11 * h * m1, -1.0, 1.0);
}

double OptimalProfile::operator()(double t) const {
  if (t < 0.0) return -eval_positive(-t, nullptr);
  return eval_positive(t, nullptr);
}

double OptimalProfile::slope(double t) const {
  if (std::abs(t) >= tau_) return 0.0;
  return std::sqrt(well_((*this)(t)));
}

double OptimalProfile::interpolant_slope(double t) const {
  double d = 0.0;
  eval_positive(std::abs(t), &d);
  return d;
}

double OptimalProfile::time_of(double z) const {
  if (!(z >= -1.0 && z <= 1.0)) throw DomainError("profile inverse needs z in [-1, 1]");
  const double x = std::abs(z);
  const double sgn = z < 0.0 ? -1.0 : 1.0;
  const double s0 = 1.0 - well_.a();
  if (x >= s0) {
    const double e = 0.5 * (2.0 - well_.beta());
    return sgn * (t_bridge_ + (std::pow(well_.a(), e) - std::pow(1.0 - x, e)) / e);
  }
  const double nb = static_cast<double>(bridge_intervals_);
  const std::size_t k = std::min(bridge_intervals_ - 1, static_cast<std::size_t>(x / s0 * nb));
  const double zk = z_[k];
  const double part = integrate_fixed([&](double s) { return 1.0 / std::sqrt(well_(s)); }, zk, x,
                                      gauss_legendre(kIntervalRule));
  return sgn * (t_[k] + part);
}

std::vector<std::array<double, 3>> OptimalProfile::full_table() const {
  std::vector<std::array<double, 3>> rows;
  rows.reserve(2 * t_.size() - 1);
  for (std::size_t k = t_.size(); k-- > 1;) rows.push_back({-t_[k], -z_[k], slope(t_[k])});
  for (std::size_t k = 0; k < t_.size(); ++k) rows.push_back({t_[k], z_[k], slope(t_[k])});
  return rows;
}

double integrate_over_layer(const OptimalProfile& p,
                            const std::function<double(double, double, double)>& f) {
  const QuadratureRule& gl = gauss_legendre(kIntervalRule);
  const auto& tt = p.table_t();
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < tt.size(); ++k) {
    for (double sgn : {1.0, -1.0}) {
      const double a = sgn * tt[k], b = sgn * tt[k + 1];
      sum += integrate_fixed([&](double t) { return f(t, p(t), p.slope(t)); }, std::min(a, b),
                             std::max(a, b), gl);
    }
  }
  return sum;
}

double profile_energy(const OptimalProfile& p, double b) {
  if (!(b >= p.tau())) throw DomainError("profile energy needs b >= tau_W");
  const DoubleWell& w = p.well();
  return integrate_over_layer(p, [&](double, double z, double) { return 2.0 * w(z); });
}

Equipartition equipartition(const OptimalProfile& p) {
  const DoubleWell& w = p.well();
  Equipartition out;
  out.potential = integrate_over_layer(p, [&](double, double z, double) { return w(z); });
  out.gradient = integrate_over_layer(p, [&](double t, double, double) {
    const double d = p.interpolant_slope(t);
    return d * d;
  });
  return out;
}

double ode_residual(const OptimalProfile& p, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t i = 1; i <= samples; ++i) {
    const double t = p.tau() * (2.0 * static_cast<double>(i) / static_cast<double>(samples + 1) - 1.0);
    worst = std::max(worst, std::abs(p.interpolant_slope(t) - std::sqrt(p.well()(p(t)))));
  }
  return worst;
}

double profile_energy_moment(const OptimalProfile& p, int k) {
  const DoubleWell& w = p.well();
  return integrate_over_layer(p, [&](double t, double z, double zp) {
    return (w(z) + zp * zp) * std::pow(t, k);
  });
}

MinimalityReport minimize_transition(const std::function<double(double)>& w,
                                     const std::function<double(double)>& w_prime,
                                     const std::function<double(double)>& w_second, double b,
                                     std::size_t grid_size) {
  if (grid_size < 64 || grid_size % 2 != 0) throw DomainError("grid_size must be even and >= 64");
  if (!(b > 0.0)) throw DomainError("half-length must be positive");
  const std::size_t n = grid_size + 1;
  const double h = 2.0 * b / static_cast<double>(grid_size);
  std::vector<double> t(n), mass(n, h);
  for (std::size_t i = 0; i < n; ++i) t[i] = -b + h * static_cast<double>(i);
  mass.front() = mass.back() = 0.5 * h;

  detail::BoxProblem prob;
  prob.size = n;
  prob.lower.assign(n, -1.0);
  prob.upper.assign(n, 1.0);
  prob.lower[n / 2] = prob.upper[n / 2] = 0.0;
  prob.scale = mass;
  prob.energy = [&](const std::vector<double>& x) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e += mass[i] * w(x[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) e += (x[i + 1] - x[i]) * (x[i + 1] - x[i]) / h;
    return e;
  };
  prob.gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
    for (std::size_t i = 0; i < n; ++i) g[i] = mass[i] * w_prime(x[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = 2.0 * (x[i + 1] - x[i]) / h;
      g[i] -= d;
      g[i + 1] += d;
    }
  };
  const double cap = 1e4 / (h * h);
  prob.hessian = [&](const std::vector<double>& x, detail::Tridiagonal& tri, std::vector<double>&, double&) {
    for (std::size_t i = 0; i < n; ++i) {
      const double c = w_second(x[i]);
      tri.diag[i] = mass[i] * std::clamp(std::isfinite(c) ? c : cap, 0.0, cap);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      tri.diag[i] += 2.0 / h;
      tri.diag[i + 1] += 2.0 / h;
      tri.off[i] = -2.0 / h;
    }
  };
  std::vector<double> x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = std::clamp(2.0 * t[i] / b, -1.0, 1.0);
  auto res = detail::minimize_box(prob, std::move(x0), 1e-10, 2000);
  if (!res.converged) throw NumericalError("profile minimization did not converge", res.stationarity);
  MinimalityReport out;
  out.minimum = prob.energy(res.x);
  out.iterations = res.iterations;
  out.t = std::move(t);
  out.w = std::move(res.x);
  return out;
}

MinimalityReport verify_profile_minimality(const OptimalProfile& p, double b, std::size_t grid_size) {
  if (!(b >= p.tau())) throw DomainError("minimality check needs b >= tau_W");
  const DoubleWell& w = p.well();
  auto out = minimize_transition([&](double s) { return w(s); }, [&](double s) { return w.prime(s); },
                                 [&](double s) { return w.second(s); }, b, grid_size);
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    out.sup_distance = std::max(out.sup_distance, std::abs(out.w[i] - p(out.t[i])));
  }
  return out;
}

}  // namespace wulff
