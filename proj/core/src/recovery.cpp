#include "wulff/recovery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// (r + a)^n + (r - a)^n - 2 r^n without cancellation.
double even_binomial_bracket(int n, double r, double a) {
  double s = 0.0;
  for (int k = 2; k <= n; k += 2) s += 2.0 * binomial(n, k) * std::pow(r, n - k) * std::pow(a, k);
  return s;
}

double psi(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double psi_prime(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return psi(s) * (-2.0 * s / (q * q));
}

double center_offset(const RecoveryConfig& cfg, double eps) {
  const auto c = cfg.center(eps);
  return cfg.norm->polar(c);
}

void require_layer_inside(const RecoveryConfig& cfg, double eps) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double tau = cfg.profile->tau();
  if (!(cfg.r - eps * tau > 0.0)) throw GeometryError("transition layer reaches the centre: r - eps tau_W <= 0");
  if (!(center_offset(cfg, eps) + cfg.r + eps * tau < cfg.R)) {
    throw GeometryError("shifted transition layer leaves Omega");
  }
}

}  // namespace

std::vector<double> RecoveryConfig::center(double eps) const {
  std::vector<double> c(static_cast<std::size_t>(n()), 0.0);
  if (y0.empty()) return c;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = eps * gamma() * y0[i];
  return c;
}

void validate(const RecoveryConfig& cfg) {
  if (!cfg.norm || !cfg.profile) throw ConfigError("recovery needs a norm and a profile");
  if (!(cfg.R > 0.0 && cfg.r > 0.0 && cfg.r < cfg.R)) throw DomainError("need 0 < r < R");
  if (!cfg.y0.empty()) {
    if (cfg.y0.size() != static_cast<std::size_t>(cfg.n())) throw ConfigError("y0 has the wrong dimension");
    if (cfg.norm->polar(cfg.y0) > cfg.gap()) throw GeometryError("enlarged-ball centre too far: Phi°(y0) > delta");
  }
  if (!(cfg.r + cfg.gap() <= cfg.R + 1e-12)) throw GeometryError("enlarged ball leaves Omega");
}

double Bump::value(double rho) const { return c * psi(rho / radius); }

double Bump::slope(double rho) const { return c * psi_prime(rho / radius) / radius; }

Bump make_bump(const RecoveryConfig& cfg) {
  const int n = cfg.n();
  const double moment =
      integrate_adaptive([n](double s) { return psi(s) * std::pow(s, n - 1); }, 0.0, 1.0, 1e-15).value;
  Bump b;
  b.radius = 0.5 * cfg.r;
  b.c = 1.0 / (n * cfg.norm->kappa() * std::pow(b.radius, n) * moment);
  return b;
}

double mass_error(const RecoveryConfig& cfg, double eps) {
  validate(cfg);
  require_layer_inside(cfg, eps);
  const int n = cfg.n();
  const double r = cfg.r;
  const double moment = integrate_over_layer(
      *cfg.profile, [&](double t, double z, double) { return z * std::pow(r + eps * t, n - 1); });
  const double bracket = even_binomial_bracket(n, r, eps * cfg.profile->tau()) - n * eps * moment;
  return -cfg.norm->kappa() * bracket;
}

double recovery_energy(const RecoveryConfig& cfg, double eps) {
  validate(cfg);
  require_layer_inside(cfg, eps);
  const int n = cfg.n();
  const DoubleWell& w = cfg.profile->well();
  const double integral = integrate_over_layer(*cfg.profile, [&](double t, double z, double zp) {
    return (w(z) + zp * zp) * std::pow(cfg.r + eps * t, n - 1);
  });
  return n * cfg.norm->kappa() * integral;
}

RecoveryResult corrected_energy(const RecoveryConfig& cfg, double eps) {
  const double omega = mass_error(cfg, eps);
  const double tau = cfg.profile->tau();
  if (!(0.5 * cfg.r + center_offset(cfg, eps) < cfg.r - eps * tau)) {
    throw GeometryError("bump support is not inside {u_hat = -1}: r/2 >= r - eps tau_W - Phi°(centre)");
  }
  const int n = cfg.n();
  const double nk = n * cfg.norm->kappa();
  const DoubleWell& w = cfg.profile->well();
  const double beta = w.beta();
  const Bump bump = make_bump(cfg);

  RecoveryResult out;
  out.eps = eps;
  out.omega = omega;
  out.omega_over_eps2 = omega / (eps * eps);
  out.energy_hat = recovery_energy(cfg, eps);

  const double int_phi_beta =
      nk * integrate_adaptive([&](double rho) { return std::pow(bump.value(rho), beta) * std::pow(rho, n - 1); },
                              0.0, bump.radius, 1e-12 * std::pow(bump.c, beta))
               .value;
  const double int_dphi2_radial =
      integrate_adaptive([&](double rho) { return bump.slope(rho) * bump.slope(rho) * std::pow(rho, n - 1); },
                         0.0, bump.radius, 1e-12 * bump.c * bump.c)
          .value;
  const double dirichlet = euclidean_dirichlet_factor(*cfg.norm) * int_dphi2_radial;
  const double cphi = cfg.norm->growth_upper();
  out.majorant = std::pow(std::abs(omega), beta) / eps * int_phi_beta + cphi * cphi * eps * omega * omega * dirichlet;
  out.majorant_valid = std::abs(omega) * bump.value(0.0) <= w.a();

  const double tol = std::max(1e-9 * out.majorant, 1e-300);
  out.energy_corr =
      nk * integrate_adaptive(
               [&](double rho) {
                 const double ph = bump.value(rho);
                 const double dph = bump.slope(rho);
                 return (w(-1.0 - omega * ph) / eps + eps * omega * omega * dph * dph) * std::pow(rho, n - 1);
               },
               0.0, bump.radius, tol)
               .value;
  out.energy_total = out.energy_hat + out.energy_corr;
  const double target = nk * cfg.profile->c_w() * std::pow(cfg.r, n - 1);
  out.limsup_quotient = (out.energy_total - target) / eps;
  return out;
}

FeasibilityReport feasibility_check(const RecoveryConfig& cfg, double eps) {
  validate(cfg);
  FeasibilityReport rep;
  const int n = cfg.n();
  const auto& norm = *cfg.norm;
  const double kap = norm.kappa();
  const double tau = cfg.profile->tau();
  const double gap = cfg.gap();
  std::vector<double> y0 = cfg.y0.empty() ? std::vector<double>(static_cast<std::size_t>(n), 0.0) : cfg.y0;
  rep.volume_omega = kap * std::pow(cfg.R, n);

  const DirectionMesh mesh(n, n == 2 ? 512 : 2048);
  rep.inclusion_margin = std::numeric_limits<double>::infinity();
  std::vector<double> x(static_cast<std::size_t>(n)), rel(static_cast<std::size_t>(n));
  for (int it = 0; it <= 32; ++it) {
    const double s = it / 32.0;
    const double rad = cfg.r + s * gap;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
      const auto th = mesh[k];
      const double scale = rad / norm.polar(th);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = s * y0[i] + scale * th[i];
        rel[i] = x[i] - y0[i];
      }
      rep.inclusion_margin = std::min(rep.inclusion_margin, cfg.r + gap - norm.polar(rel));
      rep.inclusion_margin = std::min(rep.inclusion_margin, cfg.R - norm.polar(x));
    }
  }
  rep.inclusion = rep.inclusion_margin >= -1e-12;

  const double off = norm.polar(cfg.center(eps));
  rep.boundary = cfg.r - eps * tau > 0.0 && off + cfg.r + eps * tau < cfg.R;
  rep.support = 0.5 * cfg.r + off < cfg.r - eps * tau;
  if (!(rep.boundary && rep.support)) {
    rep.mass_defect = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  // Independent of mass_error: rho-quadrature of u_hat about its own centre.
  const double omega = mass_error(cfg, eps);
  const Bump bump = make_bump(cfg);
  const auto& z = *cfg.profile;
  const double lo = cfg.r - eps * tau, hi = cfg.r + eps * tau;
  const double tb = eps * z.t_bridge();
  const std::array<double, 4> cuts{lo, cfg.r - tb, cfg.r + tb, hi};
  double layer = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    layer += integrate_adaptive([&](double rho) { return z((rho - cfg.r) / eps) * std::pow(rho, n - 1); },
                                cuts[k], cuts[k + 1], 1e-12)
                 .value;
  }
  const double int_uhat = rep.volume_omega - kap * std::pow(hi, n) - kap * std::pow(lo, n) + n * kap * layer;
  const double int_phi =
      n * kap *
      integrate_adaptive([&](double rho) { return bump.value(rho) * std::pow(rho, n - 1); }, 0.0, bump.radius,
                         1e-13 * bump.c)
          .value;
  const double m = rep.volume_omega - 2.0 * kap * std::pow(cfg.r, n);
  rep.mass_defect = int_uhat - omega * int_phi - m;
  return rep;
}

double l1_distance_to_limit(const RecoveryConfig& cfg, double eps) {
  validate(cfg);
  for (double v : cfg.y0) {
    if (v != 0.0) throw DomainError("L1 distance is implemented for the centred sequence");
  }
  require_layer_inside(cfg, eps);
  const int n = cfg.n();
  const double integral = integrate_over_layer(*cfg.profile, [&](double t, double z, double) {
    const double sgn = t < 0.0 ? -1.0 : 1.0;
    return std::abs(z - sgn) * std::pow(cfg.r + eps * t, n - 1);
  });
  return n * cfg.norm->kappa() * eps * integral;
}

}  // namespace wulff
