#include "wulff/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

void check_params(double beta, double a) {
  if (!(beta > 1.0 && beta < 2.0)) throw ConfigError("well exponent beta must lie in (1, 2)");
  if (!(a > 0.0 && a < 1.0)) throw ConfigError("window half-width a must lie in (0, 1)");
}

}  // namespace

DoubleWell::DoubleWell(double beta, double a) : beta_(beta), a_(a) {
  check_params(beta, a);
  const double s0 = 1.0 - a;
  const double w1 = -beta * std::pow(a, beta - 1.0);
  const double w2 = beta * (beta - 1.0) * std::pow(a, beta - 2.0);
  // 4 c2 s0^3 + 6 c3 s0^5 = w1,  12 c2 s0^2 + 30 c3 s0^4 = w2
  const double m11 = 4.0 * std::pow(s0, 3), m12 = 6.0 * std::pow(s0, 5);
  const double m21 = 12.0 * s0 * s0, m22 = 30.0 * std::pow(s0, 4);
  const double det = m11 * m22 - m12 * m21;
  c2_ = (w1 * m22 - m12 * w2) / det;
  c3_ = (m11 * w2 - m21 * w1) / det;
  c0_ = std::pow(a, beta) - c2_ * std::pow(s0, 4) - c3_ * std::pow(s0, 6);

  auto b = [this](double s) {
    const double s2 = s * s;
    return c0_ + s2 * s2 * (c2_ + c3_ * s2);
  };
  mu_ = std::min(b(0.0), b(s0));
  if (c3_ != 0.0) {
    const double crit = -2.0 * c2_ / (3.0 * c3_);
    if (crit > 0.0 && crit < s0 * s0) mu_ = std::min(mu_, b(std::sqrt(crit)));
  }
  if (!(mu_ > 0.0)) throw ConfigError("bridge polynomial is not positive; choose another (beta, a)");
}

DoubleWell DoubleWell::with_constant_bridge(double beta, double a, double mu) {
  check_params(beta, a);
  if (!(mu > 0.0)) throw ConfigError("constant bridge level must be positive");
  DoubleWell w;
  w.beta_ = beta;
  w.a_ = a;
  w.bridge_ = BridgeKind::constant;
  w.c0_ = mu;
  w.mu_ = mu;
  return w;
}

double DoubleWell::operator()(double s) const {
  const double x = std::abs(s);
  if (x >= 1.0 - a_) return std::pow(std::abs(x - 1.0), beta_);
  if (bridge_ == BridgeKind::constant) return c0_;
  const double x2 = x * x;
  return c0_ + x2 * x2 * (c2_ + c3_ * x2);
}

double DoubleWell::prime(double s) const {
  const double x = std::abs(s);
  const double sgn = s < 0.0 ? -1.0 : 1.0;
  if (x >= 1.0 - a_) {
    const double d = x - 1.0;
    if (d == 0.0) return 0.0;
    const double g = beta_ * std::pow(std::abs(d), beta_ - 1.0);
    return sgn * (d > 0.0 ? g : -g);
  }
  if (bridge_ == BridgeKind::constant) return 0.0;
  const double x2 = x * x;
  return sgn * x * x2 * (4.0 * c2_ + 6.0 * c3_ * x2);
}

double DoubleWell::second(double s) const {
  const double x = std::abs(s);
  if (x >= 1.0 - a_) {
    const double d = std::abs(x - 1.0);
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    return beta_ * (beta_ - 1.0) * std::pow(d, beta_ - 2.0);
  }
  if (bridge_ == BridgeKind::constant) return 0.0;
  const double x2 = x * x;
  return x2 * (12.0 * c2_ + 30.0 * c3_ * x2);
}

std::string DoubleWell::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << "beta=" << beta_ << " a=" << a_ << " bridge="
     << (bridge_ == BridgeKind::even_poly ? "even-poly" : "constant") << " mu=" << mu_;
  return os.str();
}

double eval_w(const DoubleWell& well, double s) { return well(s); }

double eval_w_prime(const DoubleWell& well, double s) { return well.prime(s); }

double c_w(const DoubleWell& well, double abs_tol) {
  const double s0 = 1.0 - well.a();
  const double beta = well.beta();
  const double bridge =
      integrate_adaptive([&](double s) { return std::sqrt(well(s)); }, 0.0, s0, abs_tol / 8.0).value;
  const double window = 2.0 / (2.0 + beta) * std::pow(well.a(), 0.5 * (2.0 + beta));
  return 4.0 * (bridge + window);
}

double bridge_time(const DoubleWell& well, double abs_tol) {
  return integrate_adaptive([&](double s) { return 1.0 / std::sqrt(well(s)); }, 0.0, 1.0 - well.a(),
                            abs_tol / 2.0)
      .value;
}

double tau_w(const DoubleWell& well, double abs_tol) {
  const double beta = well.beta();
  if (!(beta < 2.0)) throw DomainError("tau_W is infinite for beta >= 2");
  // u = (1 - s)^{(2 - beta)/2} turns the window integral into a constant integrand.
  const double window = std::pow(well.a(), 1.0 - 0.5 * beta) / (1.0 - 0.5 * beta);
  return bridge_time(well, abs_tol) + window;
}

}  // namespace wulff
