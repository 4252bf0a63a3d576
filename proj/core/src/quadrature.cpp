#include "wulff/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wulff/errors.hpp"

namespace wulff {

namespace {

QuadratureRule build_gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_gauss_legendre(n));
  return *slot;
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b,
                       const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, unsigned max_depth) {
  AdaptiveResult out;
  if (a == b) return out;
  using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  double l1 = 0.0;
  gk::integrate(f, a, b, 5, 1e-6, &out.error, &l1);
  // Boost's termination test is relative to the L1 norm; convert the absolute target.
  const double rel = std::clamp(0.1 * abs_tol / std::max(l1, 1e-300), 1e-14, 1e-6);
  out.value = gk::integrate(f, a, b, max_depth, rel, &out.error, &l1);
  // An error estimate at the round-off floor of the L1 norm counts as converged.
  const bool ok = out.error <= abs_tol || out.error <= 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!ok || !std::isfinite(out.value)) {
    throw NumericalError("adaptive quadrature did not reach tolerance", out.value);
  }
  return out;
}

}  // namespace wulff
