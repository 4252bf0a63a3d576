#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace wulff {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached per n, thread-safe.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Fixed rule mapped to [a, b].
double integrate_fixed(const std::function<double(double)>& f, double a, double b,
                       const QuadratureRule& rule);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (G30/K61) to absolute tolerance; throws NumericalError
/// with the achieved estimate when the tolerance is not met.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, unsigned max_depth = 15);

}  // namespace wulff
