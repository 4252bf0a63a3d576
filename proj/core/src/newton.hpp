#pragma once

// Box-constrained projected Newton for energies whose Hessian is tridiagonal
// plus an optional rank-one term sigma * u u^T.

#include <cstddef>
#include <functional>
#include <vector>

namespace wulff::detail {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i + 1
};

/// Solves T x = b in place of b; returns false when a pivot vanishes.
bool solve_tridiagonal(const Tridiagonal& t, std::vector<double>& b);

struct BoxProblem {
  std::size_t size = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  /// Convergence is measured on |projected gradient_i| / scale_i.
  std::vector<double> scale;
  std::function<double(const std::vector<double>&)> energy;
  std::function<void(const std::vector<double>&, std::vector<double>&)> gradient;
  /// Fills the tridiagonal part and, optionally, u and sigma of the rank-one part.
  std::function<void(const std::vector<double>&, Tridiagonal&, std::vector<double>& u, double& sigma)>
      hessian;
};

struct BoxResult {
  std::vector<double> x;
  std::size_t iterations = 0;
  double stationarity = 0.0;
  bool converged = false;
};

BoxResult minimize_box(const BoxProblem& problem, std::vector<double> x0, double tol,
                       std::size_t max_iterations);

}  // namespace wulff::detail
