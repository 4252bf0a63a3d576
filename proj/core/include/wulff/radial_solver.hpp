#pragma once

// Mass-constrained radial minimization of
//   G_eps(w) = int_0^R ((1/eps) W(w) + eps |w'|^2) rho^{n-1} d rho
// subject to n kappa int_0^R w rho^{n-1} d rho <= m and w(R) = 1, discretized
// with P1 elements and solved by an augmented Lagrangian with projected Newton
// inner iterations.

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "wulff/anisotropy.hpp"
#include "wulff/potential.hpp"
#include "wulff/profile.hpp"

namespace wulff {

struct RadialGridOptions {
  /// Half-width of the uniform layer around rho = r, in units of eps * tau_W.
  double layer_halfwidth = 8.0;
  /// Layer spacing is eps / points_per_eps.
  double points_per_eps = 64.0;
  /// Geometric growth of the spacing away from the layer.
  double growth = 1.08;
  double max_spacing = 0.02;
};

struct SolverOptions {
  double grad_tol = 1e-9;
  double el_tol = 1e-6;
  double kkt_tol = 1e-9;
  double mass_tol = 1e-10;
  double penalty = 1e3;
  std::size_t max_outer = 60;
  std::size_t max_inner = 400;
};

struct RadialProblem {
  std::shared_ptr<const OptimalProfile> profile;
  int n = 2;
  double kappa = 0.0;
  double R = 1.0;
  double r = 0.5;
  double m = 0.0;
  double eps = 0.05;
  std::vector<double> rho;
  /// Lumped weights int phi_i rho^{n-1} d rho.
  std::vector<double> mass;
  /// int_e rho^{n-1} d rho / h_e^2 per element.
  std::vector<double> stiffness;
  /// (R^n - 2 r^n) / n: the constraint bound m / (n kappa).
  double bound = 0.0;
  /// True when 8 eps tau_W < min(r, R - r) fails; the solve proceeds anyway.
  bool layer_clipped = false;

  const DoubleWell& well() const { return profile->well(); }
  std::size_t size() const { return rho.size(); }
  double t_of(std::size_t i) const { return (rho[i] - r) / eps; }
};

/// Builds the graded grid on [0, R] (rho = 0 is a node) and the exact P1 weights.
RadialProblem make_radial_problem(std::shared_ptr<const OptimalProfile> profile,
                                  const AnisotropicNorm& norm, double R, double r, double eps,
                                  const RadialGridOptions& grid = {});

struct RadialSolveResult {
  std::vector<double> w;
  std::vector<double> el_defect;  // |dG_i / M_i + lambda| per node, 0 where w_i = 1
  double lambda = 0.0;
  double delta = 0.0;
  double eps_delta = 0.0;
  bool multiple_crossings = false;
  double energy_G = 0.0;
  double energy_H = 0.0;
  double el_residual = 0.0;
  double constraint_slack = 0.0;
  double complementarity = 0.0;
  double stationarity = 0.0;
  double min_w = 0.0;
  double monotonicity_violation = 0.0;
  std::size_t iterations = 0;
  std::size_t outer_iterations = 0;
  bool converged = false;
};

double energy_G(const RadialProblem& problem, const std::vector<double>& w);

/// H_eps(w) = int (W(w) + |w'|^2) (r + eps t)^{n-1} dt for nodal values w on
/// the rescaled nodes t_i = (rho_i - r) / eps, with its own P1 weights.
double energy_H(const RadialProblem& problem, const std::vector<double>& w);

/// Continuum H_eps of the shifted profile: int (W(z) + z'^2)(r + eps t)^{n-1} dt.
double energy_H_profile(const OptimalProfile& profile, int n, double r, double eps);

/// Nodal samples of z((rho - r) / eps).
std::vector<double> shifted_profile(const RadialProblem& problem);

RadialSolveResult minimize(const RadialProblem& problem, const SolverOptions& options = {});

struct ZeroCrossing {
  double delta = 0.0;
  bool multiple = false;
};

/// Sign change of w in the t variable nearest t = 0, by linear interpolation.
ZeroCrossing zero_crossing(const RadialProblem& problem, const std::vector<double>& w);

/// (energy_H - c_W r^{n-1}) / eps.
double excess(const RadialProblem& problem, double energy_h);
double excess(const RadialProblem& problem, const RadialSolveResult& result);

struct EndpointDiagnostics {
  std::array<double, 3> k{1.0, 2.0, 4.0};
  /// w(delta - tau_W - K eps) + 1
  std::array<double, 3> lower{};
  /// 1 - w(delta + tau_W + K eps)
  std::array<double, 3> upper{};
};

EndpointDiagnostics diagnostics_endpoint_layers(const RadialProblem& problem,
                                                const std::vector<double>& w, double delta);

/// Linear interpolation of nodal values at rescaled position t.
double sample_t(const RadialProblem& problem, const std::vector<double>& w, double t);

}  // namespace wulff
