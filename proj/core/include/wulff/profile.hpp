#pragma once

// Optimal transition profile z' = sqrt(W(z)), z(0) = 0, built by inverting
// t(z) = int_0^z ds / sqrt(W(s)).

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "wulff/potential.hpp"

namespace wulff {

class OptimalProfile {
 public:
  const DoubleWell& well() const { return well_; }
  double tau() const { return tau_; }
  double c_w() const { return c_w_; }
  /// Time at which z leaves the bridge: z(t_bridge) = 1 - a.
  double t_bridge() const { return t_bridge_; }

  /// z(t); odd, saturated at +-1 for |t| >= tau.
  double operator()(double t) const;
  /// z'(t) = sqrt(W(z(t))).
  double slope(double t) const;
  /// Derivative of the interpolant itself (differs from slope() by the
  /// interpolation error on the bridge).
  double interpolant_slope(double t) const;
  /// Inverse map t(z) for z in (-1, 1), by quadrature.
  double time_of(double z) const;

  /// Nodes of the half table on [0, tau]; the full table is its odd extension.
  const std::vector<double>& table_t() const { return t_; }
  const std::vector<double>& table_z() const { return z_; }
  /// All 2 N + 1 nodes on [-tau, tau] as (t, z, z') rows.
  std::vector<std::array<double, 3>> full_table() const;

 private:
  friend OptimalProfile build_profile(const DoubleWell& well, std::size_t half_intervals);
  explicit OptimalProfile(const DoubleWell& well) : well_(well) {}

  double eval_positive(double t, double* deriv) const;

  DoubleWell well_;
  double tau_ = 0.0;
  double c_w_ = 0.0;
  double t_bridge_ = 0.0;
  std::size_t bridge_intervals_ = 0;
  std::vector<double> t_;
  std::vector<double> z_;
};

/// Table of 2 * half_intervals + 1 nodes: on each half, half_intervals / 2 uniform
/// in z across the bridge and half_intervals / 2 uniform in the regularizing
/// variable u = (1 - z)^{(2 - beta)/2} across the power window.
OptimalProfile build_profile(const DoubleWell& well, std::size_t half_intervals = 2048);

/// int_{-b}^{b} (W(z) + z'^2) dt, evaluated as int 2 W(z(t)) dt.
double profile_energy(const OptimalProfile& p, double b);

struct Equipartition {
  double potential = 0.0;  // int W(z) dt
  double gradient = 0.0;   // int |z'|^2 dt with z' from the interpolant
};
Equipartition equipartition(const OptimalProfile& p);

/// max |interpolant_slope(t) - sqrt(W(z(t)))| over `samples` interior points.
double ode_residual(const OptimalProfile& p, std::size_t samples = 4096);

/// int_{-tau}^{tau} f(t, z(t), z'(t)) dt by Gauss-Legendre on every table interval.
double integrate_over_layer(const OptimalProfile& p,
                            const std::function<double(double, double, double)>& f);

/// int (W(z) + z'^2) t^k dt over the support; k = 1 vanishes by symmetry.
double profile_energy_moment(const OptimalProfile& p, int k);

struct MinimalityReport {
  double minimum = 0.0;
  double sup_distance = 0.0;
  std::size_t iterations = 0;
  std::vector<double> t;
  std::vector<double> w;
};

/// Independent P1 minimization of int_{-b}^{b} (W(w) + w'^2) with w(0) = 0 and
/// free endpoints on grid_size uniform intervals.
MinimalityReport verify_profile_minimality(const OptimalProfile& p, double b, std::size_t grid_size);

/// Same minimization for an arbitrary potential given with W, W', W''.
MinimalityReport minimize_transition(const std::function<double(double)>& w,
                                     const std::function<double(double)>& w_prime,
                                     const std::function<double(double)>& w_second, double b,
                                     std::size_t grid_size);

}  // namespace wulff
