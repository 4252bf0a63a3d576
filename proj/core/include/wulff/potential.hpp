#pragma once

// Double-well potentials with degenerate power-law wells.

#include <string>

namespace wulff {

enum class BridgeKind { even_poly, constant };

/// W(s) = ||s| - 1|^beta for |s| >= 1 - a, bridged on |s| < 1 - a.
///
/// The even_poly bridge is b(s) = c0 + c2 s^4 + c3 s^6, fixed by matching
/// value, slope and curvature of the power branch at |s| = 1 - a; b'(0) = 0 by
/// construction. The constant bridge is a test well with W = mu on the bridge
/// interval and is not C^1 at the seams.
class DoubleWell {
 public:
  DoubleWell(double beta, double a);
  static DoubleWell with_constant_bridge(double beta, double a, double mu);

  double beta() const { return beta_; }
  double a() const { return a_; }
  BridgeKind bridge() const { return bridge_; }
  /// Minimum of the bridge on [-1 + a, 1 - a].
  double mu() const { return mu_; }
  double c0() const { return c0_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }

  double operator()(double s) const;
  double prime(double s) const;
  /// W''; +infinity at s = +-1 where beta < 2.
  double second(double s) const;

  std::string describe() const;

 private:
  DoubleWell() = default;

  double beta_ = 1.5;
  double a_ = 0.5;
  BridgeKind bridge_ = BridgeKind::even_poly;
  double c0_ = 0.0;
  double c2_ = 0.0;
  double c3_ = 0.0;
  double mu_ = 0.0;
};

double eval_w(const DoubleWell& well, double s);
double eval_w_prime(const DoubleWell& well, double s);

/// c_W = 2 int_{-1}^{1} sqrt(W(s)) ds.
double c_w(const DoubleWell& well, double abs_tol = 1e-10);

/// tau_W = int_0^1 ds / sqrt(W(s)); finite because beta < 2.
double tau_w(const DoubleWell& well, double abs_tol = 1e-10);

/// int_0^{1-a} ds / sqrt(W(s)): the time the profile spends on the bridge.
double bridge_time(const DoubleWell& well, double abs_tol = 1e-10);

}  // namespace wulff
