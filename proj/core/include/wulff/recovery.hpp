#pragma once

// Recovery sequence u_hat(x) = z((Phi°(x - eps gamma y0) - r) / eps) on the
// Wulff ball Omega = B_R(0), corrected by a bump to restore the mass exactly.

#include <memory>
#include <vector>

#include "wulff/anisotropy.hpp"
#include "wulff/profile.hpp"

namespace wulff {

struct RecoveryConfig {
  std::shared_ptr<const AnisotropicNorm> norm;
  std::shared_ptr<const OptimalProfile> profile;
  double R = 1.0;
  double r = 0.5;
  /// Enlarged-ball centre; x0 is the origin.
  std::vector<double> y0;
  /// Enlargement gap; <= 0 selects (R - r) / 2.
  double delta = 0.0;

  int n() const { return norm->dim(); }
  double gap() const { return delta > 0.0 ? delta : 0.5 * (R - r); }
  double gamma() const { return profile->tau() / gap(); }
  /// Centre of u_hat at this eps.
  std::vector<double> center(double eps) const;
};

/// Validates dimensions, 0 < r < R, and Phi°(y0) <= delta.
void validate(const RecoveryConfig& cfg);

/// Radial bump phi(x) = c psi(2 Phi°(x) / r), psi(s) = exp(-1 / (1 - s^2)).
struct Bump {
  double radius = 0.0;  // r / 2
  double c = 0.0;       // normalization: int phi = 1
  double value(double rho) const;
  double slope(double rho) const;
};
Bump make_bump(const RecoveryConfig& cfg);

double mass_error(const RecoveryConfig& cfg, double eps);
double recovery_energy(const RecoveryConfig& cfg, double eps);

struct RecoveryResult {
  double eps = 0.0;
  double omega = 0.0;
  double omega_over_eps2 = 0.0;
  double energy_hat = 0.0;
  double energy_corr = 0.0;
  double energy_total = 0.0;
  double limsup_quotient = 0.0;
  /// |omega|^beta / eps int phi^beta + C_Phi^2 eps omega^2 int |grad phi|^2.
  double majorant = 0.0;
  /// The majorant uses W(-1 - s) = |s|^beta, valid while |omega| max phi <= a.
  bool majorant_valid = false;
};

RecoveryResult corrected_energy(const RecoveryConfig& cfg, double eps);

struct FeasibilityReport {
  bool inclusion = false;
  double inclusion_margin = 0.0;  // min over samples of (radius - Phi°(x - centre))
  bool boundary = false;          // u_hat = 1 on a neighbourhood of the boundary
  bool support = false;           // supp phi inside {u_hat = -1}
  double mass_defect = 0.0;       // int u_eps - m by rho-quadrature
  double volume_omega = 0.0;
};

FeasibilityReport feasibility_check(const RecoveryConfig& cfg, double eps);

/// || u_hat - u_0 ||_{L^1} for the centred sequence (y0 = 0).
double l1_distance_to_limit(const RecoveryConfig& cfg, double eps);

}  // namespace wulff
