#pragma once

// Grid-based convex (Phi°-radial) decreasing rearrangement in two dimensions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wulff/anisotropy.hpp"
#include "wulff/potential.hpp"

namespace wulff {

/// Nonnegative nodal field on a square cell-centred grid covering
/// Omega = B_R(0) of the polar gauge; values vanish outside Omega.
struct GridField {
  std::size_t size = 0;  // nodes per side
  double half_width = 0.0;
  double R = 0.0;
  std::vector<double> values;  // row-major, index j * size + i

  double h() const { return 2.0 * half_width / static_cast<double>(size); }
  double coord(std::size_t i) const { return -half_width + (static_cast<double>(i) + 0.5) * h(); }
  double at(std::size_t i, std::size_t j) const { return values[j * size + i]; }
};

/// Samples f on the grid; nodes with Phi°(x) >= R are set to 0. Throws
/// DomainError if f is negative inside Omega.
GridField make_grid_field(const AnisotropicNorm& norm, double R, std::size_t size,
                          const std::function<double(double, double)>& f);

/// Sum of seeded Gaussian bumps times the C^1 cutoff (1 - (Phi°/R)^2)_+^2.
GridField make_random_field(const AnisotropicNorm& norm, double R, std::size_t size, std::uint64_t seed);

/// Superlevel areas |{v > t}| by cell counting.
std::vector<double> distribution(const GridField& field, const std::vector<double>& levels);

struct RadialProfile {
  double kappa = 0.0;
  std::vector<double> rho;    // increasing
  std::vector<double> value;  // nonincreasing
  /// Piecewise-linear v_bar(rho); v_bar(0) = max, 0 beyond the last radius.
  double operator()(double r) const;
  /// kappa rho_t^2 with rho_t = sup {rho : v_bar(rho) > t}.
  double superlevel_area(double t) const;
};

/// Value of rank k (descending) is placed at kappa rho_k^2 = (k + 1/2) h^2.
RadialProfile convex_rearrange(const GridField& field, const AnisotropicNorm& norm);

struct PolyaSzegoReport {
  /// int Phi^2(grad v) with central differences.
  double energy_original = 0.0;
  /// Exact int Phi^2(grad v) of the piecewise-linear interpolant on the
  /// triangulated grid.
  double energy_original_pl = 0.0;
  /// int Phi^2(grad v*) = 4 kappa int mu / |mu'| dt, mu the exact superlevel
  /// area of the piecewise-linear interpolant.
  double energy_rearranged = 0.0;
  double w_integral_original = 0.0;    // nodal sum of W(1 - v) h^2
  double w_integral_rearranged = 0.0;  // int W(1 - t) |d mu(t)|
  double w_gap = 0.0;                  // relative
};

PolyaSzegoReport check_polya_szego(const GridField& field, const AnisotropicNorm& norm, const DoubleWell& well);

struct EquimeasurabilityReport {
  std::vector<double> levels;
  std::vector<double> area_in;
  std::vector<double> area_out;
  std::vector<double> tolerance;  // 2 h times the Euclidean perimeter of the Wulff ball of equal area
  bool pass = false;
};

EquimeasurabilityReport check_equimeasurability(const GridField& field, const RadialProfile& profile,
                                                const AnisotropicNorm& norm, std::size_t levels = 50);

}  // namespace wulff
