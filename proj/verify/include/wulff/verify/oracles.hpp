#pragma once

// Reference computations that share no code path with the core quadratures.

#include <cstddef>

#include "wulff/anisotropy.hpp"
#include "wulff/potential.hpp"
#include "wulff/profile.hpp"

namespace wulff::verify {

struct WellConstants {
  double c_w = 0.0;
  double tau_w = 0.0;
};

/// Composite 10-point Gauss-Legendre on `panels` panels per piece. The power
/// window is mapped by u = (1 - s)^{(2 - beta)/2}, which makes the tau_W
/// integrand constant there and the c_W integrand smooth.
WellConstants composite_well_constants(const DoubleWell& well, std::size_t panels = 10000);

/// Area of {Phi° < 1} (n = 2) from exact chord lengths on `rows` midpoint rows.
double chord_volume_unit_ball(const AnisotropicNorm& norm, std::size_t rows = 4096);

/// Phi-perimeter of the polygon inscribed in {Phi° = r} (n = 2), edges
/// weighted by Phi of their outward normals.
double polygon_perimeter(const AnisotropicNorm& norm, double r, std::size_t vertices = std::size_t{1} << 14);

/// E_eps(u_hat) = int W(u)/eps + eps Phi^2(grad u) for the centred recovery
/// profile u = z((Phi°(x) - r)/eps), on a cells x cells bilinear mesh with 2x2
/// Gauss points; u = 1 outside Omega.
double grid_recovery_energy(const AnisotropicNorm& norm, const OptimalProfile& profile, double R, double r,
                            double eps, std::size_t cells = 1024);

}  // namespace wulff::verify
