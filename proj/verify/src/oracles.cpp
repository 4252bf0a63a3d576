#include "wulff/verify/oracles.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "wulff/errors.hpp"

namespace wulff::verify {

namespace {

using Rule = boost::math::quadrature::gauss<double, 10>;

template <typename F>
double composite(F f, double a, double b, std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    sum += Rule::integrate(f, lo, lo + h);
  }
  return sum;
}

double chord(const AnisotropicNorm& norm, double y, double x_max) {
  auto g = [&](double x) {
    const std::array<double, 2> p{x, y};
    return norm.polar(p);
  };
  // Phi°(., y) is convex: golden section for the minimiser, then bisection
  // outwards on each side.
  double lo = -x_max, hi = x_max;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * x_max; ++it) {
    const double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (g(m1) < g(m2)) hi = m2;
    else lo = m1;
  }
  const double xc = 0.5 * (lo + hi);
  if (g(xc) >= 1.0) return 0.0;
  auto edge = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      if (g(mid) < 1.0) inside = mid;
      else outside = mid;
    }
    return 0.5 * (inside + outside);
  };
  return edge(xc, 2.0 * x_max) - edge(xc, -2.0 * x_max);
}

}  // namespace

WellConstants composite_well_constants(const DoubleWell& well, std::size_t panels) {
  const double beta = well.beta(), a = well.a();
  const double k = 2.0 / (2.0 - beta);
  // s = 1 - u^k on the window s in [1 - a, 1], u in [0, a^{1/k}], where
  // W = (1 - s)^beta = u^{k beta}.
  const double u_max = std::pow(a, 1.0 / k);
  auto window = [&](double u, double power) {
    const double d = std::pow(u, k);
    return std::pow(std::pow(d, beta), power) * k * std::pow(u, k - 1.0);
  };
  WellConstants out;
  const double root_bridge = composite([&](double s) { return std::sqrt(well(s)); }, 0.0, 1.0 - a, panels);
  const double root_window = composite([&](double u) { return window(u, 0.5); }, 0.0, u_max, panels);
  out.c_w = 4.0 * (root_bridge + root_window);
  const double inv_bridge = composite([&](double s) { return 1.0 / std::sqrt(well(s)); }, 0.0, 1.0 - a, panels);
  const double inv_window = composite([&](double u) { return window(u, -0.5); }, 0.0, u_max, panels);
  out.tau_w = inv_bridge + inv_window;
  return out;
}

double chord_volume_unit_ball(const AnisotropicNorm& norm, std::size_t rows) {
  if (norm.dim() != 2) throw DomainError("chord volume is two-dimensional");
  const std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};
  // The unit Wulff ball's extent along e_i is its support function Phi(e_i).
  const double x_max = norm(e1), y_max = norm(e2);
  const double h = 2.0 * y_max / static_cast<double>(rows);
  double area = 0.0;
  for (std::size_t j = 0; j < rows; ++j) {
    const double y = -y_max + (static_cast<double>(j) + 0.5) * h;
    area += chord(norm, y, x_max) * h;
  }
  return area;
}

double polygon_perimeter(const AnisotropicNorm& norm, double r, std::size_t vertices) {
  if (norm.dim() != 2) throw DomainError("polygon perimeter is two-dimensional");
  std::vector<std::array<double, 2>> pts(vertices);
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < vertices; ++k) {
    const double th = 2.0 * pi * (static_cast<double>(k) + 0.5) / static_cast<double>(vertices);
    const std::array<double, 2> d{std::cos(th), std::sin(th)};
    const double s = r / norm.polar(d);
    pts[k] = {s * d[0], s * d[1]};
  }
  double total = 0.0;
  for (std::size_t k = 0; k < vertices; ++k) {
    const auto& p = pts[k];
    const auto& q = pts[(k + 1) % vertices];
    // Counter-clockwise traversal: the outward normal of edge q - p is its
    // clockwise rotation, and Phi(|e| nu) = |e| Phi(nu).
    const std::array<double, 2> nu{q[1] - p[1], -(q[0] - p[0])};
    total += norm(nu);
  }
  return total;
}

double grid_recovery_energy(const AnisotropicNorm& norm, const OptimalProfile& profile, double R, double r,
                            double eps, std::size_t cells) {
  if (norm.dim() != 2) throw DomainError("grid recovery energy is two-dimensional");
  const std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};
  const double L = R * std::max(norm(e1), norm(e2));
  const std::size_t nodes = cells + 1;
  const double h = 2.0 * L / static_cast<double>(cells);
  std::vector<double> u(nodes * nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    for (std::size_t i = 0; i < nodes; ++i) {
      const std::array<double, 2> x{-L + h * static_cast<double>(i), -L + h * static_cast<double>(j)};
      const double rho = norm.polar(x);
      u[j * nodes + i] = rho >= R ? 1.0 : profile((rho - r) / eps);
    }
  }
  const DoubleWell& w = profile.well();
  const double g = 0.5 / std::sqrt(3.0);
  const std::array<double, 2> gp{0.5 - g, 0.5 + g};
  double total = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    for (std::size_t i = 0; i < cells; ++i) {
      const double u00 = u[j * nodes + i], u10 = u[j * nodes + i + 1];
      const double u01 = u[(j + 1) * nodes + i], u11 = u[(j + 1) * nodes + i + 1];
      if (u00 == 1.0 && u10 == 1.0 && u01 == 1.0 && u11 == 1.0) continue;
      for (double s : gp) {
        for (double t : gp) {
          const double val = (1 - s) * (1 - t) * u00 + s * (1 - t) * u10 + (1 - s) * t * u01 + s * t * u11;
          const std::array<double, 2> grad{((1 - t) * (u10 - u00) + t * (u11 - u01)) / h,
                                           ((1 - s) * (u01 - u00) + s * (u11 - u10)) / h};
          const double phi = norm(grad);
          total += 0.25 * h * h * (w(val) / eps + eps * phi * phi);
        }
      }
    }
  }
  return total;
}

}  // namespace wulff::verify
