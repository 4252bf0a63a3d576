#include <cmath>

#include "doctest.h"
#include "wulff/verify/oracles.hpp"

using namespace wulff;

TEST_CASE("chord volume of simple balls") {
  const double pi = std::acos(-1.0);
  CHECK(verify::chord_volume_unit_ball(AnisotropicNorm::euclidean(2)) == doctest::Approx(pi).epsilon(1e-5));
  CHECK(verify::chord_volume_unit_ball(AnisotropicNorm::weighted_p(INFINITY, {1.0, 1.0})) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("polygon perimeter of the disc") {
  const double pi = std::acos(-1.0);
  CHECK(verify::polygon_perimeter(AnisotropicNorm::euclidean(2), 1.0) == doctest::Approx(2.0 * pi).epsilon(1e-7));
}

TEST_CASE("well constants with a constant bridge") {
  const auto w = DoubleWell::with_constant_bridge(1.5, 0.5, 0.25);
  const auto k = verify::composite_well_constants(w, 2000);
  CHECK(k.c_w == doctest::Approx(2.0 * 1.0 * 0.5 + 8.0 / 3.5 * std::pow(0.5, 1.75)).epsilon(1e-10));
  CHECK(k.tau_w == doctest::Approx(0.5 / 0.5 + std::pow(0.5, 0.25) / 0.25).epsilon(1e-10));
}

TEST_CASE("grid energy of the recovery profile approaches the perimeter") {
  const auto e = AnisotropicNorm::euclidean(2);
  const auto p = build_profile(DoubleWell(1.5, 0.5), 1024);
  const double E = verify::grid_recovery_energy(e, p, 1.0, 0.5, 0.05, 512);
  CHECK(E == doctest::Approx(p.c_w() * wulff_perimeter(e, 0.5)).epsilon(2e-2));
}
