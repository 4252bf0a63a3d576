#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "wulff/errors.hpp"
#include "wulff/rearrangement.hpp"

using namespace wulff;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("zero field") {
  const auto e = AnisotropicNorm::euclidean(2);
  const auto f = make_grid_field(e, 1.0, 64, [](double, double) { return 0.0; });
  const auto prof = convex_rearrange(f, e);
  for (double v : prof.value) REQUIRE(v == 0.0);
  const auto ps = check_polya_szego(f, e, DoubleWell(1.5, 0.5));
  CHECK(ps.energy_original == 0.0);
  CHECK(ps.energy_rearranged == 0.0);
}

TEST_CASE("indicator of a Wulff ball") {
  const auto norm = AnisotropicNorm::weighted_p(1.0, {1.0, 1.0});
  const auto f = make_grid_field(norm, 1.0, 256, [&](double x, double y) {
    const std::array<double, 2> p{x, y};
    return norm.polar(p) < 0.5 ? 1.0 : 0.0;
  });
  const double area = distribution(f, {0.5})[0];
  const double h = f.h();
  CHECK(std::abs(area - norm.kappa() * 0.25) <= 2.0 * h * euclidean_perimeter_unit_ball(norm) * 0.5);
  const auto prof = convex_rearrange(f, norm);
  CHECK(prof.superlevel_area(0.5) == doctest::Approx(area).epsilon(1e-2));
}

TEST_CASE("radial field keeps its energy") {
  const auto e = AnisotropicNorm::euclidean(2);
  const auto f = make_grid_field(e, 1.0, 256, [](double x, double y) {
    const double s = x * x + y * y;
    return s < 1.0 ? (1.0 - s) * (1.0 - s) : 0.0;
  });
  const auto ps = check_polya_szego(f, e, DoubleWell(1.5, 0.5));
  CHECK(ps.energy_original_pl == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-2));
  CHECK(ps.energy_rearranged == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-2));
  CHECK(ps.energy_rearranged <= ps.energy_original_pl * (1.0 + 1e-3));
  CHECK(ps.energy_rearranged <= ps.energy_original_pl);
  CHECK(ps.w_gap <= 1e-4);
}

TEST_CASE("off-centre bump loses energy") {
  const auto norm = AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0});
  const auto f = make_grid_field(norm, 1.0, 256, [&](double x, double y) {
    const std::array<double, 2> p{x, y};
    const double s = norm.polar(p);
    const double cut = s < 1.0 ? (1.0 - s * s) * (1.0 - s * s) : 0.0;
    return cut * std::exp(-20.0 * ((x - 0.3) * (x - 0.3) + y * y));
  });
  const auto ps = check_polya_szego(f, norm, DoubleWell(1.5, 0.5));
  CHECK(ps.energy_rearranged < ps.energy_original_pl);
  CHECK(check_equimeasurability(f, convex_rearrange(f, norm), norm).pass);
}

TEST_CASE("rearranged values are the sorted grid values") {
  const auto e = AnisotropicNorm::euclidean(2);
  const auto f = make_grid_field(e, 1.0, 128, [](double x, double y) {
    const double s = x * x + y * y;
    const double cut = s < 1.0 ? (1.0 - s) * (1.0 - s) : 0.0;
    return cut * (std::exp(-30.0 * ((x - 0.4) * (x - 0.4) + y * y)) + 0.5 * std::exp(-30.0 * ((x + 0.3) * (x + 0.3) + (y - 0.2) * (y - 0.2))));
  });
  std::vector<double> sorted;
  for (double v : f.values) if (v > 0.0) sorted.push_back(v);
  std::sort(sorted.rbegin(), sorted.rend());
  const auto prof = convex_rearrange(f, e);
  REQUIRE(prof.value.size() >= sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) REQUIRE(prof.value[k] == sorted[k]);
}

TEST_CASE("random fields rearrange to monotone profiles") {
  const auto norm = AnisotropicNorm::weighted_p(3.0, {1.0, 2.0});
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto f = make_random_field(norm, 1.0, 128, seed);
    const auto prof = convex_rearrange(f, norm);
    for (std::size_t k = 1; k < prof.rho.size(); ++k) {
      REQUIRE(prof.rho[k] > prof.rho[k - 1]);
      REQUIRE(prof.value[k] <= prof.value[k - 1]);
    }
    CHECK(check_equimeasurability(f, prof, norm).pass);
    const auto ps = check_polya_szego(f, norm, DoubleWell(1.5, 0.5));
    CHECK(ps.energy_rearranged <= ps.energy_original_pl * (1.0 + 1e-3));
  }
}

TEST_CASE("invalid fields") {
  const auto e = AnisotropicNorm::euclidean(2);
  CHECK_THROWS_AS(make_grid_field(e, 1.0, 4, [](double, double) { return 0.0; }), DomainError);
  CHECK_THROWS_AS(make_grid_field(e, 1.0, 32, [](double, double) { return -1.0; }), DomainError);
  CHECK_THROWS_AS(make_random_field(AnisotropicNorm::euclidean(3), 1.0, 32, 1), DomainError);
}
