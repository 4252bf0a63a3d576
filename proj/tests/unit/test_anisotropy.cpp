#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wulff/anisotropy.hpp"
#include "wulff/errors.hpp"
#include "wulff/verify/oracles.hpp"

using namespace wulff;

namespace {

const double pi = std::acos(-1.0);

std::vector<std::pair<const char*, AnisotropicNorm>> make_planar_norms() {
  std::vector<std::array<double, 2>> dirs;
  std::vector<double> vals;
  for (int k = 0; k < 360; ++k) {
    const double th = pi * k / 360.0;
    dirs.push_back({std::cos(th), std::sin(th)});
    vals.push_back(std::sqrt(1.5 * std::cos(th) * std::cos(th) + 0.7 * std::sin(th) * std::sin(th)));
  }
  return {
      {"euclidean", AnisotropicNorm::euclidean(2)},
      {"scaled", AnisotropicNorm::scaled_euclidean(2, 2.0)},
      {"l1", AnisotropicNorm::weighted_p(1.0, {1.0, 1.0})},
      {"linf", AnisotropicNorm::weighted_p(INFINITY, {1.0, 1.0})},
      {"p3", AnisotropicNorm::weighted_p(3.0, {1.0, 2.0})},
      {"ellipse", AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0})},
      {"sampled", AnisotropicNorm::sampled(dirs, vals)},
  };
}

const std::vector<std::pair<const char*, AnisotropicNorm>>& planar_norms() {
  static const auto norms = make_planar_norms();
  return norms;
}

}  // namespace

TEST_CASE("norm evaluation") {
  const std::array<double, 2> x{3.0, 4.0};
  CHECK(AnisotropicNorm::euclidean(2)(x) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(AnisotropicNorm::scaled_euclidean(2, 2.0)(x) == doctest::Approx(10.0).epsilon(1e-15));
  const std::array<double, 2> y{3.0, -4.0};
  CHECK(AnisotropicNorm::weighted_p(1.0, {1.0, 1.0})(y) == doctest::Approx(7.0).epsilon(1e-15));
  const std::array<double, 2> bad{NAN, 1.0};
  CHECK_THROWS_AS(AnisotropicNorm::euclidean(2)(bad), DomainError);
}

TEST_CASE("polar evaluation") {
  const std::array<double, 2> eta{3.0, 4.0};
  CHECK(AnisotropicNorm::euclidean(2).polar(eta) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(AnisotropicNorm::scaled_euclidean(2, 2.0).polar(eta) == doctest::Approx(2.5).epsilon(1e-15));
  const auto l1 = AnisotropicNorm::weighted_p(1.0, {1.0, 1.0});
  CHECK(l1.polar(eta) == doctest::Approx(4.0).epsilon(1e-15));
  // Mesh supremum against the closed form.
  CHECK(l1.polar_numeric(eta) == doctest::Approx(4.0).epsilon(1e-6));
  const auto ell = AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0});
  CHECK(ell.polar_numeric(eta) == doctest::Approx(ell.polar(eta)).epsilon(1e-6));
}

TEST_CASE("rejects invalid norms") {
  CHECK_THROWS_AS(AnisotropicNorm::scaled_euclidean(2, -1.0), ConfigError);
  CHECK_THROWS_AS(AnisotropicNorm::weighted_p(0.5, {1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(AnisotropicNorm::weighted_p(2.0, {1.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(AnisotropicNorm::ellipse(2, {1.0, 2.0, 2.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(AnisotropicNorm::ellipse(2, {1.0, 0.2, 0.3, 1.0}), ConfigError);
  CHECK_THROWS_AS(AnisotropicNorm::sampled({}, {}), ConfigError);
  // A star-shaped but non-convex table.
  std::vector<std::array<double, 2>> dirs;
  std::vector<double> vals;
  for (int k = 0; k < 16; ++k) {
    const double th = pi * k / 16.0;
    dirs.push_back({std::cos(th), std::sin(th)});
    vals.push_back(k % 2 ? 3.0 : 1.0);
  }
  CHECK_THROWS_AS(AnisotropicNorm::sampled(dirs, vals), ConfigError);
}

TEST_CASE("kappa") {
  CHECK(AnisotropicNorm::euclidean(2).kappa() == doctest::Approx(pi).epsilon(1e-14));
  CHECK(AnisotropicNorm::euclidean(3).kappa() == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-14));
  CHECK(AnisotropicNorm::weighted_p(1.0, {1.0, 1.0}).kappa() == doctest::Approx(4.0).epsilon(1e-12));
  for (const auto& [name, norm] : planar_norms()) {
    CAPTURE(name);
    const bool sampled = norm.kind() == NormKind::sampled;
    const double vol = verify::chord_volume_unit_ball(norm, sampled ? 512 : 4096);
    CHECK(std::abs(norm.kappa() - vol) / vol <= 1e-4);
  }
  // n = 3 ellipsoid: kappa = (4 pi / 3) sqrt(det Q).
  const auto ell3 = AnisotropicNorm::ellipse(3, {2.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.5});
  CHECK(ell3.kappa() == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-12));
}

TEST_CASE("sphere quadrature recovers kappa of analytic kinds") {
  for (const auto& [name, norm] : planar_norms()) {
    if (norm.kind() == NormKind::sampled) continue;
    CAPTURE(name);
    // Kinked polars only converge at second order.
    const bool smooth = norm.kind() != NormKind::weighted_p || norm.exponent() == 3.0;
    const double k = 0.5 * sphere_integral(2, [&](std::span<const double> th) {
      const double p = norm.polar(th);
      return 1.0 / (p * p);
    }, smooth ? 1e-12 : 1e-9);
    CHECK(k == doctest::Approx(norm.kappa()).epsilon(smooth ? 1e-8 : 1e-6));
  }
  const auto ell3 = AnisotropicNorm::ellipse(3, {2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 0.5});
  const double k3 = sphere_integral(3, [&](std::span<const double> th) { return std::pow(ell3.polar(th), -3.0) / 3.0; },
                                    1e-10);
  CHECK(k3 == doctest::Approx(ell3.kappa()).epsilon(1e-7));
}

TEST_CASE("Wulff perimeter") {
  CHECK(wulff_perimeter(AnisotropicNorm::euclidean(2), 0.5) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(wulff_perimeter(AnisotropicNorm::euclidean(3), 1.0) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  const auto l1 = AnisotropicNorm::weighted_p(1.0, {1.0, 1.0});
  CHECK(wulff_perimeter(l1, 1.0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(verify::polygon_perimeter(l1, 1.0) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK_THROWS_AS(wulff_perimeter(l1, 0.0), DomainError);
  for (const auto& [name, norm] : planar_norms()) {
    CAPTURE(name);
    CHECK(wulff_perimeter(norm, 0.7) == doctest::Approx(verify::polygon_perimeter(norm, 0.7)).epsilon(1e-6));
  }
}

TEST_CASE("radius from mass") {
  const auto e = AnisotropicNorm::euclidean(2);
  CHECK(radius_from_mass(e, pi, pi - 2.0 * pi * 0.25) == doctest::Approx(0.5).epsilon(1e-14));
  const auto l1 = AnisotropicNorm::weighted_p(1.0, {1.0, 1.0});
  CHECK(radius_from_mass(l1, 4.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(radius_from_mass(e, pi, pi * (1.0 - 1e-12)) < 1e-5);
  CHECK_THROWS_AS(radius_from_mass(e, pi, pi), ConstraintError);
  CHECK_THROWS_AS(radius_from_mass(e, pi, -pi), ConstraintError);
}

TEST_CASE("homogeneity, evenness, convexity and growth on random vectors") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (const auto& [name, norm] : planar_norms()) {
    CAPTURE(name);
    for (int k = 0; k < 1000; ++k) {
      const std::array<double, 2> x{g(rng), g(rng)}, y{g(rng), g(rng)};
      const std::array<double, 2> mx{-x[0], -x[1]}, x2{2 * x[0], 2 * x[1]}, mid{0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1])};
      const double fx = norm(x);
      REQUIRE(std::abs(norm(mx) - fx) <= 1e-12);
      REQUIRE(std::abs(norm(x2) - 2.0 * fx) <= 1e-12 * fx);
      REQUIRE(norm(mid) <= 0.5 * (fx + norm(y)) + 1e-9 * (fx + norm(y)));
      const double len = std::hypot(x[0], x[1]);
      REQUIRE(fx >= norm.growth_lower() * len * (1.0 - 1e-9));
      REQUIRE(fx <= norm.growth_upper() * len * (1.0 + 1e-9));
      const double px = norm.polar(x);
      REQUIRE(px >= len / norm.growth_upper() * (1.0 - 1e-9));
      REQUIRE(px <= len / norm.growth_lower() * (1.0 + 1e-9));
      // Duality pairing.
      REQUIRE(x[0] * y[0] + x[1] * y[1] <= norm(y) * px * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("bipolar round trip") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (const auto& [name, norm] : planar_norms()) {
    CAPTURE(name);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const std::array<double, 2> x{g(rng), g(rng)};
      worst = std::max(worst, std::abs(norm.bipolar_numeric(x) - norm(x)) / norm(x));
    }
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("polar gradient has unit Phi-length") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (const auto& [name, norm] : planar_norms()) {
    if (std::string(name) == "l1" || std::string(name) == "linf" || std::string(name) == "sampled") continue;
    CAPTURE(name);
    for (int k = 0; k < 50; ++k) {
      const std::array<double, 2> x{g(rng), g(rng)};
      const auto grad = norm.polar_gradient(x);
      CHECK(norm(grad) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("volume of a Wulff ball scales as r^n") {
  const auto ell = AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0});
  const double r = 0.37;
  // Chord volume of {Phi° < r} equals r^2 times that of the unit ball.
  const auto scaled = AnisotropicNorm::ellipse(2, {2.0 * r * r, 0.5 * r * r, 0.5 * r * r, 1.0 * r * r});
  CHECK(verify::chord_volume_unit_ball(scaled) == doctest::Approx(ell.kappa() * r * r).epsilon(1e-5));
}
