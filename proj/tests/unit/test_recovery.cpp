#include <cmath>
#include <memory>

#include "doctest.h"
#include "wulff/errors.hpp"
#include "wulff/recovery.hpp"

using namespace wulff;

namespace {
RecoveryConfig reference(std::shared_ptr<const AnisotropicNorm> norm = nullptr) {
  static const auto p = std::make_shared<const OptimalProfile>(build_profile(DoubleWell(1.5, 0.5), 2048));
  RecoveryConfig c;
  c.norm = norm ? norm : std::make_shared<const AnisotropicNorm>(AnisotropicNorm::euclidean(2));
  c.profile = p;
  c.R = 1.0;
  c.r = 0.5;
  return c;
}
}  // namespace

TEST_CASE("bump has unit integral") {
  for (const auto& norm : {AnisotropicNorm::euclidean(2), AnisotropicNorm::weighted_p(1.0, {1.0, 1.0}),
                           AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0})}) {
    const auto cfg = reference(std::make_shared<const AnisotropicNorm>(norm));
    const Bump b = make_bump(cfg);
    CHECK(b.radius == 0.25);
    // n kappa int phi(rho) rho d rho, midpoint rule.
    const std::size_t N = 200000;
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double rho = (i + 0.5) * b.radius / N;
      s += b.value(rho) * rho;
    }
    CHECK(2.0 * norm.kappa() * s * b.radius / N == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.value(b.radius) == 0.0);
  }
}

TEST_CASE("mass error vanishes quadratically") {
  const auto cfg = reference();
  const double q1 = mass_error(cfg, 0.02) / (0.02 * 0.02);
  const double q2 = mass_error(cfg, 0.01) / (0.01 * 0.01);
  CHECK(std::abs(mass_error(cfg, 0.01)) < std::abs(mass_error(cfg, 0.02)));
  CHECK(q1 == doctest::Approx(q2).epsilon(1e-2));
}

TEST_CASE("corrected energy is additive") {
  const auto cfg = reference();
  for (double eps : {0.05, 0.025}) {
    const auto rr = corrected_energy(cfg, eps);
    CHECK(rr.energy_total == doctest::Approx(rr.energy_hat + rr.energy_corr).epsilon(1e-14));
    CHECK(rr.energy_hat == doctest::Approx(recovery_energy(cfg, eps)).epsilon(1e-14));
    CHECK(rr.omega_over_eps2 == doctest::Approx(rr.omega / (eps * eps)).epsilon(1e-14));
  }
}

TEST_CASE("feasibility") {
  const auto cfg = reference();
  for (double eps : {0.05, 0.025, 0.0125}) {
    CAPTURE(eps);
    const auto f = feasibility_check(cfg, eps);
    CHECK(f.inclusion);
    CHECK(f.boundary);
    CHECK(f.support);
    CHECK(std::abs(f.mass_defect) <= 1e-8 * f.volume_omega);
  }
}

TEST_CASE("off-centre enlarged ball") {
  auto cfg = reference();
  cfg.y0 = {0.1, -0.05};
  validate(cfg);
  const auto f = feasibility_check(cfg, 0.025);
  CHECK(f.inclusion);
  CHECK(std::abs(f.mass_defect) <= 1e-8 * f.volume_omega);
}

TEST_CASE("L1 distance to the limit is linear in eps") {
  const auto cfg = reference();
  const double d1 = l1_distance_to_limit(cfg, 0.02);
  const double d2 = l1_distance_to_limit(cfg, 0.01);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(2e-2));
}

TEST_CASE("geometry errors") {
  auto cfg = reference();
  CHECK_THROWS_AS(corrected_energy(cfg, 0.2), GeometryError);
  cfg.y0 = {0.3, 0.0};
  CHECK_THROWS_AS(validate(cfg), GeometryError);
  cfg.y0 = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  auto bad = reference();
  bad.r = 1.2;
  CHECK_THROWS_AS(validate(bad), DomainError);
  CHECK_THROWS_AS(mass_error(reference(), 0.0), DomainError);
}
