#include <cmath>
#include <random>

#include "doctest.h"
#include "wulff/errors.hpp"
#include "wulff/potential.hpp"
#include "wulff/verify/oracles.hpp"

using namespace wulff;

TEST_CASE("well values") {
  const DoubleWell w(1.5, 0.5);
  CHECK(w(1.0) == 0.0);
  CHECK(w(-1.0) == 0.0);
  CHECK(w(1.1) == doctest::Approx(std::pow(0.1, 1.5)).epsilon(1e-14));
  CHECK(w(-1.1) == w(1.1));
  CHECK(w.prime(1.0) == 0.0);
  CHECK(w.prime(1.04) == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(w.prime(0.0) == 0.0);
}

TEST_CASE("reference bridge coefficients") {
  const DoubleWell w(1.5, 0.5);
  CHECK(w.c0() == doctest::Approx(0.5634757162580301).epsilon(1e-13));
  CHECK(w.c2() == doctest::Approx(-5.833630944789018).epsilon(1e-13));
  CHECK(w.c3() == doctest::Approx(9.899494936611667).epsilon(1e-13));
  CHECK(w.mu() == doctest::Approx(0.3535533905932737).epsilon(1e-13));
  // C^2 match at the seam.
  const double s = 0.5, h = 1e-7;
  CHECK(w(s - h) == doctest::Approx(w(s + h)).epsilon(1e-6));
  CHECK(w.prime(s - h) == doctest::Approx(w.prime(s + h)).epsilon(1e-5));
  CHECK(w.second(s - h) == doctest::Approx(w.second(s + h)).epsilon(1e-4));
}

TEST_CASE("structural properties on samples") {
  for (double beta : {1.1, 1.5, 1.9}) {
    for (double a : {0.2, 0.5, 0.8}) {
      CAPTURE(beta);
      CAPTURE(a);
      const DoubleWell w(beta, a);
      std::mt19937_64 rng(17);
      std::uniform_real_distribution<double> u(-3.0, 3.0);
      for (int k = 0; k < 1000; ++k) {
        const double s = u(rng);
        REQUIRE(w(s) == doctest::Approx(w(-s)).epsilon(1e-14));
        if (std::abs(std::abs(s) - 1.0) > 1e-9) REQUIRE(w(s) > 0.0);
        if (std::abs(std::abs(s) - 1.0) <= a) REQUIRE(w(s) == doctest::Approx(std::pow(std::abs(std::abs(s) - 1.0), beta)));
        if (s > 1.0) REQUIRE(w.prime(s) > 0.0);
        if (s >= 2.0) REQUIRE(w.prime(s) >= beta * 0.999);
        if (std::abs(s) <= 1.0 - a) REQUIRE(w(s) >= w.mu() * (1.0 - 1e-12));
        // Truncation at 1 never increases W.
        REQUIRE(w(std::min(s, 1.0)) <= w(s) + 1e-15);
        if (s > 1.0) REQUIRE(w(std::min(s, 1.0)) < w(s));
      }
    }
  }
}

TEST_CASE("derivative matches central differences") {
  const DoubleWell w(1.5, 0.5);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  int used = 0;
  while (used < 1000) {
    const double s = u(rng);
    if (std::abs(std::abs(s) - 1.0) < 1e-3 || std::abs(s) < 1e-3) continue;
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    const double fd = (w(s + h) - w(s - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - w.prime(s)) / std::max(std::abs(w.prime(s)), 1e-3));
    ++used;
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("c_W and tau_W against the composite oracle") {
  for (double beta : {1.2, 1.5, 1.8}) {
    CAPTURE(beta);
    const DoubleWell w(beta, 0.5);
    const auto oracle = verify::composite_well_constants(w);
    CHECK(std::abs(c_w(w) - oracle.c_w) <= 1e-10);
    CHECK(std::abs(tau_w(w) - oracle.tau_w) <= 1e-10);
    // Tighter quadrature tolerance leaves the constants unchanged.
    CHECK(std::abs(c_w(w, 1e-11) - c_w(w)) <= 1e-9);
    CHECK(std::abs(tau_w(w, 1e-11) - tau_w(w)) <= 1e-9);
  }
  const DoubleWell ref(1.5, 0.5);
  CHECK(c_w(ref) == doctest::Approx(2.108762365104926).epsilon(1e-12));
  CHECK(tau_w(ref) == doctest::Approx(4.066230568916461).epsilon(1e-12));
}

TEST_CASE("window contributions in closed form") {
  const double beta = 1.5, a = 0.5;
  // 2 int_{1-a}^1 sqrt(W) = (4 / (2 + beta)) a^{(2 + beta)/2}; 0.339773..., not 0.340012.
  const double window_cw = 4.0 / (2.0 + beta) * std::pow(a, (2.0 + beta) / 2.0);
  CHECK(window_cw == doctest::Approx(0.33977300000).epsilon(1e-6));
  const double window_tau = std::pow(a, 1.0 - beta / 2.0) / (1.0 - beta / 2.0);
  CHECK(window_tau == doctest::Approx(3.36358566101).epsilon(1e-10));
  const DoubleWell w(beta, a);
  CHECK(tau_w(w) - bridge_time(w) == doctest::Approx(window_tau).epsilon(1e-10));
}

TEST_CASE("constant bridge") {
  const double mu = 0.2, a = 0.4, beta = 1.5;
  const auto w = DoubleWell::with_constant_bridge(beta, a, mu);
  CHECK(w(0.3) == mu);
  const double cw = 2.0 * (2.0 - 2.0 * a) * std::sqrt(mu) + 8.0 / (2.0 + beta) * std::pow(a, (2.0 + beta) / 2.0);
  CHECK(c_w(w) == doctest::Approx(cw).epsilon(1e-10));
  const double tau = (1.0 - a) / std::sqrt(mu) + std::pow(a, 1.0 - beta / 2.0) / (1.0 - beta / 2.0);
  CHECK(tau_w(w) == doctest::Approx(tau).epsilon(1e-10));
}

TEST_CASE("rejects invalid wells") {
  CHECK_THROWS_AS(DoubleWell(2.0, 0.5), ConfigError);
  CHECK_THROWS_AS(DoubleWell(1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(DoubleWell(1.5, 0.0), ConfigError);
  CHECK_THROWS_AS(DoubleWell(1.5, 1.0), ConfigError);
  CHECK_THROWS_AS(DoubleWell::with_constant_bridge(1.5, 0.5, 0.0), ConfigError);
}
