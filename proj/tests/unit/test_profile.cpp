#include <cmath>

#include "doctest.h"
#include "wulff/errors.hpp"
#include "wulff/profile.hpp"

using namespace wulff;

namespace {
const OptimalProfile& reference() {
  static const OptimalProfile p = build_profile(DoubleWell(1.5, 0.5), 2048);
  return p;
}
}  // namespace

TEST_CASE("profile values") {
  const auto& p = reference();
  CHECK(p(0.0) == 0.0);
  CHECK(p(p.tau()) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(p(p.tau() + 1.0) == 1.0);
  CHECK(p(-p.tau() - 1.0) == -1.0);
  double worst = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double t = -p.tau() * 1.2 + 2.4 * p.tau() * k / 1000.0;
    worst = std::max(worst, std::abs(p(t) + p(-t)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("inverse map round trip") {
  const auto& p = reference();
  for (double z : {-0.9, -0.5, 0.1, 0.5, 0.75, 0.99}) {
    CAPTURE(z);
    CHECK(p(p.time_of(z)) == doctest::Approx(z).epsilon(1e-9));
  }
}

TEST_CASE("ode residual and equipartition") {
  const auto& p = reference();
  CHECK(ode_residual(p) <= 1e-6);
  const auto eq = equipartition(p);
  CHECK(eq.potential == doctest::Approx(p.c_w() / 2.0).epsilon(1e-8));
  CHECK(eq.gradient == doctest::Approx(p.c_w() / 2.0).epsilon(1e-5));
}

TEST_CASE("layer energy is c_W once the window covers the support") {
  const auto& p = reference();
  for (double f : {1.0, 1.5, 2.0}) {
    CAPTURE(f);
    CHECK(profile_energy(p, f * p.tau()) == doctest::Approx(p.c_w()).epsilon(1e-10));
  }
  CHECK(profile_energy_moment(p, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(profile_energy(p, 0.5 * p.tau()), DomainError);
}

TEST_CASE("independent minimization does not beat the profile") {
  const auto& p = reference();
  const auto rep = verify_profile_minimality(p, p.tau(), 2000);
  CHECK(rep.minimum >= p.c_w() * (1.0 - 1e-3));
  CHECK(rep.minimum <= p.c_w() * (1.0 + 1e-3));
  CHECK(rep.sup_distance <= 2e-2);
}

TEST_CASE("degenerate zero potential has zero minimum") {
  const auto zero = [](double) { return 0.0; };
  const auto rep = minimize_transition(zero, zero, zero, 2.0, 200);
  CHECK(rep.minimum == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("inverse map at the ends and invalid requests") {
  CHECK_THROWS_AS(build_profile(DoubleWell(1.5, 0.5), 3), DomainError);
  CHECK(reference().time_of(1.0) == doctest::Approx(reference().tau()).epsilon(1e-12));
  CHECK_THROWS_AS(reference().time_of(1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(reference().time_of(-1.5), DomainError);
}
