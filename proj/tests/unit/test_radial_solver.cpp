#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "wulff/errors.hpp"
#include "wulff/radial_solver.hpp"

using namespace wulff;

namespace {
std::shared_ptr<const OptimalProfile> profile() {
  static const auto p = std::make_shared<const OptimalProfile>(build_profile(DoubleWell(1.5, 0.5), 2048));
  return p;
}
RadialProblem problem(double eps) {
  return make_radial_problem(profile(), AnisotropicNorm::euclidean(2), 1.0, 0.5, eps);
}
}  // namespace

TEST_CASE("grid") {
  const auto pb = problem(0.05);
  CHECK(pb.rho.front() == 0.0);
  CHECK(pb.rho.back() == 1.0);
  for (std::size_t i = 1; i < pb.size(); ++i) REQUIRE(pb.rho[i] > pb.rho[i - 1]);
  // 8 eps tau_W exceeds min(r, R - r) = 0.5 until eps < 0.0154.
  CHECK(pb.layer_clipped);
  CHECK_FALSE(problem(0.01).layer_clipped);
  CHECK(pb.bound == doctest::Approx((1.0 - 2.0 * 0.25) / 2.0).epsilon(1e-14));
}

TEST_CASE("energy of constant states") {
  const auto pb = problem(0.05);
  CHECK(energy_G(pb, std::vector<double>(pb.size(), 1.0)) == 0.0);
  const double w0 = pb.well()(0.0);
  CHECK(energy_G(pb, std::vector<double>(pb.size(), 0.0)) == doctest::Approx(w0 / (2.0 * 0.05)).epsilon(1e-10));
}

TEST_CASE("G and H agree after rescaling") {
  const auto pb = problem(0.025);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<double> w(pb.size());
  for (auto& x : w) x = u(rng);
  CHECK(energy_G(pb, w) == doctest::Approx(energy_H(pb, w)).epsilon(1e-10));
}

TEST_CASE("first moment of the layer cancels in two dimensions") {
  const auto& p = *profile();
  for (double eps : {0.1, 0.05, 0.0125}) {
    CAPTURE(eps);
    CHECK(energy_H_profile(p, 2, 0.5, eps) == doctest::Approx(p.c_w() * 0.5).epsilon(1e-10));
  }
}

TEST_CASE("truncation at 1 never increases G") {
  const auto pb = problem(0.05);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> w(pb.size()), t(pb.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = u(rng);
      t[i] = std::min(w[i], 1.0);
    }
    REQUIRE(energy_G(pb, t) <= energy_G(pb, w) + 1e-12);
  }
}

TEST_CASE("zero crossing") {
  const auto pb = problem(0.05);
  const auto z = shifted_profile(pb);
  const auto zc = zero_crossing(pb, z);
  CHECK(zc.delta == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK_FALSE(zc.multiple);
  std::vector<double> shifted(pb.size());
  for (std::size_t i = 0; i < pb.size(); ++i) shifted[i] = (*profile())(pb.t_of(i) - 3.0);
  CHECK(zero_crossing(pb, shifted).delta == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_THROWS_AS(zero_crossing(pb, std::vector<double>(pb.size(), 1.0)), DegenerateStateError);
}

TEST_CASE("endpoint layers of the profile are saturated") {
  const auto pb = problem(0.05);
  const auto d = diagnostics_endpoint_layers(pb, shifted_profile(pb), 0.0);
  for (int k = 0; k < 3; ++k) {
    CHECK(d.lower[k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(d.upper[k] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("constrained minimizer") {
  const auto pb = problem(0.05);
  SolverOptions opts;
  const auto res = minimize(pb, opts);
  REQUIRE(res.converged);
  CHECK(res.el_residual <= opts.el_tol);
  CHECK(res.complementarity <= opts.kkt_tol);
  CHECK(res.constraint_slack >= -opts.mass_tol);
  CHECK(res.lambda > 0.0);
  CHECK(res.energy_H <= energy_H(pb, shifted_profile(pb)) + 1e-9);
  CHECK(res.monotonicity_violation <= 1e-8);
  double wmax = -2.0;
  for (double x : res.w) wmax = std::max(wmax, x);
  CHECK(wmax <= 1.0);
  CHECK(res.w.back() == 1.0);
  // Inner state sits at W'(w) = -eps lambda below -1.
  const double barrier = -1.0 - std::pow(0.05 * res.lambda / 1.5, 2.0);
  CHECK(res.min_w == doctest::Approx(barrier).epsilon(1e-6));
}

TEST_CASE("invalid problems") {
  const auto e = AnisotropicNorm::euclidean(2);
  CHECK_THROWS_AS(make_radial_problem(profile(), e, 1.0, 1.5, 0.05), DomainError);
  CHECK_THROWS_AS(make_radial_problem(profile(), e, 1.0, 0.5, 0.0), DomainError);
  RadialGridOptions bad;
  bad.growth = 0.5;
  CHECK_THROWS_AS(make_radial_problem(profile(), e, 1.0, 0.5, 0.05, bad), ConfigError);
}
