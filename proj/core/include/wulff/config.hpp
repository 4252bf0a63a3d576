#pragma once

// Run configuration: JSON ingestion, validation and a canonical echo.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wulff/anisotropy.hpp"
#include "wulff/potential.hpp"
#include "wulff/radial_solver.hpp"

namespace wulff {

struct NormSpec {
  std::string kind = "euclidean";  // euclidean | scaled | weighted_p | ellipse | sampled
  int n = 2;
  double scale = 1.0;
  double p = 2.0;  // weighted_p; "inf" in JSON for the max norm
  std::vector<double> weights;
  std::vector<double> matrix;  // ellipse, row-major
  std::vector<std::array<double, 2>> directions;
  std::vector<double> values;
};

struct WellSpec {
  double beta = 1.5;
  double a = 0.5;
  std::string bridge = "even-poly";  // even-poly | constant
  double mu = 0.0;                   // constant bridge only
};

struct RunConfig {
  NormSpec norm;
  WellSpec well;
  double R = 1.0;
  /// Exactly one of r and m; r = 0.5 when neither is given.
  std::optional<double> r;
  std::optional<double> m;
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
  RadialGridOptions grid;
  SolverOptions solver;
  double tol_delta = 0.05;
  std::size_t profile_intervals = 2048;
  std::vector<double> y0;
  double delta = 0.0;
  std::string out_dir;
  std::uint64_t seed = 20240601;
};

AnisotropicNorm make_norm(const NormSpec& spec);
DoubleWell make_well(const WellSpec& spec);

/// Throws ConfigError on malformed input or unknown keys.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Checks invariants that do not need a norm: eps strictly decreasing and
/// positive, tolerances positive, r / m exclusivity.
void validate(const RunConfig& cfg);

/// Radius of the -1 ball; throws ConstraintError unless -kappa R^n < m < kappa R^n.
double resolve_radius(const RunConfig& cfg, const AnisotropicNorm& norm);

/// Canonical single-line JSON that parses back to the same configuration.
std::string config_echo(const RunConfig& cfg);

}  // namespace wulff
