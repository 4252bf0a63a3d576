#pragma once

// The eps-sweep driver: radial solves and recovery evaluations per eps, rate
// fits, and CSV / plot-data emission.

#include <cstddef>
#include <string>
#include <vector>

#include "wulff/config.hpp"
#include "wulff/radial_solver.hpp"

namespace wulff {

struct SweepRow {
  double eps = 0.0;
  bool converged = false;
  /// False when the corrected recovery sequence is not defined at this eps.
  bool recovery_admissible = false;
  double excess = 0.0;
  double lambda = 0.0;
  double eps_lambda = 0.0;
  double delta = 0.0;
  double eps_delta = 0.0;
  bool multiple_crossings = false;
  double min_w_plus_1 = 0.0;
  /// -(eps lambda / beta)^{1 / (beta - 1)}
  double lower_barrier = 0.0;
  double omega = 0.0;
  double omega_over_eps2 = 0.0;
  double limsup_quotient = 0.0;
  double energy_corr = 0.0;
  double majorant = 0.0;
  double complementarity = 0.0;
  double el_residual = 0.0;
  double constraint_slack = 0.0;
  double monotonicity_violation = 0.0;
  EndpointDiagnostics endpoints;
  std::size_t iterations = 0;
  std::string note;
};

struct SweepHeader {
  std::string config;
  int n = 2;
  double kappa = 0.0;
  double c_w = 0.0;
  double tau_w = 0.0;
  double r = 0.0;
  /// (n - 1) c_W / (2 r)
  double lambda0 = 0.0;
  /// c_W r^{n-1}, the limit of H_eps
  double h_limit = 0.0;
  /// n kappa c_W r^{n-1}, the limit of E_eps / eps
  double energy_limit = 0.0;
};

struct SweepReport {
  SweepHeader header;
  std::vector<SweepRow> rows;  // ordered as the eps list
  bool complete = true;
};

/// jobs = 0 uses the hardware concurrency.
SweepReport run_sweep(const RunConfig& cfg, std::size_t jobs = 0);

struct RateFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  std::size_t points = 0;
};

/// Least squares for log|y| = log C + p log x. Throws InsufficientDataError
/// with fewer than 3 points.
RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y);

struct FittedRates {
  RateFit excess;
  RateFit omega;
  RateFit eps_lambda;
  RateFit eps_delta;
  /// Rows where the recovery sequence is admissible.
  RateFit limsup;
};

/// Uses converged rows; throws InsufficientDataError with fewer than 3.
FittedRates fit_rates(const SweepReport& report);

enum class OutputFormat { csv, plotdata };

/// Throws UsageError for anything but "csv" or "plotdata".
OutputFormat parse_format(const std::string& name);

std::string to_csv(const SweepReport& report);

/// Writes sweep.csv, or one two-column file per curve for plotdata, into dir
/// (created if needed). Returns the paths written. Throws IoError.
std::vector<std::string> emit(const SweepReport& report, OutputFormat format, const std::string& dir);

/// "%.12g" with nan / inf spelled without sign noise.
std::string format_number(double v);

}  // namespace wulff
