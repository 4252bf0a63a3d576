#include "wulff/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <thread>
#include <tuple>

#include "wulff/errors.hpp"
#include "wulff/profile.hpp"
#include "wulff/recovery.hpp"

namespace wulff {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

struct Shared {
  const RunConfig* cfg;
  std::shared_ptr<const AnisotropicNorm> norm;
  std::shared_ptr<const OptimalProfile> profile;
  double r;
};

SweepRow solve_row(const Shared& s, double eps) {
  SweepRow row;
  row.eps = eps;
  const RunConfig& cfg = *s.cfg;
  const double beta = s.profile->well().beta();

  const RadialProblem problem = make_radial_problem(s.profile, *s.norm, cfg.R, s.r, eps, cfg.grid);
  const RadialSolveResult res = minimize(problem, cfg.solver);
  row.converged = res.converged;
  row.iterations = res.iterations;
  row.excess = excess(problem, res);
  row.lambda = res.lambda;
  row.eps_lambda = eps * res.lambda;
  row.delta = res.delta;
  row.eps_delta = res.eps_delta;
  row.multiple_crossings = res.multiple_crossings;
  row.min_w_plus_1 = res.min_w + 1.0;
  row.lower_barrier = -std::pow(std::max(row.eps_lambda, 0.0) / beta, 1.0 / (beta - 1.0));
  row.complementarity = res.complementarity;
  row.el_residual = res.el_residual;
  row.constraint_slack = res.constraint_slack;
  row.monotonicity_violation = res.monotonicity_violation;
  row.endpoints = diagnostics_endpoint_layers(problem, res.w, res.delta);
  if (!res.converged) row.note = "radial solve did not converge";
  if (problem.layer_clipped) row.note += row.note.empty() ? "layer clipped" : "; layer clipped";

  RecoveryConfig rc;
  rc.norm = s.norm;
  rc.profile = s.profile;
  rc.R = cfg.R;
  rc.r = s.r;
  rc.y0 = cfg.y0;
  rc.delta = cfg.delta;
  row.omega = nan_v;
  row.omega_over_eps2 = nan_v;
  row.limsup_quotient = nan_v;
  row.energy_corr = nan_v;
  row.majorant = nan_v;
  try {
    row.omega = mass_error(rc, eps);
    row.omega_over_eps2 = row.omega / (eps * eps);
    const RecoveryResult rr = corrected_energy(rc, eps);
    row.recovery_admissible = true;
    row.limsup_quotient = rr.limsup_quotient;
    row.energy_corr = rr.energy_corr;
    row.majorant = rr.majorant;
  } catch (const GeometryError& e) {
    row.note += row.note.empty() ? "" : "; ";
    row.note += std::string("recovery inadmissible: ") + e.what();
  }
  return row;
}

}  // namespace

SweepReport run_sweep(const RunConfig& cfg, std::size_t jobs) {
  validate(cfg);
  Shared s;
  s.cfg = &cfg;
  s.norm = std::make_shared<const AnisotropicNorm>(make_norm(cfg.norm));
  s.r = resolve_radius(cfg, *s.norm);
  const DoubleWell well = make_well(cfg.well);
  s.profile = std::make_shared<const OptimalProfile>(build_profile(well, cfg.profile_intervals));

  SweepReport rep;
  auto& h = rep.header;
  h.config = config_echo(cfg);
  h.n = s.norm->dim();
  h.kappa = s.norm->kappa();
  h.c_w = s.profile->c_w();
  h.tau_w = s.profile->tau();
  h.r = s.r;
  h.lambda0 = (h.n - 1) * h.c_w / (2.0 * s.r);
  h.h_limit = h.c_w * std::pow(s.r, h.n - 1);
  h.energy_limit = h.n * h.kappa * h.h_limit;

  rep.rows.resize(cfg.eps.size());
  std::vector<std::exception_ptr> errors(cfg.eps.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.eps.size(); i = next++) {
      try {
        rep.rows[i] = solve_row(s, cfg.eps[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(cfg.eps.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& row : rep.rows) rep.complete = rep.complete && row.converged;
  return rep;
}

RateFit fit_rate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit_rate needs equally long columns");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && std::isfinite(y[i]) && y[i] != 0.0) pts.emplace_back(std::log(x[i]), std::log(std::abs(y[i])));
  }
  if (pts.size() < 3) throw InsufficientDataError("rate fit needs at least 3 nonzero points");
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [a, b] : pts) {
    sxx += (a - mx) * (a - mx);
    sxy += (a - mx) * (b - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("rate fit needs distinct abscissae");
  RateFit f;
  f.exponent = sxy / sxx;
  f.prefactor = std::exp(my - f.exponent * mx);
  f.points = pts.size();
  return f;
}

FittedRates fit_rates(const SweepReport& report) {
  std::vector<double> eps, exc, om, el, ed, leps, lq;
  for (const auto& row : report.rows) {
    if (!row.converged) continue;
    eps.push_back(row.eps);
    exc.push_back(row.excess);
    om.push_back(row.omega);
    el.push_back(row.eps_lambda);
    ed.push_back(row.eps_delta);
    if (row.recovery_admissible) {
      leps.push_back(row.eps);
      lq.push_back(row.limsup_quotient);
    }
  }
  if (eps.size() < 3) throw InsufficientDataError("rate fits need at least 3 converged rows");
  FittedRates f;
  f.excess = fit_rate(eps, exc);
  f.omega = fit_rate(eps, om);
  f.eps_lambda = fit_rate(eps, el);
  f.eps_delta = fit_rate(eps, ed);
  f.limsup = fit_rate(leps, lq);
  return f;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "plotdata") return OutputFormat::plotdata;
  throw UsageError("unknown format '" + name + "' (expected csv or plotdata)");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

struct Column {
  const char* name;
  double (*get)(const SweepRow&);
};

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"eps", [](const SweepRow& r) { return r.eps; }},
      {"converged", [](const SweepRow& r) { return r.converged ? 1.0 : 0.0; }},
      {"recovery_admissible", [](const SweepRow& r) { return r.recovery_admissible ? 1.0 : 0.0; }},
      {"excess", [](const SweepRow& r) { return r.excess; }},
      {"lambda", [](const SweepRow& r) { return r.lambda; }},
      {"eps_lambda", [](const SweepRow& r) { return r.eps_lambda; }},
      {"delta", [](const SweepRow& r) { return r.delta; }},
      {"eps_delta", [](const SweepRow& r) { return r.eps_delta; }},
      {"multiple_crossings", [](const SweepRow& r) { return r.multiple_crossings ? 1.0 : 0.0; }},
      {"min_w_plus_1", [](const SweepRow& r) { return r.min_w_plus_1; }},
      {"lower_barrier", [](const SweepRow& r) { return r.lower_barrier; }},
      {"omega", [](const SweepRow& r) { return r.omega; }},
      {"omega_over_eps2", [](const SweepRow& r) { return r.omega_over_eps2; }},
      {"limsup_quotient", [](const SweepRow& r) { return r.limsup_quotient; }},
      {"energy_corr", [](const SweepRow& r) { return r.energy_corr; }},
      {"majorant", [](const SweepRow& r) { return r.majorant; }},
      {"complementarity", [](const SweepRow& r) { return r.complementarity; }},
      {"el_residual", [](const SweepRow& r) { return r.el_residual; }},
      {"constraint_slack", [](const SweepRow& r) { return r.constraint_slack; }},
      {"monotonicity_violation", [](const SweepRow& r) { return r.monotonicity_violation; }},
      {"lower_k1", [](const SweepRow& r) { return r.endpoints.lower[0]; }},
      {"lower_k2", [](const SweepRow& r) { return r.endpoints.lower[1]; }},
      {"lower_k4", [](const SweepRow& r) { return r.endpoints.lower[2]; }},
      {"upper_k1", [](const SweepRow& r) { return r.endpoints.upper[0]; }},
      {"upper_k2", [](const SweepRow& r) { return r.endpoints.upper[1]; }},
      {"upper_k4", [](const SweepRow& r) { return r.endpoints.upper[2]; }},
  };
  return cols;
}

std::string header_lines(const SweepReport& report) {
  const auto& h = report.header;
  std::string s = "# wulff-sweep-csv v1\n";
  s += "# config " + h.config + "\n";
  s += "# n " + std::to_string(h.n) + " kappa " + format_number(h.kappa) + " c_w " + format_number(h.c_w) +
       " tau_w " + format_number(h.tau_w) + " r " + format_number(h.r) + " lambda0 " + format_number(h.lambda0) +
       " h_limit " + format_number(h.h_limit) + " energy_limit " + format_number(h.energy_limit) + "\n";
  s += std::string("# complete ") + (report.complete ? "1" : "0") + "\n";
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace

std::string to_csv(const SweepReport& report) {
  std::string s = header_lines(report);
  const auto& cols = columns();
  for (std::size_t c = 0; c < cols.size(); ++c) s += (c ? "," : "") + std::string(cols[c].name);
  s += "\n";
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) s += (c ? "," : "") + format_number(cols[c].get(row));
    s += "\n";
  }
  std::vector<double> eps, exc, om, el, ed, leps, lq;
  for (const auto& row : report.rows) {
    if (!row.converged) continue;
    eps.push_back(row.eps);
    exc.push_back(row.excess);
    om.push_back(row.omega);
    el.push_back(row.eps_lambda);
    ed.push_back(row.eps_delta);
    if (row.recovery_admissible) {
      leps.push_back(row.eps);
      lq.push_back(row.limsup_quotient);
    }
  }
  const std::tuple<const char*, const std::vector<double>*, const std::vector<double>*> fits[] = {
      {"excess", &eps, &exc},       {"omega", &eps, &om},   {"eps_lambda", &eps, &el},
      {"eps_delta", &eps, &ed},     {"limsup_quotient", &leps, &lq}};
  for (const auto& [name, x, y] : fits) {
    try {
      const RateFit fit = fit_rate(*x, *y);
      s += std::string("# rate ") + name + " exponent " + format_number(fit.exponent) + " prefactor " +
           format_number(fit.prefactor) + " points " + std::to_string(fit.points) + "\n";
    } catch (const InsufficientDataError& e) {
      s += std::string("# rate ") + name + " unavailable: " + e.what() + "\n";
    }
  }
  return s;
}

std::vector<std::string> emit(const SweepReport& report, OutputFormat format, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  if (format == OutputFormat::csv) {
    const fs::path p = fs::path(dir) / "sweep.csv";
    write_file(p, to_csv(report));
    written.push_back(p.string());
    return written;
  }
  const auto& cols = columns();
  for (std::size_t c = 1; c < cols.size(); ++c) {
    const std::string name = cols[c].name;
    if (name == "converged" || name == "recovery_admissible" || name == "multiple_crossings") continue;
    std::string text = header_lines(report) + "# eps " + name + "\n";
    for (const auto& row : report.rows) text += format_number(row.eps) + " " + format_number(cols[c].get(row)) + "\n";
    const fs::path p = fs::path(dir) / (name + ".dat");
    write_file(p, text);
    written.push_back(p.string());
  }
  return written;
}

}  // namespace wulff
