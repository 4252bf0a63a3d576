#include "wulff/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <random>

#include "wulff/errors.hpp"
#include "wulff/profile.hpp"
#include "wulff/rearrangement.hpp"
#include "wulff/recovery.hpp"
#include "wulff/sweep.hpp"
#include "wulff/verify/oracles.hpp"

namespace wulff::verify {

namespace {

// Pinned tolerances.
constexpr double profile_tol = 1e-8;
constexpr double ode_tol = 1e-6;
constexpr double minimality_rel_tol = 1e-3;
constexpr double minimality_sup_tol = 1e-2;
constexpr double excess_final_frac = 0.05;
constexpr double excess_floor_factor = 10.0;
constexpr double excess_monotone_slack = 0.20;
constexpr double lambda_rel_tol = 0.10;
constexpr double eps_lambda_frac = 0.05;
constexpr double eps_delta_frac = 0.02;
constexpr double barrier_slack = 1e-6;
constexpr double omega_ratio_max = 2.0;
constexpr double omega_exponent_min = 1.8;
constexpr double limsup_frac = 0.05;
constexpr double majorant_rounding = 1e-9;
constexpr double perimeter_tol_euclidean = 1e-6;
constexpr double perimeter_tol_l1 = 1e-3;
constexpr double kappa_tol = 1e-3;
constexpr double bipolar_tol = 1e-3;
constexpr double polya_szego_slack = 1e-3;
constexpr double w_gap_max = 0.02;
constexpr double grid_energy_tol = 1e-2;

constexpr double runtime_profile = 1.0;
constexpr double runtime_minimality = 5.0;
constexpr double runtime_sweep = 60.0;
constexpr double runtime_recovery = 10.0;
constexpr double runtime_rearrangement = 30.0;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Context {
  RunConfig cfg = reference_config();
  std::size_t jobs = 0;
  std::shared_ptr<const AnisotropicNorm> norm;
  std::shared_ptr<const OptimalProfile> profile;
  std::optional<SweepReport> sweep;

  const OptimalProfile& get_profile() {
    if (!profile) profile = std::make_shared<const OptimalProfile>(build_profile(make_well(cfg.well)));
    return *profile;
  }
  const AnisotropicNorm& get_norm() {
    if (!norm) norm = std::make_shared<const AnisotropicNorm>(make_norm(cfg.norm));
    return *norm;
  }
  const SweepReport& get_sweep() {
    if (!sweep) sweep = run_sweep(cfg, jobs);
    return *sweep;
  }
  double r() const { return cfg.r.value_or(0.5); }
};

struct Check {
  bool pass = true;
  std::string detail;
  void add(bool ok, const std::string& text) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAIL ") + text;
  }
};

void runtime(Check& c, double seconds, double limit) {
  c.add(seconds < limit, "runtime " + num(seconds) + " s < " + num(limit) + " s");
}

Check profile_identities(Context& ctx) {
  Clock clock;
  Check c;
  const OptimalProfile& p = ctx.get_profile();
  const WellConstants oracle = composite_well_constants(p.well());
  const double energy = profile_energy(p, p.tau());
  const Equipartition eq = equipartition(p);
  const double ode = ode_residual(p);
  const double seconds = clock.seconds();
  c.add(std::abs(p.c_w() - oracle.c_w) <= profile_tol, "c_W " + num(p.c_w()) + " vs oracle, diff " +
                                                           num(std::abs(p.c_w() - oracle.c_w)));
  c.add(std::abs(p.tau() - oracle.tau_w) <= profile_tol, "tau_W diff " + num(std::abs(p.tau() - oracle.tau_w)));
  c.add(std::abs(energy - oracle.c_w) <= profile_tol, "profile energy diff " + num(std::abs(energy - oracle.c_w)));
  c.add(std::abs(eq.potential - 0.5 * oracle.c_w) <= profile_tol,
        "int W(z) diff " + num(std::abs(eq.potential - 0.5 * oracle.c_w)));
  c.add(std::abs(eq.gradient - 0.5 * oracle.c_w) <= profile_tol,
        "int z'^2 diff " + num(std::abs(eq.gradient - 0.5 * oracle.c_w)));
  c.add(ode <= ode_tol, "ODE residual " + num(ode));
  runtime(c, seconds, runtime_profile);
  return c;
}

Check minimality(Context& ctx) {
  const OptimalProfile& p = ctx.get_profile();
  Clock clock;
  Check c;
  const MinimalityReport m = verify_profile_minimality(p, 2.0 * p.tau(), 1024);
  const double seconds = clock.seconds();
  const double rel = std::abs(m.minimum - p.c_w()) / p.c_w();
  c.add(rel <= minimality_rel_tol, "discrete minimum rel. error " + num(rel));
  c.add(m.sup_distance <= minimality_sup_tol, "sup distance to z " + num(m.sup_distance));
  runtime(c, seconds, runtime_minimality);
  return c;
}

Check second_order(Context& ctx) {
  Clock clock;
  Check c;
  const SweepReport& rep = ctx.get_sweep();
  const double seconds = clock.seconds();
  if (rep.rows.empty()) {
    c.add(false, "empty sweep");
    return c;
  }
  c.add(rep.complete, rep.complete ? "all solves converged" : "non-converged solve");
  const double scale = rep.header.h_limit;
  const double last = rep.rows.back().excess;
  c.add(std::abs(last) <= excess_final_frac * scale,
        "|excess(" + num(rep.rows.back().eps) + ")| " + num(std::abs(last)) + " <= " + num(excess_final_frac * scale));
  const double floor = -excess_floor_factor * ctx.cfg.solver.el_tol;
  for (const auto& row : rep.rows) {
    c.add(row.excess >= floor, "excess(" + num(row.eps) + ") " + num(row.excess) + " >= " + num(floor));
  }
  bool monotone = true;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    monotone = monotone &&
               std::abs(rep.rows[k].excess) <= (1.0 + excess_monotone_slack) * std::abs(rep.rows[k - 1].excess);
  }
  c.add(monotone, "|excess| non-increasing within 20%");
  runtime(c, seconds, runtime_sweep);
  return c;
}

Check multipliers(Context& ctx) {
  Check c;
  const SweepReport& rep = ctx.get_sweep();
  if (rep.rows.empty()) {
    c.add(false, "empty sweep");
    return c;
  }
  const auto& h = rep.header;
  const auto& last = rep.rows.back();
  const double rel = std::abs(last.lambda - h.lambda0) / h.c_w;
  c.add(rel <= lambda_rel_tol, "lambda " + num(last.lambda) + " vs lambda0 " + num(h.lambda0) + ", rel " + num(rel));
  c.add(last.eps_lambda <= eps_lambda_frac * h.c_w,
        "eps lambda " + num(last.eps_lambda) + " <= " + num(eps_lambda_frac * h.c_w));
  for (const auto& row : rep.rows) {
    c.add(row.lambda >= 0.0 && row.complementarity <= ctx.cfg.solver.kkt_tol,
          "eps " + num(row.eps) + ": lambda " + num(row.lambda) + ", complementarity " + num(row.complementarity));
  }
  return c;
}

Check shifts(Context& ctx) {
  Check c;
  const SweepReport& rep = ctx.get_sweep();
  if (rep.rows.size() < 2) {
    c.add(false, "need at least two eps");
    return c;
  }
  const auto& last = rep.rows.back();
  c.add(std::abs(last.eps_delta) <= eps_delta_frac * ctx.r(),
        "|eps delta| " + num(std::abs(last.eps_delta)) + " <= " + num(eps_delta_frac * ctx.r()));
  for (std::size_t k = rep.rows.size() - 2; k < rep.rows.size(); ++k) {
    const auto& row = rep.rows[k];
    c.add(row.delta >= -ctx.cfg.tol_delta,
          "delta(" + num(row.eps) + ") " + num(row.delta) + " >= " + num(-ctx.cfg.tol_delta));
  }
  return c;
}

Check lower_barrier(Context& ctx) {
  Check c;
  const SweepReport& rep = ctx.get_sweep();
  for (const auto& row : rep.rows) {
    c.add(row.min_w_plus_1 >= row.lower_barrier - barrier_slack,
          "eps " + num(row.eps) + ": min w + 1 " + num(row.min_w_plus_1) + " >= " + num(row.lower_barrier));
  }
  if (rep.rows.empty()) c.add(false, "empty sweep");
  return c;
}

Check recovery_side(Context& ctx) {
  const OptimalProfile& p = ctx.get_profile();
  const AnisotropicNorm& nrm = ctx.get_norm();
  Clock clock;
  Check c;
  RecoveryConfig rc;
  rc.norm = ctx.norm;
  rc.profile = ctx.profile;
  rc.R = ctx.cfg.R;
  rc.r = ctx.r();
  const int n = nrm.dim();
  const double limit = n * nrm.kappa() * p.c_w() * std::pow(rc.r, n - 1);
  std::vector<double> eps, omega;
  std::optional<RecoveryResult> smallest;
  std::string inadmissible;
  for (double e : ctx.cfg.eps) {
    eps.push_back(e);
    omega.push_back(mass_error(rc, e));
    try {
      const RecoveryResult rr = corrected_energy(rc, e);
      smallest = rr;
      c.add(rr.majorant_valid && rr.energy_corr <= rr.majorant * (1.0 + majorant_rounding),
            "eps " + num(e) + ": E_corr " + num(rr.energy_corr) + " <= majorant " + num(rr.majorant));
    } catch (const GeometryError&) {
      inadmissible += (inadmissible.empty() ? "" : ",") + num(e);
    }
  }
  if (!inadmissible.empty()) c.detail += "; correction undefined at eps " + inadmissible;
  for (std::size_t k = 1; k < eps.size(); ++k) {
    const double q0 = std::abs(omega[k - 1]) / (eps[k - 1] * eps[k - 1]);
    const double q1 = std::abs(omega[k]) / (eps[k] * eps[k]);
    const double ratio = std::max(q0 / q1, q1 / q0);
    c.add(ratio <= omega_ratio_max, "omega/eps^2 ratio " + num(ratio));
  }
  try {
    const RateFit fit = fit_rate(eps, omega);
    c.add(fit.exponent >= omega_exponent_min, "|omega| exponent " + num(fit.exponent));
  } catch (const InsufficientDataError& e) {
    c.add(false, e.what());
  }
  if (smallest && smallest->eps == ctx.cfg.eps.back()) {
    c.add(smallest->limsup_quotient <= limsup_frac * limit, "limsup quotient(" + num(smallest->eps) + ") " +
                                                                 num(smallest->limsup_quotient) + " <= " +
                                                                 num(limsup_frac * limit));
  } else {
    c.add(false, "recovery inadmissible at the smallest eps");
  }
  runtime(c, clock.seconds(), runtime_recovery);
  return c;
}

Check geometry(Context&) {
  Check c;
  const auto euclid = AnisotropicNorm::euclidean(2);
  const auto l1 = AnisotropicNorm::weighted_p(1.0, {1.0, 1.0});
  const double r = 0.5;
  for (const auto& [norm, tol, name] : {std::tuple{&euclid, perimeter_tol_euclidean, "euclidean"},
                                        std::tuple{&l1, perimeter_tol_l1, "l1"}}) {
    const double exact = wulff_perimeter(*norm, r);
    const double poly = polygon_perimeter(*norm, r);
    const double rel = std::abs(exact - poly) / poly;
    c.add(rel <= tol, std::string(name) + " perimeter rel " + num(rel));
  }
  const std::vector<std::pair<std::string, AnisotropicNorm>> norms = {
      {"euclidean", euclid},
      {"l1", l1},
      {"linf", AnisotropicNorm::weighted_p(INFINITY, {1.0, 1.0})},
      {"p3", AnisotropicNorm::weighted_p(3.0, {1.0, 2.0})},
      {"ellipse", AnisotropicNorm::ellipse(2, {2.0, 0.5, 0.5, 1.0})},
      {"scaled", AnisotropicNorm::scaled_euclidean(2, 1.7)},
  };
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  double worst_kappa = 0.0, worst_bipolar = 0.0;
  std::string worst_kappa_name, worst_bipolar_name;
  for (const auto& [name, norm] : norms) {
    const double vol = chord_volume_unit_ball(norm);
    const double rel = std::abs(norm.kappa() - vol) / vol;
    if (rel >= worst_kappa) {
      worst_kappa = rel;
      worst_kappa_name = name;
    }
    for (int k = 0; k < 200; ++k) {
      const std::array<double, 2> xi{gauss(rng), gauss(rng)};
      const double phi = norm(xi);
      const double rt = std::abs(norm.bipolar_numeric(xi) - phi) / phi;
      if (rt >= worst_bipolar) {
        worst_bipolar = rt;
        worst_bipolar_name = name;
      }
    }
  }
  c.add(worst_kappa <= kappa_tol, "kappa vs chord volume worst rel " + num(worst_kappa) + " (" + worst_kappa_name + ")");
  c.add(worst_bipolar <= bipolar_tol,
        "bipolar round trip worst rel " + num(worst_bipolar) + " (" + worst_bipolar_name + ")");
  return c;
}

Check rearrangement(Context& ctx) {
  const AnisotropicNorm& nrm = ctx.get_norm();
  const DoubleWell well = make_well(ctx.cfg.well);
  Clock clock;
  Check c;
  int equi = 0, ps = 0, gap = 0, halving = 0;
  double worst_ps = -INFINITY, worst_gap = 0.0, worst_halving = 0.0;
  constexpr int fields = 10;
  for (int s = 1; s <= fields; ++s) {
    const GridField coarse = make_random_field(nrm, ctx.cfg.R, 256, static_cast<std::uint64_t>(s));
    const GridField fine = make_random_field(nrm, ctx.cfg.R, 512, static_cast<std::uint64_t>(s));
    const RadialProfile prof = convex_rearrange(coarse, nrm);
    equi += check_equimeasurability(coarse, prof, nrm).pass ? 1 : 0;
    const PolyaSzegoReport pc = check_polya_szego(coarse, nrm, well);
    const PolyaSzegoReport pf = check_polya_szego(fine, nrm, well);
    const double excess = (pc.energy_rearranged - pc.energy_original) / pc.energy_original;
    worst_ps = std::max(worst_ps, excess);
    ps += excess <= polya_szego_slack ? 1 : 0;
    worst_gap = std::max(worst_gap, pc.w_gap);
    gap += pc.w_gap <= w_gap_max ? 1 : 0;
    const double ratio = pf.w_gap / pc.w_gap;
    worst_halving = std::max(worst_halving, ratio);
    halving += ratio <= 0.5 ? 1 : 0;
  }
  const double seconds = clock.seconds();
  c.add(equi == fields, "equimeasurable " + std::to_string(equi) + "/10");
  c.add(ps == fields, "Polya-Szego " + std::to_string(ps) + "/10, worst relative excess " + num(worst_ps));
  c.add(gap == fields, "W gap <= 2% " + std::to_string(gap) + "/10, worst " + num(worst_gap));
  c.add(halving == fields, "gap halves on 512^2 " + std::to_string(halving) + "/10, worst ratio " + num(worst_halving));
  runtime(c, seconds, runtime_rearrangement);
  return c;
}

Check cross_check(Context& ctx) {
  Check c;
  const OptimalProfile& p = ctx.get_profile();
  const AnisotropicNorm& nrm = ctx.get_norm();
  RecoveryConfig rc;
  rc.norm = ctx.norm;
  rc.profile = ctx.profile;
  rc.R = ctx.cfg.R;
  rc.r = ctx.r();
  const double eps = 0.05;
  const double one_d = recovery_energy(rc, eps);
  const double grid = grid_recovery_energy(nrm, p, rc.R, rc.r, eps, 1024);
  const double rel = std::abs(one_d - grid) / grid;
  c.add(rel <= grid_energy_tol, "1-D " + num(one_d) + " vs grid " + num(grid) + ", rel " + num(rel));
  return c;
}

struct Entry {
  int id;
  const char* name;
  Check (*run)(Context&);
};

constexpr Entry entries[] = {
    {1, "profile identities", profile_identities},
    {2, "1-D minimality", minimality},
    {3, "second-order vanishing", second_order},
    {4, "multiplier limits", multipliers},
    {5, "shift limits", shifts},
    {6, "lower barrier", lower_barrier},
    {7, "recovery side", recovery_side},
    {8, "geometry", geometry},
    {9, "rearrangement", rearrangement},
    {10, "1-D vs 2-D recovery energy", cross_check},
};

}  // namespace

RunConfig reference_config() {
  RunConfig cfg;
  cfg.r = 0.5;
  return cfg;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  Context ctx;
  ctx.jobs = options.jobs;
  std::vector<CriterionResult> out;
  for (const Entry& e : entries) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), e.id) == options.only.end()) {
      continue;
    }
    CriterionResult res;
    res.id = e.id;
    res.name = e.name;
    Clock clock;
    try {
      const Check c = e.run(ctx);
      res.pass = c.pass;
      res.detail = c.detail;
    } catch (const std::exception& ex) {
      res.pass = false;
      res.detail = std::string("error: ") + ex.what();
    }
    res.seconds = clock.seconds();
    out.push_back(std::move(res));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-28s %7.2f s  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace wulff::verify
