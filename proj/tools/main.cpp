#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wulff/config.hpp"
#include "wulff/errors.hpp"
#include "wulff/profile.hpp"
#include "wulff/radial_solver.hpp"
#include "wulff/rearrangement.hpp"
#include "wulff/recovery.hpp"
#include "wulff/sweep.hpp"
#include "wulff/verify/acceptance.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wulff;

enum Exit : int {
  ok = 0,
  check_failed = 1,
  usage = 2,
  config = 3,
  numerical = 4,
  io = 5,
};

struct Common {
  std::string config_path;
  std::string out;
  std::string eps;
  std::size_t jobs = 0;
  std::string format = "csv";
};

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--eps expects a comma-separated list of numbers, got '" + item + "'");
    }
  }
  return out;
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? parse_config("{}") : load_config(c.config_path);
  if (!c.eps.empty()) cfg.eps = parse_eps_list(c.eps);
  validate(cfg);
  return cfg;
}

std::string out_dir(const Common& c, const RunConfig& cfg) {
  if (!c.out.empty()) return c.out;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("WULFF_OUT_DIR"); env && *env) return env;
  return "wulff-out";
}

void write_text(const std::string& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + p.string() + "'");
  std::printf("wrote %s\n", p.string().c_str());
}

std::string header(const char* kind, const RunConfig& cfg) {
  return std::string("# wulff-") + kind + "-csv v1\n# config " + config_echo(cfg) + "\n";
}

struct Setup {
  std::shared_ptr<const AnisotropicNorm> norm;
  std::shared_ptr<const OptimalProfile> profile;
  double r = 0.0;
};

Setup setup(const RunConfig& cfg) {
  Setup s;
  s.norm = std::make_shared<const AnisotropicNorm>(make_norm(cfg.norm));
  s.r = resolve_radius(cfg, *s.norm);
  s.profile = std::make_shared<const OptimalProfile>(build_profile(make_well(cfg.well), cfg.profile_intervals));
  return s;
}

int cmd_profile(const Common& c) {
  const RunConfig cfg = load(c);
  const auto prof = build_profile(make_well(cfg.well), cfg.profile_intervals);
  const auto eq = equipartition(prof);
  std::printf("c_W %s\ntau_W %s\nint W(z) %s\nint z'^2 %s\node residual %s\n", format_number(prof.c_w()).c_str(),
              format_number(prof.tau()).c_str(), format_number(eq.potential).c_str(),
              format_number(eq.gradient).c_str(), format_number(ode_residual(prof)).c_str());
  std::string text = header("profile", cfg) + "t,z,dz\n";
  for (const auto& row : prof.full_table()) {
    text += format_number(row[0]) + "," + format_number(row[1]) + "," + format_number(row[2]) + "\n";
  }
  write_text(out_dir(c, cfg), "profile.csv", text);
  return ok;
}

int cmd_solve(const Common& c) {
  const RunConfig cfg = load(c);
  const Setup s = setup(cfg);
  const std::string dir = out_dir(c, cfg);
  bool all = true;
  for (double eps : cfg.eps) {
    const RadialProblem problem = make_radial_problem(s.profile, *s.norm, cfg.R, s.r, eps, cfg.grid);
    const RadialSolveResult res = minimize(problem, cfg.solver);
    all = all && res.converged;
    std::printf("eps %s converged %d lambda %s delta %s excess %s el_residual %s\n", format_number(eps).c_str(),
                res.converged ? 1 : 0, format_number(res.lambda).c_str(), format_number(res.delta).c_str(),
                format_number(excess(problem, res)).c_str(), format_number(res.el_residual).c_str());
    std::string text = header("solve", cfg) + "# eps " + format_number(eps) + " lambda " +
                       format_number(res.lambda) + "\nt,rho,w,el_defect\n";
    for (std::size_t i = 0; i < problem.size(); ++i) {
      text += format_number(problem.t_of(i)) + "," + format_number(problem.rho[i]) + "," + format_number(res.w[i]) +
              "," + format_number(res.el_defect[i]) + "\n";
    }
    write_text(dir, "solve_eps" + format_number(eps) + ".csv", text);
  }
  return all ? ok : check_failed;
}

int cmd_sweep(const Common& c) {
  const RunConfig cfg = load(c);
  const OutputFormat fmt = parse_format(c.format);
  const SweepReport rep = run_sweep(cfg, c.jobs);
  for (const auto& path : emit(rep, fmt, out_dir(c, cfg))) std::printf("wrote %s\n", path.c_str());
  if (!rep.complete) std::fprintf(stderr, "sweep incomplete: a radial solve did not converge\n");
  return rep.complete ? ok : check_failed;
}

int cmd_recover(const Common& c) {
  const RunConfig cfg = load(c);
  const Setup s = setup(cfg);
  RecoveryConfig rc;
  rc.norm = s.norm;
  rc.profile = s.profile;
  rc.R = cfg.R;
  rc.r = s.r;
  rc.y0 = cfg.y0;
  rc.delta = cfg.delta;
  validate(rc);
  std::string text = header("recover", cfg) +
                     "eps,admissible,omega,omega_over_eps2,energy_hat,energy_corr,energy_total,limsup_quotient,"
                     "majorant,mass_defect\n";
  for (double eps : cfg.eps) {
    std::vector<double> v(8, std::numeric_limits<double>::quiet_NaN());
    bool admissible = false;
    try {
      v[0] = mass_error(rc, eps);
      v[1] = v[0] / (eps * eps);
      const RecoveryResult rr = corrected_energy(rc, eps);
      admissible = true;
      v = {rr.omega, rr.omega_over_eps2, rr.energy_hat, rr.energy_corr, rr.energy_total, rr.limsup_quotient,
           rr.majorant, feasibility_check(rc, eps).mass_defect};
    } catch (const GeometryError& e) {
      std::fprintf(stderr, "eps %s: %s\n", format_number(eps).c_str(), e.what());
    }
    text += format_number(eps) + "," + (admissible ? "1" : "0");
    for (double x : v) text += "," + format_number(x);
    text += "\n";
  }
  write_text(out_dir(c, cfg), "recover.csv", text);
  return ok;
}

int cmd_rearrange(const Common& c, std::size_t size) {
  const RunConfig cfg = load(c);
  const AnisotropicNorm norm = make_norm(cfg.norm);
  const DoubleWell well = make_well(cfg.well);
  const GridField field = make_random_field(norm, cfg.R, size, cfg.seed);
  const RadialProfile prof = convex_rearrange(field, norm);
  const auto eq = check_equimeasurability(field, prof, norm);
  const auto ps = check_polya_szego(field, norm, well);
  std::printf("equimeasurable %d\nenergy original %s\nenergy original (P1) %s\nenergy rearranged %s\nW gap %s\n",
              eq.pass ? 1 : 0, format_number(ps.energy_original).c_str(),
              format_number(ps.energy_original_pl).c_str(), format_number(ps.energy_rearranged).c_str(),
              format_number(ps.w_gap).c_str());
  std::string text = header("rearrange", cfg) + "# size " + std::to_string(size) + "\nrho,v\n";
  const std::size_t stride = std::max<std::size_t>(1, prof.rho.size() / 4096);
  for (std::size_t k = 0; k < prof.rho.size(); k += stride) {
    text += format_number(prof.rho[k]) + "," + format_number(prof.value[k]) + "\n";
  }
  write_text(out_dir(c, cfg), "rearrange.csv", text);
  const bool pass = eq.pass && ps.energy_rearranged <= ps.energy_original * (1.0 + 1e-3);
  return pass ? ok : check_failed;
}

int cmd_check(const Common& c) {
  verify::AcceptanceOptions opts;
  opts.jobs = c.jobs;
  const auto results = verify::run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", verify::format_result(r).c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? ok : check_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffuse-interface energies on Wulff balls: profiles, radial minimizers, recovery sequences"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON run configuration");
    sub->add_option("--out", common.out, "Output directory (default: $WULFF_OUT_DIR or ./wulff-out)");
    sub->add_option("--eps", common.eps, "Comma-separated eps list, overrides the config");
    sub->add_option("--jobs", common.jobs, "Worker threads (0 = hardware concurrency)");
    sub->add_option("--format", common.format, "csv or plotdata");
  };
  auto* profile = app.add_subcommand("profile", "Optimal profile table and identities");
  auto* solve = app.add_subcommand("solve", "Radial constrained minimizer for each eps");
  auto* sweep = app.add_subcommand("sweep", "Full eps sweep with rate fits");
  auto* recover = app.add_subcommand("recover", "Recovery sequence energies and mass errors");
  auto* rearrange = app.add_subcommand("rearrange", "Convex rearrangement of a seeded random field");
  auto* check = app.add_subcommand("check", "Run the acceptance suite");
  std::size_t size = 256;
  rearrange->add_option("--size", size, "Grid nodes per side")->check(CLI::Range(8, 4096));
  for (auto* sub : {profile, solve, sweep, recover, rearrange, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (profile->parsed()) return cmd_profile(common);
    if (solve->parsed()) return cmd_solve(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (recover->parsed()) return cmd_recover(common);
    if (rearrange->parsed()) return cmd_rearrange(common, size);
    if (check->parsed()) return cmd_check(common);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return usage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return config;
  } catch (const ConstraintError& e) {
    std::fprintf(stderr, "constraint error: %s\n", e.what());
    return config;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return io;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return numerical;
  }
  return usage;
}
