#include "wulff/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "wulff/errors.hpp"

namespace wulff {

namespace {

using nlohmann::json;

void allow_keys(const json& obj, const char* where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

double read_exponent(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw ConfigError("norm.p must be a number or \"inf\"");
  }
  if (!v.is_number()) throw ConfigError("norm.p must be a number or \"inf\"");
  return v.get<double>();
}

NormSpec parse_norm(const json& j) {
  allow_keys(j, "norm", {"kind", "n", "scale", "p", "weights", "matrix", "directions", "values"});
  NormSpec s;
  read(j, "kind", s.kind);
  read(j, "n", s.n);
  read(j, "scale", s.scale);
  if (j.contains("p")) s.p = read_exponent(j.at("p"));
  read(j, "weights", s.weights);
  read(j, "matrix", s.matrix);
  read(j, "directions", s.directions);
  read(j, "values", s.values);
  return s;
}

WellSpec parse_well(const json& j) {
  allow_keys(j, "well", {"beta", "a", "bridge", "mu"});
  WellSpec s;
  read(j, "beta", s.beta);
  read(j, "a", s.a);
  read(j, "bridge", s.bridge);
  read(j, "mu", s.mu);
  return s;
}

json norm_json(const NormSpec& s) {
  json j;
  j["kind"] = s.kind;
  j["n"] = s.n;
  if (s.kind == "scaled") j["scale"] = s.scale;
  if (s.kind == "weighted_p") {
    j["p"] = std::isinf(s.p) ? json("inf") : json(s.p);
    j["weights"] = s.weights;
  }
  if (s.kind == "ellipse") j["matrix"] = s.matrix;
  if (s.kind == "sampled") {
    j["directions"] = s.directions;
    j["values"] = s.values;
  }
  return j;
}

}  // namespace

AnisotropicNorm make_norm(const NormSpec& s) {
  if (s.kind == "euclidean") return AnisotropicNorm::euclidean(s.n);
  if (s.kind == "scaled") return AnisotropicNorm::scaled_euclidean(s.n, s.scale);
  if (s.kind == "weighted_p") {
    auto w = s.weights.empty() ? std::vector<double>(static_cast<std::size_t>(s.n), 1.0) : s.weights;
    if (static_cast<int>(w.size()) != s.n) throw ConfigError("norm.weights must have n entries");
    return AnisotropicNorm::weighted_p(s.p, std::move(w));
  }
  if (s.kind == "ellipse") return AnisotropicNorm::ellipse(s.n, s.matrix);
  if (s.kind == "sampled") {
    if (s.n != 2) throw ConfigError("sampled norms are two-dimensional");
    return AnisotropicNorm::sampled(s.directions, s.values);
  }
  throw ConfigError("unknown norm kind '" + s.kind + "'");
}

DoubleWell make_well(const WellSpec& s) {
  if (s.bridge == "even-poly" || s.bridge == "even_poly") return DoubleWell(s.beta, s.a);
  if (s.bridge == "constant") return DoubleWell::with_constant_bridge(s.beta, s.a, s.mu);
  throw ConfigError("unknown bridge '" + s.bridge + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  allow_keys(j, "config",
             {"norm", "well", "geometry", "eps", "grid", "solver", "recovery", "profile_intervals", "output", "seed"});
  RunConfig c;
  if (j.contains("norm")) c.norm = parse_norm(j.at("norm"));
  if (j.contains("well")) c.well = parse_well(j.at("well"));
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    allow_keys(g, "geometry", {"R", "r", "m"});
    read(g, "R", c.R);
    if (g.contains("r")) {
      double r = 0.0;
      read(g, "r", r);
      c.r = r;
    }
    if (g.contains("m")) {
      double m = 0.0;
      read(g, "m", m);
      c.m = m;
    }
  }
  read(j, "eps", c.eps);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    allow_keys(g, "grid", {"layer_halfwidth", "points_per_eps", "growth", "max_spacing"});
    read(g, "layer_halfwidth", c.grid.layer_halfwidth);
    read(g, "points_per_eps", c.grid.points_per_eps);
    read(g, "growth", c.grid.growth);
    read(g, "max_spacing", c.grid.max_spacing);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    allow_keys(s, "solver",
               {"grad_tol", "el_tol", "kkt_tol", "mass_tol", "tol_delta", "penalty", "max_outer", "max_inner"});
    read(s, "grad_tol", c.solver.grad_tol);
    read(s, "el_tol", c.solver.el_tol);
    read(s, "kkt_tol", c.solver.kkt_tol);
    read(s, "mass_tol", c.solver.mass_tol);
    read(s, "tol_delta", c.tol_delta);
    read(s, "penalty", c.solver.penalty);
    read(s, "max_outer", c.solver.max_outer);
    read(s, "max_inner", c.solver.max_inner);
  }
  if (j.contains("recovery")) {
    const auto& r = j.at("recovery");
    allow_keys(r, "recovery", {"y0", "delta"});
    read(r, "y0", c.y0);
    read(r, "delta", c.delta);
  }
  read(j, "profile_intervals", c.profile_intervals);
  if (j.contains("output")) {
    const auto& o = j.at("output");
    allow_keys(o, "output", {"dir"});
    read(o, "dir", c.out_dir);
  }
  read(j, "seed", c.seed);
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] > 0.0)) throw ConfigError("eps values must be positive");
    if (i > 0 && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("eps list must be strictly decreasing");
  }
  const double tols[] = {c.solver.grad_tol, c.solver.el_tol, c.solver.kkt_tol, c.solver.mass_tol, c.tol_delta,
                         c.solver.penalty};
  for (double t : tols) {
    if (!(t > 0.0)) throw ConfigError("tolerances and penalty must be positive");
  }
  if (c.r && c.m) throw ConfigError("geometry takes r or m, not both");
  if (!(c.R > 0.0)) throw ConfigError("geometry.R must be positive");
  if (c.profile_intervals < 16) throw ConfigError("profile_intervals must be at least 16");
  if (!(c.grid.points_per_eps > 0.0 && c.grid.growth >= 1.0 && c.grid.max_spacing > 0.0 &&
        c.grid.layer_halfwidth > 0.0)) {
    throw ConfigError("invalid grid parameters");
  }
}

double resolve_radius(const RunConfig& c, const AnisotropicNorm& norm) {
  const double volume = norm.kappa() * std::pow(c.R, norm.dim());
  if (c.m) {
    if (!(*c.m > -volume && *c.m < volume)) throw ConstraintError("mass must satisfy -|Omega| < m < |Omega|");
    return radius_from_mass(norm, volume, *c.m);
  }
  const double r = c.r.value_or(0.5 * c.R);
  if (!(r > 0.0 && r < c.R)) throw ConstraintError("geometry.r must lie in (0, R)");
  return r;
}

std::string config_echo(const RunConfig& c) {
  json j;
  j["norm"] = norm_json(c.norm);
  json well{{"beta", c.well.beta}, {"a", c.well.a}, {"bridge", c.well.bridge}};
  if (c.well.bridge == "constant") well["mu"] = c.well.mu;
  j["well"] = well;
  json geo{{"R", c.R}};
  if (c.m) geo["m"] = *c.m;
  else geo["r"] = c.r.value_or(0.5 * c.R);
  j["geometry"] = geo;
  j["eps"] = c.eps;
  j["grid"] = {{"layer_halfwidth", c.grid.layer_halfwidth},
               {"points_per_eps", c.grid.points_per_eps},
               {"growth", c.grid.growth},
               {"max_spacing", c.grid.max_spacing}};
  j["solver"] = {{"grad_tol", c.solver.grad_tol}, {"el_tol", c.solver.el_tol},   {"kkt_tol", c.solver.kkt_tol},
                 {"mass_tol", c.solver.mass_tol}, {"tol_delta", c.tol_delta},     {"penalty", c.solver.penalty},
                 {"max_outer", c.solver.max_outer}, {"max_inner", c.solver.max_inner}};
  j["recovery"] = {{"y0", c.y0}, {"delta", c.delta}};
  j["profile_intervals"] = c.profile_intervals;
  j["seed"] = c.seed;
  return j.dump();
}

}  // namespace wulff
