#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "wulff/config.hpp"
#include "wulff/errors.hpp"
#include "wulff/sweep.hpp"

using namespace wulff;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wulff-unit-" + name);
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config("{}");
  CHECK(c.norm.kind == "euclidean");
  CHECK(c.well.beta == 1.5);
  CHECK(c.eps.size() == 4);
  CHECK(resolve_radius(c, make_norm(c.norm)) == 0.5);
}

TEST_CASE("full document") {
  const RunConfig c = parse_config(R"({
    "norm": {"kind": "weighted_p", "n": 2, "p": "inf", "weights": [1, 2]},
    "well": {"beta": 1.25, "a": 0.4, "bridge": "even_poly"},
    "geometry": {"R": 2.0, "m": 1.0},
    "eps": [0.2, 0.1, 0.05],
    "solver": {"el_tol": 1e-7, "tol_delta": 0.1},
    "recovery": {"y0": [0.1, 0.0], "delta": 0.3},
    "output": {"dir": "out"},
    "seed": 7
  })");
  CHECK(std::isinf(c.norm.p));
  CHECK(c.well.a == 0.4);
  CHECK(c.solver.el_tol == 1e-7);
  CHECK(c.tol_delta == 0.1);
  CHECK(c.out_dir == "out");
  CHECK(c.seed == 7);
  const auto norm = make_norm(c.norm);
  CHECK(resolve_radius(c, norm) == doctest::Approx(radius_from_mass(norm, norm.kappa() * 4.0, 1.0)));
  // The echo parses back to the same echo.
  CHECK(config_echo(parse_config(config_echo(c))) == config_echo(c));
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"nrom": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"norm": {"kind": "euclidean", "extra": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"eps": "small"})"), ConfigError);
  CHECK_THROWS_AS(make_norm(parse_config(R"({"norm": {"kind": "hexagon"}})").norm), ConfigError);
  CHECK_THROWS_AS(make_well(parse_config(R"({"well": {"bridge": "cubic"}})").well), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/wulff.json"), IoError);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(validate(parse_config(R"({"eps": [0.1, 0.2]})")), ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"eps": [0.1, -0.2]})")), ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"geometry": {"r": 0.3, "m": 0.1}})")), ConfigError);
  CHECK_THROWS_AS(validate(parse_config(R"({"solver": {"el_tol": 0}})")), ConfigError);
  validate(parse_config(R"({"eps": []})"));
  const auto e = AnisotropicNorm::euclidean(2);
  CHECK_THROWS_AS(resolve_radius(parse_config(R"({"geometry": {"m": 3.2}})"), e), ConstraintError);
  CHECK_THROWS_AS(resolve_radius(parse_config(R"({"geometry": {"m": -3.2}})"), e), ConstraintError);
  CHECK_THROWS_AS(resolve_radius(parse_config(R"({"geometry": {"r": 1.0}})"), e), ConstraintError);
}

TEST_CASE("rate fits") {
  std::vector<double> x{0.1, 0.05, 0.025, 0.0125}, y, c;
  for (double v : x) {
    y.push_back(3.0 * v * v);
    c.push_back(-0.7);
  }
  const auto f = fit_rate(x, y);
  CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(f.prefactor == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(std::abs(fit_rate(x, c).exponent) <= 1e-12);
  CHECK_THROWS_AS(fit_rate({0.1, 0.05}, {1.0, 2.0}), InsufficientDataError);
  CHECK_THROWS_AS(fit_rate({0.1, 0.05, 0.025}, {1.0, 0.0, 2.0}), InsufficientDataError);
}

TEST_CASE("format names and numbers") {
  CHECK(parse_format("csv") == OutputFormat::csv);
  CHECK(parse_format("plotdata") == OutputFormat::plotdata);
  CHECK_THROWS_AS(parse_format("xlsx"), UsageError);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("empty sweep") {
  const RunConfig c = parse_config(R"({"eps": []})");
  const auto rep = run_sweep(c, 1);
  CHECK(rep.rows.empty());
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("# wulff-sweep-csv v1\n", 0) == 0);
  CHECK(csv.find("# rate excess unavailable") != std::string::npos);
  const auto dir = scratch("empty");
  const auto files = emit(rep, OutputFormat::plotdata, dir.string());
  CHECK_FALSE(files.empty());
  for (const auto& f : files) CHECK(fs::exists(f));
  fs::remove_all(dir);
}

TEST_CASE("sweep output is deterministic") {
  const RunConfig c = parse_config(R"({"eps": [0.1, 0.05, 0.025]})");
  const auto a = run_sweep(c, 1);
  const auto b = run_sweep(c, 3);
  REQUIRE(a.complete);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(to_csv(a).find("# rate excess exponent") != std::string::npos);
  CHECK(a.header.lambda0 == doctest::Approx(a.header.c_w / (2.0 * 0.5)));
  for (const auto& row : a.rows) CHECK(row.lambda > 0.0);
}

TEST_CASE("unwritable output directory") {
  const auto base = scratch("file");
  { std::ofstream(base) << "x"; }
  const RunConfig c = parse_config(R"({"eps": []})");
  CHECK_THROWS_AS(emit(run_sweep(c, 1), OutputFormat::csv, (base / "sub").string()), IoError);
  fs::remove(base);
}
