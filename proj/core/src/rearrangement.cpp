#include "wulff/rearrangement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

void require_planar(const AnisotropicNorm& norm) {
  if (norm.dim() != 2) throw DomainError("grid rearrangement is implemented for n = 2");
}

double phi2(const AnisotropicNorm& norm, double gx, double gy) {
  const std::array<double, 2> g{gx, gy};
  const double v = norm(g);
  return v * v;
}

// Superlevel-area function mu(t) = |{v_PL > t}| of the piecewise-linear
// interpolant on the grid triangulation. Each triangle contributes a hat
// function of t to mu', so mu' is linear between consecutive nodal values.
// The hats are sampled directly at every break they cover; these samples are
// bounded by 2A/(c - a), so nearly coincident values cause no cancellation.
struct LevelAreas {
  std::vector<double> breaks;            // distinct nodal values, increasing
  std::vector<long double> mu;           // mu(breaks[k]+)
  std::vector<long double> dmu_right;    // mu'(breaks[k]+)
  std::vector<long double> dmu_left;     // mu'(breaks[k]-)
  std::vector<std::pair<double, double>> plateaus;  // (level, area) of flat triangles
};

LevelAreas level_areas(const GridField& f) {
  const std::size_t n = f.size;
  const std::size_t total = n * n;
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.values[a] < f.values[b]; });
  LevelAreas out;
  std::vector<std::size_t> rank(total);
  for (std::size_t k = 0; k < total; ++k) {
    const double v = f.values[order[k]];
    if (out.breaks.empty() || v != out.breaks.back()) out.breaks.push_back(v);
    rank[order[k]] = out.breaks.size() - 1;
  }
  const std::size_t L = out.breaks.size();
  out.dmu_right.assign(L, 0.0L);
  out.dmu_left.assign(L, 0.0L);
  out.mu.assign(L, 0.0L);
  std::vector<long double> drop(L, 0.0L);
  // Breaks [lo, hi) receive p (t - o) / d. Blocks fully covered by a piece
  // get local linear coefficients about their first break; both stay bounded
  // by |p| times the block range over |d| <= 1.
  constexpr std::size_t block = 64;
  const std::size_t nblocks = (L + block - 1) / block;
  std::vector<long double> inner(L, 0.0L), c0(nblocks, 0.0L), c1(nblocks, 0.0L);
  auto add_direct = [&](std::size_t lo, std::size_t hi, long double p, long double o, long double d) {
    for (std::size_t k = lo; k < hi; ++k) inner[k] += p * ((out.breaks[k] - o) / d);
  };
  auto add_linear = [&](std::size_t lo, std::size_t hi, long double p, long double o, long double d) {
    const std::size_t first = (lo + block - 1) / block, last = hi / block;
    if (first >= last) {
      add_direct(lo, hi, p, o, d);
      return;
    }
    add_direct(lo, first * block, p, o, d);
    for (std::size_t q = first; q < last; ++q) {
      const long double t0 = out.breaks[q * block];
      c0[q] += p * ((t0 - o) / d);
      c1[q] += p / d;
    }
    add_direct(last * block, hi, p, o, d);
  };
  const long double area = 0.5L * f.h() * f.h();
  auto triangle = [&](std::size_t p, std::size_t q, std::size_t s) {
    std::array<std::size_t, 3> v{p, q, s};
    std::sort(v.begin(), v.end(), [&](std::size_t x, std::size_t y) { return rank[x] < rank[y]; });
    const long double a = f.values[v[0]], b = f.values[v[1]], c = f.values[v[2]];
    const std::size_t ra = rank[v[0]], rb = rank[v[1]], rc = rank[v[2]];
    if (ra == rc) {
      drop[ra] += area;
      out.plateaus.emplace_back(static_cast<double>(a), static_cast<double>(area));
      return;
    }
    // mu_T' is 0 at a, -2A/(c-a) at b, 0 at c, linear in between.
    const long double peak = -2.0L * area / (c - a);
    if (ra == rb) out.dmu_right[ra] += peak;
    if (rb == rc) {
      out.dmu_left[rc] += peak;
      add_linear(ra + 1, rb, peak, a, b - a);
      return;
    }
    if (rb > ra) add_linear(ra + 1, rb + 1, peak, a, b - a);
    if (rc > rb + 1) add_linear(rb + 1, rc, peak, c, b - c);
  };
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t p00 = j * n + i, p10 = p00 + 1, p01 = p00 + n, p11 = p01 + 1;
      triangle(p00, p10, p11);
      triangle(p00, p11, p01);
    }
  }
  for (std::size_t k = 0; k < L; ++k) {
    const std::size_t q = k / block;
    const long double t0 = out.breaks[q * block];
    const long double d = inner[k] + c0[q] + c1[q] * (out.breaks[k] - t0);
    out.dmu_right[k] += d;
    out.dmu_left[k] += d;
  }
  // mu vanishes above the maximum; integrate downwards, adding plateau areas
  // when passing below their level.
  for (std::size_t k = L - 1; k-- > 0;) {
    const long double dt = static_cast<long double>(out.breaks[k + 1]) - out.breaks[k];
    out.mu[k] = out.mu[k + 1] + drop[k + 1] - 0.5L * (out.dmu_right[k] + out.dmu_left[k + 1]) * dt;
  }
  return out;
}

}  // namespace

GridField make_grid_field(const AnisotropicNorm& norm, double R, std::size_t size,
                          const std::function<double(double, double)>& f) {
  require_planar(norm);
  if (size < 8) throw DomainError("grid needs at least 8 nodes per side");
  if (!(R > 0.0)) throw DomainError("R must be positive");
  GridField g;
  g.size = size;
  g.R = R;
  const std::array<double, 2> e1{1.0, 0.0}, e2{0.0, 1.0};
  g.half_width = 1.05 * R * std::max(norm(e1), norm(e2));
  g.values.assign(size * size, 0.0);
  for (std::size_t j = 0; j < size; ++j) {
    for (std::size_t i = 0; i < size; ++i) {
      const std::array<double, 2> x{g.coord(i), g.coord(j)};
      if (norm.polar(x) >= R) continue;
      const double v = f(x[0], x[1]);
      if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("grid field must be finite and nonnegative");
      g.values[j * size + i] = v;
    }
  }
  return g;
}

GridField make_random_field(const AnisotropicNorm& norm, double R, std::size_t size, std::uint64_t seed) {
  require_planar(norm);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Gauss {
    double x, y, width, amp;
  };
  const int count = 2 + static_cast<int>(unit(rng) * 4.0);
  std::vector<Gauss> bumps;
  while (static_cast<int>(bumps.size()) < count) {
    const double x = (2.0 * unit(rng) - 1.0) * R;
    const double y = (2.0 * unit(rng) - 1.0) * R;
    const std::array<double, 2> c{x, y};
    if (norm.polar(c) > 0.7 * R) continue;
    bumps.push_back({x, y, (0.12 + 0.2 * unit(rng)) * R, 0.3 + 0.7 * unit(rng)});
  }
  return make_grid_field(norm, R, size, [&](double x, double y) {
    const std::array<double, 2> p{x, y};
    const double s = norm.polar(p) / R;
    const double cut = s < 1.0 ? (1.0 - s * s) * (1.0 - s * s) : 0.0;
    double v = 0.0;
    for (const auto& b : bumps) {
      const double d2 = (x - b.x) * (x - b.x) + (y - b.y) * (y - b.y);
      v += b.amp * std::exp(-d2 / (2.0 * b.width * b.width));
    }
    return v * cut;
  });
}

std::vector<double> distribution(const GridField& field, const std::vector<double>& levels) {
  const double cell = field.h() * field.h();
  std::vector<double> out;
  out.reserve(levels.size());
  for (double t : levels) {
    if (!(t > 0.0)) throw DomainError("distribution levels must be positive");
    const auto count = std::count_if(field.values.begin(), field.values.end(), [t](double v) { return v > t; });
    out.push_back(static_cast<double>(count) * cell);
  }
  return out;
}

double RadialProfile::operator()(double r) const {
  if (rho.empty()) return 0.0;
  if (r <= rho.front()) return value.front();
  if (r >= rho.back()) return 0.0;
  auto it = std::upper_bound(rho.begin(), rho.end(), r);
  const std::size_t k = static_cast<std::size_t>(it - rho.begin());
  const double s = (r - rho[k - 1]) / (rho[k] - rho[k - 1]);
  return value[k - 1] + s * (value[k] - value[k - 1]);
}

double RadialProfile::superlevel_area(double t) const {
  if (value.empty() || value.front() <= t) return 0.0;
  // value is nonincreasing: find the last node with value > t.
  auto it = std::partition_point(value.begin(), value.end(), [t](double v) { return v > t; });
  const std::size_t k = static_cast<std::size_t>(it - value.begin());
  double r;
  if (k == value.size()) {
    r = rho.back();
  } else {
    const double v0 = value[k - 1], v1 = value[k];
    r = rho[k - 1] + (v0 - t) / (v0 - v1) * (rho[k] - rho[k - 1]);
  }
  return kappa * r * r;
}

RadialProfile convex_rearrange(const GridField& field, const AnisotropicNorm& norm) {
  require_planar(norm);
  RadialProfile p;
  p.kappa = norm.kappa();
  p.value = field.values;
  std::sort(p.value.begin(), p.value.end(), std::greater<>());
  const double cell = field.h() * field.h();
  p.rho.resize(p.value.size());
  for (std::size_t k = 0; k < p.value.size(); ++k) {
    p.rho[k] = std::sqrt((static_cast<double>(k) + 0.5) * cell / p.kappa);
  }
  return p;
}

PolyaSzegoReport check_polya_szego(const GridField& field, const AnisotropicNorm& norm, const DoubleWell& well) {
  require_planar(norm);
  PolyaSzegoReport rep;
  const std::size_t n = field.size;
  const double h = field.h();
  auto v = [&](long i, long j) {
    if (i < 0 || j < 0 || i >= static_cast<long>(n) || j >= static_cast<long>(n)) return 0.0;
    return field.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  for (long j = 0; j < static_cast<long>(n); ++j) {
    for (long i = 0; i < static_cast<long>(n); ++i) {
      const double gx = (v(i + 1, j) - v(i - 1, j)) / (2.0 * h);
      const double gy = (v(i, j + 1) - v(i, j - 1)) / (2.0 * h);
      rep.energy_original += phi2(norm, gx, gy) * h * h;
      rep.w_integral_original += well(1.0 - v(i, j)) * h * h;
    }
  }
  for (long j = 0; j + 1 < static_cast<long>(n); ++j) {
    for (long i = 0; i + 1 < static_cast<long>(n); ++i) {
      const double v00 = v(i, j), v10 = v(i + 1, j), v01 = v(i, j + 1), v11 = v(i + 1, j + 1);
      rep.energy_original_pl += 0.5 * h * h * phi2(norm, (v10 - v00) / h, (v11 - v10) / h);
      rep.energy_original_pl += 0.5 * h * h * phi2(norm, (v11 - v01) / h, (v01 - v00) / h);
    }
  }

  const LevelAreas mu = level_areas(field);
  const QuadratureRule& gl = gauss_legendre(6);
  const double kap = norm.kappa();
  long double energy = 0.0L, wint = 0.0L;
  for (std::size_t k = 0; k + 1 < mu.breaks.size(); ++k) {
    const double a = mu.breaks[k], b = mu.breaks[k + 1];
    if (b <= 0.0) continue;
    const double lo = std::max(a, 0.0);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const long double t = 0.5L * (lo + b) + 0.5L * (b - lo) * gl.nodes[q];
      const long double wq = 0.5L * (b - lo) * gl.weights[q];
      const long double s = (t - a) / (static_cast<long double>(b) - a);
      const long double d0 = mu.dmu_right[k], d1 = mu.dmu_left[k + 1];
      const long double m = mu.mu[k] + (t - a) * (d0 + 0.5L * s * (d1 - d0));
      const long double dm = d0 + s * (d1 - d0);
      if (dm < 0.0L) energy += wq * 4.0L * kap * std::max(m, 0.0L) / -dm;
      wint += wq * static_cast<long double>(well(1.0 - static_cast<double>(t))) * std::abs(dm);
    }
  }
  for (const auto& [level, area] : mu.plateaus) {
    if (level > 0.0) wint += static_cast<long double>(well(1.0 - level)) * area;
  }
  rep.energy_rearranged = static_cast<double>(energy);
  rep.w_integral_rearranged = static_cast<double>(wint);
  // Nodes outside the triangulated square carry v = 0 and W(1) = 0, so both
  // integrals cover the same set.
  rep.w_gap = std::abs(rep.w_integral_rearranged - rep.w_integral_original) /
              std::max(std::abs(rep.w_integral_original), 1e-300);
  return rep;
}

EquimeasurabilityReport check_equimeasurability(const GridField& field, const RadialProfile& profile,
                                                const AnisotropicNorm& norm, std::size_t levels) {
  EquimeasurabilityReport rep;
  const double vmax = *std::max_element(field.values.begin(), field.values.end());
  if (!(vmax > 0.0)) {
    rep.pass = true;
    return rep;
  }
  for (std::size_t k = 1; k <= levels; ++k) rep.levels.push_back(vmax * static_cast<double>(k) / (levels + 1.0));
  rep.area_in = distribution(field, rep.levels);
  const double perim_unit = euclidean_perimeter_unit_ball(norm);
  const double h = field.h();
  rep.pass = true;
  for (std::size_t k = 0; k < rep.levels.size(); ++k) {
    rep.area_out.push_back(profile.superlevel_area(rep.levels[k]));
    const double radius = std::sqrt(std::max(rep.area_in[k], h * h) / norm.kappa());
    rep.tolerance.push_back(2.0 * h * perim_unit * radius);
    if (std::abs(rep.area_in[k] - rep.area_out[k]) > rep.tolerance[k]) rep.pass = false;
  }
  return rep;
}

}  // namespace wulff
