#include "wulff/anisotropy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "wulff/errors.hpp"
#include "wulff/quadrature.hpp"

namespace wulff {

namespace {

constexpr double kPi = std::numbers::pi;

double euclid(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

void require_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite vector component");
  }
}

// Volume of the unit l^q ball in R^n.
double lq_ball_volume(int n, double q) {
  if (std::isinf(q)) return std::pow(2.0, n);
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / q), n) / std::tgamma(1.0 + n / q);
}

double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Scaled l^p norm, robust against overflow for large p.
double lp_norm(std::span<const double> x, double p) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0 || std::isinf(p)) return m;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::scaled_euclidean: return "scaled-euclidean";
    case NormKind::weighted_p: return "weighted-p";
    case NormKind::ellipse: return "ellipse";
    case NormKind::sampled: return "sampled";
  }
  return "unknown";
}

DirectionMesh::DirectionMesh(int dim, std::size_t count) : dim_(dim), count_(count) {
  if (dim < 2) throw DomainError("direction mesh needs dimension >= 2");
  if (count == 0) throw ConfigError("empty direction mesh");
  coords_.resize(count * static_cast<std::size_t>(dim));
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
      coords_[2 * k] = std::cos(th);
      coords_[2 * k + 1] = std::sin(th);
    }
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ph = golden * static_cast<double>(k);
      coords_[3 * k] = s * std::cos(ph);
      coords_[3 * k + 1] = s * std::sin(ph);
      coords_[3 * k + 2] = z;
    }
  } else {
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(dim));
    std::normal_distribution<double> g;
    for (std::size_t k = 0; k < count; ++k) {
      double* u = coords_.data() + k * static_cast<std::size_t>(dim);
      double nrm = 0.0;
      while (nrm < 1e-12) {
        for (int i = 0; i < dim; ++i) u[i] = g(rng);
        nrm = euclid({u, static_cast<std::size_t>(dim)});
      }
      for (int i = 0; i < dim; ++i) u[i] /= nrm;
    }
  }
}

DirectionMesh DirectionMesh::standard(int dim) {
  return DirectionMesh(dim, dim == 2 ? std::size_t{1} << 12 : std::size_t{1} << 14);
}

AnisotropicNorm AnisotropicNorm::euclidean(int dim) {
  if (dim < 2) throw DomainError("dimension must be >= 2");
  AnisotropicNorm n;
  n.kind_ = NormKind::euclidean;
  n.dim_ = dim;
  n.finalize();
  return n;
}

AnisotropicNorm AnisotropicNorm::scaled_euclidean(int dim, double c) {
  if (dim < 2) throw DomainError("dimension must be >= 2");
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("scale must be a positive real");
  AnisotropicNorm n;
  n.kind_ = NormKind::scaled_euclidean;
  n.dim_ = dim;
  n.c_ = c;
  n.finalize();
  return n;
}

AnisotropicNorm AnisotropicNorm::weighted_p(double p, std::vector<double> weights) {
  if (weights.size() < 2) throw DomainError("dimension must be >= 2");
  if (!(p >= 1.0)) throw ConfigError("weighted-p norm needs p >= 1");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("weights must be positive reals");
  }
  AnisotropicNorm n;
  n.kind_ = NormKind::weighted_p;
  n.dim_ = static_cast<int>(weights.size());
  n.p_ = p;
  n.weights_ = std::move(weights);
  n.finalize();
  return n;
}

AnisotropicNorm AnisotropicNorm::ellipse(int dim, std::vector<double> q) {
  if (dim < 2) throw DomainError("dimension must be >= 2");
  const auto d = static_cast<std::size_t>(dim);
  if (q.size() != d * d) throw ConfigError("ellipse matrix must be dim x dim");
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = q[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
  }
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * m.cwiseAbs().maxCoeff()) {
    throw ConfigError("ellipse matrix must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw ConfigError("ellipse matrix must be positive definite");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));
  AnisotropicNorm n;
  n.kind_ = NormKind::ellipse;
  n.dim_ = dim;
  n.q_ = std::move(q);
  n.q_inv_.resize(d * d);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      n.q_inv_[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] = 0.5 * (inv(i, j) + inv(j, i));
    }
  }
  n.q_det_ = m.determinant();
  n.finalize();
  return n;
}

AnisotropicNorm AnisotropicNorm::sampled(std::vector<std::array<double, 2>> directions,
                                         std::vector<double> values) {
  if (directions.empty()) throw ConfigError("empty direction table");
  if (directions.size() != values.size()) throw ConfigError("direction table and values differ in length");
  // Canonical angle in [0, pi): xi and -xi share one table entry.
  std::vector<std::pair<double, double>> rows;
  rows.reserve(directions.size());
  for (std::size_t k = 0; k < directions.size(); ++k) {
    auto [x, y] = directions[k];
    const double len = std::hypot(x, y);
    if (!(len > 0.0) || !std::isfinite(len)) throw ConfigError("direction table has a zero or non-finite direction");
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) throw ConfigError("sampled norm values must be positive");
    if (y < 0.0 || (y == 0.0 && x < 0.0)) {
      x = -x;
      y = -y;
    }
    double th = std::atan2(y, x);
    if (th >= kPi) th -= kPi;
    rows.emplace_back(th, values[k] / len);
  }
  std::sort(rows.begin(), rows.end());
  AnisotropicNorm n;
  n.kind_ = NormKind::sampled;
  n.dim_ = 2;
  for (std::size_t k = 0; k < rows.size();) {
    std::size_t j = k;
    double sum = 0.0;
    while (j < rows.size() && rows[j].first - rows[k].first <= 1e-14) sum += rows[j++].second;
    n.table_angle_.push_back(rows[k].first);
    n.table_value_.push_back(sum / static_cast<double>(j - k));
    k = j;
  }
  n.finalize();
  return n;
}

void AnisotropicNorm::finalize() {
  const DirectionMesh mesh = DirectionMesh::standard(dim_);
  mesh_count_ = mesh.size();
  mesh_coords_.assign(mesh[0].data(), mesh[0].data() + mesh_count_ * static_cast<std::size_t>(dim_));
  mesh_phi_.resize(mesh_count_);
  for (std::size_t k = 0; k < mesh_count_; ++k) mesh_phi_[k] = (*this)(mesh[k]);
  mesh_polar_.resize(mesh_count_);
  for (std::size_t k = 0; k < mesh_count_; ++k) mesh_polar_[k] = polar(mesh[k]);
  check_convexity();
  estimate_growth();
  kappa_ = compute_kappa();
}

void AnisotropicNorm::check_convexity() const {
  const double tol = kind_ == NormKind::sampled ? 1e-6 : 1e-10;
  const auto d = static_cast<std::size_t>(dim_);
  std::mt19937_64 rng(20240611ULL);
  std::normal_distribution<double> g;
  std::vector<double> a(d), b(d), mid(d);
  for (int trial = 0; trial < 2000; ++trial) {
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
      mid[i] = 0.5 * (a[i] + b[i]);
    }
    const double fa = (*this)(a);
    const double fb = (*this)(b);
    if ((*this)(mid) > 0.5 * (fa + fb) + tol * (fa + fb)) {
      throw ConfigError("norm fails the midpoint convexity test");
    }
  }
}

void AnisotropicNorm::estimate_growth() {
  const auto d = static_cast<std::size_t>(dim_);
  const auto [lo, hi] = std::minmax_element(mesh_phi_.begin(), mesh_phi_.end());
  // Pattern search on the sphere from the best mesh points sharpens the extremes.
  auto refine = [&](std::size_t start, double sign) {
    std::vector<double> u(mesh_coords_.begin() + static_cast<std::ptrdiff_t>(start * d),
                          mesh_coords_.begin() + static_cast<std::ptrdiff_t>((start + 1) * d));
    double best = sign * (*this)(u);
    double step = dim_ == 2 ? 2.0 * kPi / static_cast<double>(mesh_count_) : 0.05;
    std::vector<double> trial(d);
    while (step > 1e-10) {
      bool moved = false;
      for (std::size_t i = 0; i < d && !moved; ++i) {
        for (std::size_t j = i; j < d && !moved; ++j) {
          for (double si : {1.0, -1.0}) {
            for (double sj : {1.0, -1.0}) {
              if (i == j && sj < 0.0) continue;
              trial = u;
              trial[i] += si * step;
              if (j != i) trial[j] += sj * step;
              const double len = euclid(trial);
              for (double& v : trial) v /= len;
              const double val = sign * (*this)(trial);
              if (val < best) {
                best = val;
                u = trial;
                moved = true;
                break;
              }
            }
            if (moved) break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    return sign * best;
  };
  c_lower_ = std::min(*lo, refine(static_cast<std::size_t>(lo - mesh_phi_.begin()), 1.0));
  c_upper_ = std::max(*hi, refine(static_cast<std::size_t>(hi - mesh_phi_.begin()), -1.0));
  if (!(c_lower_ > 0.0)) throw ConfigError("norm is not positive on the unit sphere");
}

double AnisotropicNorm::sampled_value(double x, double y) const {
  if (y < 0.0 || (y == 0.0 && x < 0.0)) {
    x = -x;
    y = -y;
  }
  const double len = std::hypot(x, y);
  if (len == 0.0) return 0.0;
  double th = std::atan2(y, x);
  if (th >= kPi) th -= kPi;
  const std::size_t m = table_angle_.size();
  if (m == 1) return len * table_value_[0];
  auto it = std::upper_bound(table_angle_.begin(), table_angle_.end(), th);
  std::size_t hi = static_cast<std::size_t>(it - table_angle_.begin());
  double a0, a1, v0, v1;
  if (hi == 0) {
    a0 = table_angle_[m - 1] - kPi;
    v0 = table_value_[m - 1];
    a1 = table_angle_[0];
    v1 = table_value_[0];
  } else if (hi == m) {
    a0 = table_angle_[m - 1];
    v0 = table_value_[m - 1];
    a1 = table_angle_[0] + kPi;
    v1 = table_value_[0];
  } else {
    a0 = table_angle_[hi - 1];
    v0 = table_value_[hi - 1];
    a1 = table_angle_[hi];
    v1 = table_value_[hi];
  }
  const double s = a1 > a0 ? (th - a0) / (a1 - a0) : 0.0;
  return len * (v0 + s * (v1 - v0));
}

double AnisotropicNorm::operator()(std::span<const double> xi) const {
  if (xi.size() != static_cast<std::size_t>(dim_)) throw DomainError("vector dimension mismatch");
  require_finite(xi);
  switch (kind_) {
    case NormKind::euclidean: return euclid(xi);
    case NormKind::scaled_euclidean: return c_ * euclid(xi);
    case NormKind::weighted_p: {
      std::array<double, 16> buf{};
      std::vector<double> big;
      double* y = buf.data();
      if (xi.size() > buf.size()) {
        big.resize(xi.size());
        y = big.data();
      }
      for (std::size_t i = 0; i < xi.size(); ++i) y[i] = weights_[i] * xi[i];
      return lp_norm({y, xi.size()}, p_);
    }
    case NormKind::ellipse: {
      const auto d = xi.size();
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += q_[i * d + j] * xi[j];
        s += xi[i] * row;
      }
      return std::sqrt(std::max(0.0, s));
    }
    case NormKind::sampled: return sampled_value(xi[0], xi[1]);
  }
  return 0.0;
}

double AnisotropicNorm::polar(std::span<const double> eta) const {
  if (eta.size() != static_cast<std::size_t>(dim_)) throw DomainError("vector dimension mismatch");
  require_finite(eta);
  switch (kind_) {
    case NormKind::euclidean: return euclid(eta);
    case NormKind::scaled_euclidean: return euclid(eta) / c_;
    case NormKind::weighted_p: {
      const double q = p_ == 1.0 ? std::numeric_limits<double>::infinity()
                       : std::isinf(p_) ? 1.0
                                        : p_ / (p_ - 1.0);
      std::array<double, 16> buf{};
      std::vector<double> big;
      double* y = buf.data();
      if (eta.size() > buf.size()) {
        big.resize(eta.size());
        y = big.data();
      }
      for (std::size_t i = 0; i < eta.size(); ++i) y[i] = eta[i] / weights_[i];
      return lp_norm({y, eta.size()}, q);
    }
    case NormKind::ellipse: {
      const auto d = eta.size();
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += q_inv_[i * d + j] * eta[j];
        s += eta[i] * row;
      }
      return std::sqrt(std::max(0.0, s));
    }
    case NormKind::sampled: return polar_numeric(eta);
  }
  return 0.0;
}

double AnisotropicNorm::polar_numeric(std::span<const double> eta) const {
  if (eta.size() != static_cast<std::size_t>(dim_)) throw DomainError("vector dimension mismatch");
  require_finite(eta);
  if (mesh_count_ == 0) throw ConfigError("empty direction mesh");
  const auto d = static_cast<std::size_t>(dim_);
  double best = 0.0;
  for (std::size_t k = 0; k < mesh_count_; ++k) {
    const double* u = mesh_coords_.data() + k * d;
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += eta[i] * u[i];
    best = std::max(best, dot / mesh_phi_[k]);
  }
  return best;
}

double AnisotropicNorm::bipolar_numeric(std::span<const double> xi) const {
  if (xi.size() != static_cast<std::size_t>(dim_)) throw DomainError("vector dimension mismatch");
  require_finite(xi);
  const auto d = static_cast<std::size_t>(dim_);
  double best = 0.0;
  for (std::size_t k = 0; k < mesh_count_; ++k) {
    const double* u = mesh_coords_.data() + k * d;
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) dot += xi[i] * u[i];
    best = std::max(best, dot / mesh_polar_[k]);
  }
  return best;
}

std::vector<double> AnisotropicNorm::polar_gradient(std::span<const double> eta) const {
  const double len = euclid(eta);
  if (!(len > 0.0)) throw DomainError("polar gradient at the origin");
  const double h = 1e-5 * len;
  std::vector<double> x(eta.begin(), eta.end());
  std::vector<double> grad(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) {
    x[i] = eta[i] + h;
    const double fp = polar(x);
    x[i] = eta[i] - h;
    const double fm = polar(x);
    x[i] = eta[i];
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double AnisotropicNorm::compute_kappa() const {
  const int n = dim_;
  switch (kind_) {
    case NormKind::euclidean: return unit_ball_volume(n);
    case NormKind::scaled_euclidean: return unit_ball_volume(n) * std::pow(c_, n);
    case NormKind::weighted_p: {
      const double q = p_ == 1.0 ? std::numeric_limits<double>::infinity()
                       : std::isinf(p_) ? 1.0
                                        : p_ / (p_ - 1.0);
      double prod = 1.0;
      for (double w : weights_) prod *= w;
      return prod * lq_ball_volume(n, q);
    }
    case NormKind::ellipse: return unit_ball_volume(n) * std::sqrt(q_det_);
    case NormKind::sampled: break;
  }
  return sphere_integral(
             n, [this, n](std::span<const double> th) { return std::pow(polar(th), -n); }, 1e-10) /
         n;
}

std::string AnisotropicNorm::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << to_string(kind_) << " n=" << dim_;
  switch (kind_) {
    case NormKind::euclidean: break;
    case NormKind::scaled_euclidean: os << " c=" << c_; break;
    case NormKind::weighted_p:
      os << " p=" << p_ << " w=";
      for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
      break;
    case NormKind::ellipse:
      os << " Q=";
      for (std::size_t i = 0; i < q_.size(); ++i) os << (i ? "," : "") << q_[i];
      break;
    case NormKind::sampled: os << " table=" << table_angle_.size(); break;
  }
  return os.str();
}

double eval_norm(const AnisotropicNorm& norm, std::span<const double> xi) { return norm(xi); }

double eval_polar(const AnisotropicNorm& norm, std::span<const double> eta) { return norm.polar(eta); }

double kappa(const AnisotropicNorm& norm) { return norm.kappa(); }

double wulff_perimeter(const AnisotropicNorm& norm, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("Wulff radius must be positive");
  const int n = norm.dim();
  return n * norm.kappa() * std::pow(r, n - 1);
}

double radius_from_mass(const AnisotropicNorm& norm, double volume_omega, double m) {
  if (!(volume_omega > 0.0)) throw DomainError("|Omega| must be positive");
  if (!(m > -volume_omega && m < volume_omega)) throw ConstraintError("mass bound outside (-|Omega|, |Omega|)");
  return std::pow((volume_omega - m) / (2.0 * norm.kappa()), 1.0 / norm.dim());
}

double sphere_integral(int dim, const std::function<double(std::span<const double>)>& f,
                       double rel_tol) {
  if (dim == 2) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t count = 64; count <= (std::size_t{1} << 22); count *= 2) {
      const double h = 2.0 * kPi / static_cast<double>(count);
      double sum = 0.0;
      for (std::size_t k = 0; k < count; ++k) {
        const double th = (static_cast<double>(k) + 0.5) * h;
        const std::array<double, 2> u{std::cos(th), std::sin(th)};
        sum += f(u);
      }
      sum *= h;
      if (std::abs(sum - prev) <= rel_tol * std::abs(sum)) return sum;
      prev = sum;
    }
    throw NumericalError("sphere quadrature did not converge", prev);
  }
  if (dim == 3) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t m = 16; m <= 2048; m *= 2) {
      const QuadratureRule& gl = gauss_legendre(m);
      const std::size_t nphi = 2 * m;
      const double hphi = 2.0 * kPi / static_cast<double>(nphi);
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double z = gl.nodes[i];
        const double s = std::sqrt(1.0 - z * z);
        double ring = 0.0;
        for (std::size_t j = 0; j < nphi; ++j) {
          const double ph = (static_cast<double>(j) + 0.5) * hphi;
          const std::array<double, 3> u{s * std::cos(ph), s * std::sin(ph), z};
          ring += f(u);
        }
        sum += gl.weights[i] * ring * hphi;
      }
      if (std::abs(sum - prev) <= rel_tol * std::abs(sum)) return sum;
      prev = sum;
    }
    throw NumericalError("sphere quadrature did not converge", prev);
  }
  throw DomainError("sphere quadrature implemented for n = 2, 3");
}

double euclidean_dirichlet_factor(const AnisotropicNorm& norm) {
  const int n = norm.dim();
  if (norm.kind() == NormKind::euclidean) return n * unit_ball_volume(n);
  if (norm.kind() == NormKind::scaled_euclidean) {
    return n * unit_ball_volume(n) * std::pow(norm.scale(), n - 2);
  }
  return sphere_integral(
      n,
      [&norm, n](std::span<const double> th) {
        const auto g = norm.polar_gradient(th);
        double g2 = 0.0;
        for (double v : g) g2 += v * v;
        return g2 * std::pow(norm.polar(th), -n);
      },
      1e-8);
}

double euclidean_perimeter_unit_ball(const AnisotropicNorm& norm) {
  const int n = norm.dim();
  if (norm.kind() == NormKind::euclidean) return n * unit_ball_volume(n);
  if (norm.kind() == NormKind::scaled_euclidean) {
    return n * unit_ball_volume(n) * std::pow(norm.scale(), n - 1);
  }
  return sphere_integral(
      n,
      [&norm, n](std::span<const double> th) {
        const auto g = norm.polar_gradient(th);
        double g2 = 0.0;
        for (double v : g) g2 += v * v;
        return std::sqrt(g2) * std::pow(norm.polar(th), -n);
      },
      1e-8);
}

}  // namespace wulff
