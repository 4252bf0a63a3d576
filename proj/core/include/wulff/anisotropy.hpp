#pragma once

// Anisotropic surface-energy gauges, their polars, and Wulff-ball geometry.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wulff {

enum class NormKind { euclidean, scaled_euclidean, weighted_p, ellipse, sampled };

std::string to_string(NormKind kind);

/// Unit directions covering S^{n-1}: 2^12 equispaced angles for n = 2, a
/// 2^14-point Fibonacci lattice for n = 3.
class DirectionMesh {
 public:
  DirectionMesh(int dim, std::size_t count);
  static DirectionMesh standard(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return count_; }
  std::span<const double> operator[](std::size_t k) const {
    return {coords_.data() + k * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }

 private:
  int dim_;
  std::size_t count_;
  std::vector<double> coords_;
};

/// Even, convex, positively 1-homogeneous gauge Phi on R^n.
///
/// Analytic kinds carry a closed-form polar; the sampled kind (n = 2 only) is
/// piecewise linear in the polar angle and its polar is a supremum over the
/// direction mesh. Construction validates convexity by a midpoint test on
/// random pairs and estimates the growth constants c_Phi, C_Phi on the mesh.
/// Instances are immutable and safe to share between threads.
class AnisotropicNorm {
 public:
  static AnisotropicNorm euclidean(int dim);
  static AnisotropicNorm scaled_euclidean(int dim, double c);
  /// Phi(xi) = (sum_i |w_i xi_i|^p)^{1/p}; p may be +infinity (max_i |w_i xi_i|).
  static AnisotropicNorm weighted_p(double p, std::vector<double> weights);
  /// Phi(xi) = sqrt(xi . Q xi), Q symmetric positive definite, row-major dim x dim.
  static AnisotropicNorm ellipse(int dim, std::vector<double> q);
  /// n = 2 only. Directions need not be normalized; the table is symmetrized
  /// (xi and -xi get the same value) and sorted by angle.
  static AnisotropicNorm sampled(std::vector<std::array<double, 2>> directions,
                                 std::vector<double> values);

  NormKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool has_closed_form_polar() const { return kind_ != NormKind::sampled; }

  double operator()(std::span<const double> xi) const;
  double polar(std::span<const double> eta) const;
  /// Supremum of eta.xi / Phi(xi) over the direction mesh, for any kind.
  double polar_numeric(std::span<const double> eta) const;
  /// (Phi°)°(xi) as a supremum over the direction mesh.
  double bipolar_numeric(std::span<const double> xi) const;
  /// Central-difference gradient of Phi° at a nonzero point.
  std::vector<double> polar_gradient(std::span<const double> eta) const;

  double growth_lower() const { return c_lower_; }
  double growth_upper() const { return c_upper_; }

  /// kappa_Phi = |{Phi° < 1}|, cached at construction. Closed form for the
  /// analytic kinds, radial sphere quadrature for the sampled kind.
  double kappa() const { return kappa_; }

  /// Human-readable parameter echo, stable across runs.
  std::string describe() const;

  const std::vector<double>& weights() const { return weights_; }
  double exponent() const { return p_; }
  double scale() const { return c_; }
  const std::vector<double>& matrix() const { return q_; }

 private:
  AnisotropicNorm() = default;
  void finalize();
  double sampled_value(double x, double y) const;
  double compute_kappa() const;
  void estimate_growth();
  void check_convexity() const;

  NormKind kind_ = NormKind::euclidean;
  int dim_ = 2;
  double c_ = 1.0;
  double p_ = 2.0;
  std::vector<double> weights_;
  std::vector<double> q_;
  std::vector<double> q_inv_;
  double q_det_ = 1.0;
  std::vector<double> table_angle_;
  std::vector<double> table_value_;
  std::vector<double> mesh_coords_;
  std::vector<double> mesh_phi_;
  std::vector<double> mesh_polar_;
  std::size_t mesh_count_ = 0;
  double c_lower_ = 1.0;
  double c_upper_ = 1.0;
  double kappa_ = 0.0;
};

double eval_norm(const AnisotropicNorm& norm, std::span<const double> xi);
double eval_polar(const AnisotropicNorm& norm, std::span<const double> eta);
double kappa(const AnisotropicNorm& norm);

/// Phi-perimeter of a Wulff ball of radius r: n kappa r^{n-1}.
double wulff_perimeter(const AnisotropicNorm& norm, double r);

/// Radius of the Wulff ball that carries the -1 phase: 2 kappa r^n = |Omega| - m.
double radius_from_mass(const AnisotropicNorm& norm, double volume_omega, double m);

/// Integral of f over the unit sphere S^{n-1} (n = 2 or 3), refined until the
/// relative change drops below rel_tol. Every Wulff-ball radial reduction is a
/// sphere integral of a Phi°-dependent weight, e.g.
/// kappa = (1/n) int_S Phi°(theta)^{-n} d theta.
double sphere_integral(int dim, const std::function<double(std::span<const double>)>& f,
                       double rel_tol);

/// A with int_{B_R} |grad f(Phi°(x))|^2 dx = A int_0^R f'(rho)^2 rho^{n-1} d rho.
double euclidean_dirichlet_factor(const AnisotropicNorm& norm);

/// Euclidean (n-1)-measure of the boundary of the unit Wulff ball.
double euclidean_perimeter_unit_ball(const AnisotropicNorm& norm);

}  // namespace wulff
