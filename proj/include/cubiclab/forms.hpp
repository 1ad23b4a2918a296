#pragma once

#include "cubiclab/linalg.hpp"

#include <array>
#include <string>

namespace cubiclab {

/// Numerical thresholds shared by every module. All fields must be > 0.
struct Tolerances
{
  double on_curve_abs = 1e-9;
  double kernel_rank_rel = 1e-8;
  double newton_residual = 1e-10;
  double degenerate_k_band = 1e-6;

  /// Override one field by name; throws DomainError for unknown names or
  /// non-positive values.
  void set(const std::string& name, double value);
};

/// Symmetric 3x3x3 tensor stored as three symmetric slices: slice(l)(i,j) = T_{lij}.
class SymTrilinear
{
public:
  SymTrilinear() = default;
  explicit SymTrilinear(const std::array<Mat3, 3>& slices) : slices_(slices) {}

  double operator()(int i, int j, int k) const { return slices_[i](j, k); }
  double apply(const Vec3& a, const Vec3& b, const Vec3& c) const;
  /// The matrix M with b^T M c = T(a, b, c).
  Mat3 contract(const Vec3& a) const;
  /// The covector D -> T(a, b, D).
  Vec3 contract(const Vec3& a, const Vec3& b) const;
  const Mat3& slice(int l) const { return slices_[l]; }

private:
  std::array<Mat3, 3> slices_{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
};

/// Ternary cubic with coefficients of x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3,
/// y^2z, yz^2, z^3 in that order.
class TernaryCubic
{
public:
  using Coeffs = std::array<double, 10>;

  TernaryCubic() = default;
  explicit TernaryCubic(const Coeffs& coeffs);

  const Coeffs& coeffs() const { return coeffs_; }
  const SymTrilinear& trilinear() const { return tri_; }

  double operator()(const Vec3& d) const;
  double operator()(const RayVector& d) const { return (*this)(d.vec()); }
  Vec3 gradient(const Vec3& d) const;
  /// Largest absolute coefficient (at least 1); used to scale residuals.
  double scale() const { return scale_; }

  TernaryCubic operator-() const;
  TernaryCubic scaled(double s) const;

  /// Precomposition D -> C(M D).
  TernaryCubic compose(const Mat3& m) const;

private:
  Coeffs coeffs_{};
  SymTrilinear tri_;
  double scale_ = 1.0;
};

/// Index of the monomial x_i x_j x_k in the fixed coefficient order.
int monomial_index(int i, int j, int k);

struct Signature
{
  int p = 0;
  int n = 0;
  int z = 0;
  bool operator==(const Signature&) const = default;
};

/// F_k = -x^3 - y^3 - (z-x-y)^3 + 3k xy(z-x-y), fully expanded.
TernaryCubic hesse_cubic(double k, const Tolerances& tol = {}, bool allow_degenerate = false);
/// The diagonal Hesse form -x^3 - y^3 - z^3 + 3k xyz.
TernaryCubic diagonal_hesse_cubic(double k);

double evaluate(const TernaryCubic& c, const RayVector& d);
const SymTrilinear& trilinear(const TernaryCubic& c);

/// G_A: the quadratic form D -> T(A, D, D).
QuadraticForm3 polar_quadric(const TernaryCubic& c, const RayVector& a);
/// The linear form D -> T(U, U, D) = grad C(U) . D / 3.
LinearForm3 second_polar(const TernaryCubic& c, const RayVector& u);

/// Determinant of the matrix of second partials, expanded as a cubic.
TernaryCubic hessian_cubic(const TernaryCubic& c);

/// k' = (4 - k^3) / (3k^2), so that H_k = -54 k^2 F_{k'}.
double hessian_parameter(double k, const Tolerances& tol = {});

/// The three real roots of k^3 + 3 k' k^2 - 4, ascending. Requires k' > 1
/// unless allow_boundary is set, in which case k' = 1 is also accepted.
std::array<double, 3> siblings(double k_prime, bool allow_boundary = false);

Signature signature(const QuadraticForm3& q, const Tolerances& tol = {});

/// Kernel generator of a rank-2 form: sup-norm 1, largest coordinate positive.
RayVector conic_singular_point(const QuadraticForm3& q, const Tolerances& tol = {});

} // namespace cubiclab
