#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>

namespace cubiclab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// An oriented nonzero vector of R^3. D and -D are different rays; only
/// positive rescaling is ever applied.
class RayVector
{
public:
  RayVector() = default;
  RayVector(double x, double y, double z) : v_(x, y, z) {}
  explicit RayVector(const Vec3& v) : v_(v) {}

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  double operator[](int i) const { return v_[i]; }
  const Vec3& vec() const { return v_; }

  bool is_zero() const { return v_.cwiseAbs().maxCoeff() == 0.0; }

  /// Positive rescaling so the sup-norm is exactly 1.
  RayVector normalized() const;
  /// Positive rescaling to unit Euclidean length.
  RayVector unit() const { return RayVector(v_ / v_.norm()); }
  /// Affine representative (x/z, y/z, 1); the sign of z is discarded, so
  /// this is a projective operation. Requires z != 0.
  RayVector affine() const { return RayVector(v_ / v_.z()); }

  RayVector operator-() const { return RayVector(-v_); }

  std::array<double, 3> to_array() const { return {v_.x(), v_.y(), v_.z()}; }

private:
  Vec3 v_ = Vec3::Zero();
};

inline RayVector operator+(const RayVector& a, const RayVector& b) { return RayVector(a.vec() + b.vec()); }
inline RayVector operator-(const RayVector& a, const RayVector& b) { return RayVector(a.vec() - b.vec()); }
inline RayVector operator*(double s, const RayVector& a) { return RayVector(s * a.vec()); }

/// Euclidean distance between the unit representatives (orientation-aware).
double ray_distance(const RayVector& a, const RayVector& b);
/// Distance between the projective points of a and b (sign ignored).
double projective_distance(const RayVector& a, const RayVector& b);
/// Sign-canonical representative: sup-norm 1 with the largest-magnitude
/// coordinate positive.
RayVector canonical_projective(const RayVector& a);

/// A covector on R^3 (a linear form D -> c . D).
class LinearForm3
{
public:
  LinearForm3() = default;
  LinearForm3(double a, double b, double c) : c_(a, b, c) {}
  explicit LinearForm3(const Vec3& c) : c_(c) {}

  double operator()(const RayVector& d) const { return c_.dot(d.vec()); }
  const Vec3& covector() const { return c_; }
  double operator[](int i) const { return c_[i]; }

private:
  Vec3 c_ = Vec3::Zero();
};

/// Symmetric 3x3 form. The matrix is symmetrized on construction.
class QuadraticForm3
{
public:
  QuadraticForm3() = default;
  explicit QuadraticForm3(const Mat3& m) : m_(0.5 * (m + m.transpose())) {}

  double operator()(const RayVector& d) const { return d.vec().dot(m_ * d.vec()); }
  double operator()(const Vec3& d) const { return d.dot(m_ * d); }
  const Mat3& matrix() const { return m_; }
  QuadraticForm3 operator-() const { return QuadraticForm3(-m_); }

private:
  Mat3 m_ = Mat3::Zero();
};

} // namespace cubiclab
