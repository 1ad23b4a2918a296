#include "cubiclab/linalg.hpp"

namespace cubiclab {

RayVector RayVector::normalized() const
{
  // adding 0.0 turns -0.0 into +0.0 so printed output is stable
  return RayVector(((v_ / v_.cwiseAbs().maxCoeff()).array() + 0.0).matrix());
}

double ray_distance(const RayVector& a, const RayVector& b)
{
  return (a.vec().normalized() - b.vec().normalized()).norm();
}

double projective_distance(const RayVector& a, const RayVector& b)
{
  const Vec3 u = a.vec().normalized();
  const Vec3 v = b.vec().normalized();
  return std::min((u - v).norm(), (u + v).norm());
}

RayVector canonical_projective(const RayVector& a)
{
  Eigen::Index i = 0;
  a.vec().cwiseAbs().maxCoeff(&i);
  const double s = a.vec()[i];
  return RayVector(((a.vec() / s).array() + 0.0).matrix());
}

} // namespace cubiclab
