#include "cubiclab/steinian.hpp"

#include "cubiclab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cubiclab {

namespace {

void require_on_curve(const TernaryCubic& c, const RayVector& p, const Tolerances& tol)
{
  if (p.is_zero() || relative_residual(c, p) >= tol.on_curve_abs)
    throw NotOnCurve("point is not on the curve");
}

} // namespace

double relative_residual(const TernaryCubic& c, const RayVector& d)
{
  return std::abs(c(d.normalized())) / c.scale();
}

GroupLawContext make_group_context(double k, CurveKind kind, const RayVector& zero, const Tolerances& tol)
{
  bool inflexion = false;
  for (const auto& b : inflexion_points(k, tol))
    inflexion = inflexion || projective_distance(b, zero) < 1e-12;
  if (!inflexion)
    throw DomainError("the zero of the group law must be one of B1, B2, B3");
  GroupLawContext ctx;
  ctx.k = k;
  ctx.kind = kind;
  ctx.curve = curve_form(k, kind, tol);
  ctx.zero = zero;
  return ctx;
}

RayVector steinian_map(double k, const RayVector& u, const Tolerances& tol)
{
  const auto f = hesse_cubic(k, tol);
  const auto h = hessian_cubic(f);
  if (u.is_zero() || relative_residual(h, u) >= tol.on_curve_abs)
    throw NotOnHessian("point is not on the Hessian");
  return conic_singular_point(polar_quadric(f, u), tol);
}

RayVector third_point(const TernaryCubic& c, const RayVector& p, const RayVector& q)
{
  const Vec3 a = p.vec().normalized();
  Vec3 b = q.vec().normalized();
  if (a.dot(b) < 0.0)
    b = -b;
  Vec3 v = b - a;
  double t = v.norm();
  if (t < 1e-12) {
    v = c.gradient(a).cross(a);
    t = 0.0;
  }
  v.normalize();
  // C(a + s v) has roots s = 0, s = t and the one we want; use their sum.
  const double cv = c(v);
  const double tri = 3.0 * c.trilinear().apply(a, v, v);
  return canonical_projective(RayVector(cv * a - (tri + t * cv) * v));
}

RayVector group_add(const GroupLawContext& ctx, const RayVector& p1, const RayVector& p2, const Tolerances& tol)
{
  require_on_curve(ctx.curve, p1, tol);
  require_on_curve(ctx.curve, p2, tol);
  const RayVector x = third_point(ctx.curve, p1, p2);
  return third_point(ctx.curve, ctx.zero, x);
}

std::vector<RayVector> two_torsion(const GroupLawContext& ctx, const Tolerances& tol)
{
  const QuadraticForm3 g = polar_quadric(ctx.curve, ctx.zero);
  const Vec3 o = ctx.zero.vec().normalized();
  std::vector<RayVector> found;

  auto refine = [&](Vec3 a, Vec3 b) {
    double ga = g(a);
    for (int it = 0; it < 80; ++it) {
      const Vec3 m = project_to_curve(ctx.curve, a + b);
      const double gm = g(m);
      if ((gm > 0.0) == (ga > 0.0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
      if ((a - b).norm() < 1e-15)
        break;
    }
    return project_to_curve(ctx.curve, a + b);
  };

  for (const auto& arc : all_branches(ctx.k, ctx.kind, tol)) {
    std::vector<Vec3> pts;
    if (!arc.closed)
      pts.push_back(arc.endpoints.first.vec().normalized());
    for (const auto& s : arc.samples)
      pts.push_back(s.vec().normalized());
    if (!arc.closed)
      pts.push_back(arc.endpoints.second.vec().normalized());
    else
      pts.push_back(pts.front());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double ga = g(pts[i]), gb = g(pts[i + 1]);
      Vec3 t;
      if (ga == 0.0)
        t = pts[i];
      else if (gb != 0.0 && (ga > 0.0) != (gb > 0.0))
        t = refine(pts[i], pts[i + 1]);
      else
        continue;
      // G_O vanishes to third order at the zero itself.
      if (std::min((t - o).norm(), (t + o).norm()) < 1e-3)
        continue;
      const RayVector r = canonical_projective(RayVector(t));
      bool dup = false;
      for (const auto& f : found)
        dup = dup || projective_distance(f, r) < 1e-8;
      if (!dup)
        found.push_back(r);
    }
  }
  return found;
}

std::array<double, 3> e_levels(double k_prime)
{
  auto s = siblings(k_prime);
  std::array<double, 3> e{};
  for (int i = 0; i < 3; ++i)
    e[i] = s[i] / (s[i] - 1.0);
  std::sort(e.begin(), e.end());
  return e;
}

TangencyResidual verify_steinian_tangency(double k, const RayVector& u, const Tolerances& tol)
{
  const RayVector a = steinian_map(k, u, tol);
  const auto f = hesse_cubic(k, tol);
  const auto h = hessian_cubic(f);
  const Vec3 l = second_polar(f, u).covector().normalized();
  const Vec3 an = a.vec().normalized();
  TangencyResidual r;
  r.on_line = std::abs(l.dot(an));
  r.tangency = l.cross(h.gradient(an).normalized()).norm();
  return r;
}

std::vector<RayVector> hessian_samples(double k, std::size_t n, SplitMix64& rng, const Tolerances& tol)
{
  const auto arcs = all_branches(k, CurveKind::H, tol);
  std::vector<RayVector> out;
  while (out.size() < n) {
    const auto& arc = arcs[rng.next() % arcs.size()];
    out.push_back(arc.samples[rng.next() % arc.samples.size()]);
  }
  return out;
}

bool translation_check(double k, std::size_t n_samples, SplitMix64& rng, const Tolerances& tol)
{
  if (!(k > 1.0) || regime_of(k, tol) != Regime::TWO_F_COMPONENTS)
    throw DomainError("translation check needs k > 1");
  const auto ctx = make_group_context(k, CurveKind::H, {1, -1, 0}, tol);
  const auto torsion = two_torsion(ctx, tol);
  if (torsion.size() != 1)
    return false;
  for (const auto& u : hessian_samples(k, n_samples, rng, tol)) {
    const RayVector lhs = steinian_map(k, u, tol);
    const RayVector rhs = group_add(ctx, u, torsion.front(), tol);
    if (projective_distance(lhs, rhs) > 1e-6)
      return false;
  }
  return true;
}

} // namespace cubiclab
