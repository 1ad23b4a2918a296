#include "doctest.h"

#include "cubiclab/errors.hpp"
#include "cubiclab/steinian.hpp"
#include "oracles.hpp"

#include <Eigen/SVD>

using namespace cubiclab;

namespace {

// Kernel of the finite-difference Hessian matrix of F_k at U.
RayVector oracle_alpha(double k, const RayVector& u)
{
  const Mat3 m = oracle::hessian_matrix([k](const Vec3& d) { return oracle::hesse(k, d); }, u.vec().normalized());
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullV);
  return RayVector(Vec3(svd.matrixV().col(2)));
}

bool on_triangle(const RayVector& r)
{
  const Vec3 v = r.vec();
  if (std::abs(v.z()) < 1e-9)
    return false;
  const double x = v.x() / v.z(), y = v.y() / v.z();
  return x > 0 && y > 0 && x + y < 1;
}

} // namespace

TEST_CASE("steinian map agrees with the Hessian kernel")
{
  SplitMix64 rng(7);
  for (double k : {5.0, 2.0, -3.0, -1.0, 0.5}) {
    for (const auto& u : hessian_samples(k, 40, rng)) {
      const RayVector a = steinian_map(k, u);
      CHECK(projective_distance(a, oracle_alpha(k, u)) < 1e-6);
      CHECK(projective_distance(steinian_map(k, a), u) < 1e-7);
      const auto r = verify_steinian_tangency(k, u);
      CHECK(r.on_line < 1e-9);
      CHECK(r.tangency < 1e-6);
    }
  }
  const RayVector a = steinian_map(5, {1, -1, 0});
  CHECK(ray_distance(a, {5.0 / 8, 5.0 / 8, 1}) < 1e-12);
  CHECK_THROWS_AS(steinian_map(5, {0, 0, 1}), NotOnHessian);
}

TEST_CASE("steinian map swaps the two Hessian components exactly when k < 0")
{
  SplitMix64 rng(11);
  for (double k : {-3.0, -1.0, 0.5}) {
    for (const auto& u : hessian_samples(k, 60, rng)) {
      const bool inside = on_triangle(u);
      CHECK((on_triangle(steinian_map(k, u)) != inside) == (k < 0));
    }
  }
}

TEST_CASE("third point is collinear and on the curve")
{
  SplitMix64 rng(3);
  const auto h = curve_form(5, CurveKind::H);
  const auto pts = hessian_samples(5, 60, rng);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const RayVector t = third_point(h, pts[i], pts[i + 1]);
    Mat3 m;
    m << pts[i].vec().normalized().transpose(), pts[i + 1].vec().normalized().transpose(),
        t.vec().normalized().transpose();
    CHECK(std::abs(m.determinant()) < 1e-8);
    CHECK(relative_residual(h, t) < 1e-9);
  }
}

TEST_CASE("group law axioms")
{
  SplitMix64 rng(5);
  for (double k : {5.0, -1.0}) {
    for (CurveKind kind : {CurveKind::H, CurveKind::F}) {
      const auto ctx = make_group_context(k, kind);
      std::vector<RayVector> pts;
      for (const auto& arc : all_branches(k, kind))
        for (std::size_t i = 5; i < arc.samples.size(); i += arc.samples.size() / 7 + 1)
          pts.push_back(arc.samples[i]);
      for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[i + 1];
        const auto& r = pts[i + 2];
        CHECK(projective_distance(group_add(ctx, p, ctx.zero), p) < 1e-9);
        CHECK(projective_distance(group_add(ctx, p, q), group_add(ctx, q, p)) < 1e-9);
        const RayVector lhs = group_add(ctx, group_add(ctx, p, q), r);
        const RayVector rhs = group_add(ctx, p, group_add(ctx, q, r));
        CHECK(projective_distance(lhs, rhs) < 1e-6);
        const RayVector neg = third_point(ctx.curve, ctx.zero, p);
        CHECK(projective_distance(group_add(ctx, p, neg), ctx.zero) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(make_group_context(5, CurveKind::H, {0, 0, 1}), DomainError);
  const auto ctx = make_group_context(5);
  CHECK_THROWS_AS(group_add(ctx, {0, 0, 1}, ctx.zero), NotOnCurve);
}

TEST_CASE("near-tangent chords stay accurate")
{
  const auto ctx = make_group_context(5);
  const Arc arc = trace_branch(5, CurveKind::H, "C2");
  const RayVector p = arc.samples[arc.samples.size() / 3];
  const RayVector tangent = group_add(ctx, p, p);
  // A point very close to p along the curve.
  const auto h = ctx.curve;
  Vec3 q = p.vec().normalized() + 1e-6 * h.gradient(p.vec().normalized()).cross(p.vec().normalized()).normalized();
  for (int i = 0; i < 20; ++i) {
    const Vec3 g = h.gradient(q);
    q -= h(q) / g.squaredNorm() * g;
  }
  CHECK(projective_distance(group_add(ctx, p, RayVector(q)), tangent) < 1e-4);
}

TEST_CASE("two-torsion points and e-levels")
{
  const auto t5 = two_torsion(make_group_context(5));
  REQUIRE(t5.size() == 1);
  CHECK(relative_residual(curve_form(5, CurveKind::H), t5[0]) < 1e-12);

  for (double k : {-1.0, -0.5, -1.7}) {
    const auto t = two_torsion(make_group_context(k));
    REQUIRE(t.size() == 3);
    const auto e = e_levels(hessian_parameter(k));
    std::vector<double> sums;
    for (const auto& p : t) {
      const Vec3 v = p.vec();
      sums.push_back((v.x() + v.y()) / v.z());
    }
    std::sort(sums.begin(), sums.end());
    for (int i = 0; i < 3; ++i)
      CHECK(sums[i] == doctest::Approx(e[i]).epsilon(1e-8));
    // The asymptote of F_k at B3 carries one of them.
    bool hit = false;
    for (double s : sums)
      hit = hit || std::abs(s - k / (k - 1)) < 1e-8;
    CHECK(hit);
  }
}

TEST_CASE("translation by the 2-torsion point")
{
  SplitMix64 rng(99);
  for (double k : {5.0, 2.0, 1.5})
    CHECK(translation_check(k, 200, rng));
  CHECK_THROWS_AS(translation_check(-1, 10, rng), DomainError);
}
