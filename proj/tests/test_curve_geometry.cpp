#include "doctest.h"
#include "oracles.hpp"

#include "cubiclab/curve_geometry.hpp"
#include "cubiclab/errors.hpp"

using namespace cubiclab;

namespace {

bool endpoint_is(const RayVector& e, const RayVector& target)
{
  return ray_distance(e, target) < 1e-9;
}

void check_arc(const Arc& a, double k, const TraceOptions& opts = {})
{
  const auto form = curve_form(k, a.curve);
  CHECK(max_residual(a, form) < 1e-9);
  REQUIRE(a.samples.size() > 10);
  for (std::size_t i = 1; i < a.samples.size(); ++i) {
    const double step = ray_distance(a.samples[i - 1], a.samples[i]);
    CHECK(step <= 2.05 * opts.max_step);
  }
}

} // namespace

TEST_CASE("topology classification")
{
  auto t5 = curve_topology(5);
  CHECK(t5.f_components == 2);
  CHECK(t5.h_components == 1);
  auto th = curve_topology(0.5);
  CHECK(th.f_components == 1);
  CHECK(th.h_components == 2);
  CHECK(curve_topology(0).h_shape == HessianShape::LINE_TRIPLE);
  CHECK(curve_topology(-2).h_shape == HessianShape::LINE_PLUS_POINT);
  CHECK_THROWS_AS(curve_topology(1), DegenerateParameter);
}

TEST_CASE("inflexions and asymptotes")
{
  for (double k : {-3.0, 0.5, 2.0, 5.0}) {
    const auto f = hesse_cubic(k);
    const auto h = hessian_cubic(f);
    for (const auto& b : inflexion_points(k)) {
      CHECK(evaluate(f, b) == 0.0);
      CHECK(std::abs(evaluate(h, b)) < 1e-9);
      CHECK(b.z() == 0.0);
    }
  }
  const auto a5 = asymptotes(5);
  // x = -1/4, y = -1/4, x + y = 5/4 as affine lines
  CHECK(a5[0][2] / a5[0][0] == doctest::Approx(0.25));
  CHECK(a5[0][1] == 0.0);
  CHECK(a5[1][2] / a5[1][1] == doctest::Approx(0.25));
  CHECK(a5[2][0] == doctest::Approx(a5[2][1]));
  CHECK(-a5[2][2] / a5[2][0] == doctest::Approx(1.25));

  for (const auto& l : asymptotes(-2))
    CHECK(std::abs(l(RayVector(1.0 / 3, 1.0 / 3, 1))) < 1e-14);
}

TEST_CASE("traced branches for k = 5")
{
  const double k = 5;
  const Arc c1 = trace_branch(k, CurveKind::F, "C1");
  check_arc(c1, k);
  for (const auto& s : c1.samples) {
    CHECK(s.x() < 0);
    CHECK(s.y() < 0);
  }
  CHECK(endpoint_is(c1.endpoints.first, {0, -1, 0}));
  CHECK(endpoint_is(c1.endpoints.second, {-1, 0, 0}));

  const Arc oval = trace_branch(k, CurveKind::F, "BOUNDED");
  CHECK(oval.closed);
  check_arc(oval, k);
  for (const auto& s : oval.samples) {
    CHECK(s.x() > 0);
    CHECK(s.y() > 0);
    CHECK(s.x() + s.y() < 1);
  }

  const Arc c2 = trace_branch(k, CurveKind::H, "C2");
  check_arc(c2, k);
  for (const auto& s : c2.samples) {
    CHECK(s.x() > 0);
    CHECK(s.y() > 0);
    CHECK(s.x() + s.y() > 1);
  }
  CHECK(endpoint_is(c2.endpoints.first, {0, 1, 0}));
  CHECK(endpoint_is(c2.endpoints.second, {1, 0, 0}));

  const Arc hb1b3 = trace_branch(k, CurveKind::H, "H_B1B3");
  check_arc(hb1b3, k);
  for (const auto& s : hb1b3.samples) {
    CHECK(s.x() > 0);
    CHECK(s.y() < 0);
    CHECK(s.x() + s.y() < 1);
  }
  const Arc hb2b3 = trace_branch(k, CurveKind::H, "H_B2B3");
  check_arc(hb2b3, k);
  for (const auto& s : hb2b3.samples) {
    CHECK(s.x() < 0);
    CHECK(s.y() > 0);
    CHECK(s.x() + s.y() < 1);
  }
  CHECK(projective_distance(hb2b3.endpoints.first, {1, 0, 0}) < 1e-9);
  CHECK(projective_distance(hb2b3.endpoints.second, {1, -1, 0}) < 1e-9);

  const Arc q1b3 = trace_branch(k, CurveKind::H, "Q1B3");
  CHECK(q1b3.samples.front().x() == doctest::Approx(-0.25));
  const Arc b1r = trace_branch(k, CurveKind::H, "B1R");
  CHECK(b1r.samples.back().x() == doctest::Approx(5.0 / 8));
}

TEST_CASE("traced branches for k < 1")
{
  for (double k : {0.5, -0.5, -3.0}) {
    const Arc c1 = trace_branch(k, CurveKind::F, "C1");
    check_arc(c1, k);
    for (const auto& s : c1.samples) {
      CHECK(s.x() > 0);
      CHECK(s.y() > 0);
      CHECK(s.x() + s.y() > 1);
    }
    const Arc c2 = trace_branch(k, CurveKind::H, "C2");
    check_arc(c2, k);
    for (const auto& s : c2.samples) {
      CHECK(s.x() < 0);
      CHECK(s.y() < 0);
    }
    const Arc ov = trace_branch(k, CurveKind::H, "H_BOUNDED");
    CHECK(ov.closed);
    check_arc(ov, k);
    CHECK_THROWS_AS(trace_branch(k, CurveKind::F, "BOUNDED"), UnknownBranch);
  }
  const Arc c2f = trace_branch(0, CurveKind::H, "C2");
  CHECK(max_residual(c2f, curve_form(0, CurveKind::H)) == 0.0);
  const Arc c3 = trace_branch(-2, CurveKind::H, "C3");
  CHECK(c3.samples.front().z() == 0.0);
}

TEST_CASE("asymptotes touch the Hessian")
{
  for (double k : {-3.0, -0.5, 0.5, 2.0, 5.0}) {
    const auto f = hesse_cubic(k);
    const auto h = hessian_cubic(f);
    for (const auto& b : inflexion_points(k)) {
      const RayVector q = conic_singular_point(polar_quadric(f, b));
      const LinearForm3 l = second_polar(f, b);
      CHECK(std::abs(l(q.normalized())) < 1e-7);
      CHECK(std::abs(h(q.normalized().vec())) / h.scale() < 1e-7);
      // tangency: grad H(q) parallel to l
      CHECK(h.gradient(q.vec()).normalized().cross(l.covector().normalized()).norm() < 1e-7);
    }
  }
}

TEST_CASE("line intersections")
{
  const auto f = hesse_cubic(5);
  auto pts = line_cubic_intersections(f, {0, 1, 0}, {1, 0, 0});
  REQUIRE(pts.size() == 3);
  for (const RayVector& b : {RayVector(0, 1, 0), RayVector(1, 0, 0), RayVector(1, -1, 0)}) {
    int found = 0;
    for (const auto& p : pts)
      if (projective_distance(p.point, b) < 1e-9 && p.multiplicity == 1)
        ++found;
    CHECK(found == 1);
  }

  // asymptote at B1 is x = -z/4: points (0,1,0) and (-1/4, 0, 1)
  auto tri = line_cubic_intersections(f, {0, 1, 0}, {-0.25, 0, 1});
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].multiplicity == 3);
  CHECK(projective_distance(tri[0].point, {0, 1, 0}) < 1e-4);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const RayVector p(oracle::random_unit_sup(rng)), q(oracle::random_unit_sup(rng));
    auto a = line_cubic_intersections(f, p, q);
    auto b = line_cubic_intersections(f, q, p);
    int total = 0;
    for (const auto& r : a)
      total += r.multiplicity;
    CHECK((total == 1 || total == 3));
    REQUIRE(a.size() == b.size());
    for (const auto& r : a) {
      double best = 1e9;
      for (const auto& s : b)
        best = std::min(best, projective_distance(r.point, s.point));
      CHECK(best < 1e-9);
      CHECK(std::abs(f(r.point.unit())) < 1e-9);
    }
  }
  CHECK_THROWS_AS(line_cubic_intersections(f, {1, 2, 3}, {2, 4, 6}), IdenticalPoints);
}
