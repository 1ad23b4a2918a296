#include "doctest.h"

#include "cubiclab/errors.hpp"
#include "cubiclab/poly.hpp"
#include "cubiclab/scenario.hpp"
#include "oracles.hpp"

using namespace cubiclab;

namespace {

ConeComponent component(double k, ComponentKind kind)
{
  for (auto& c : enumerate_components(k))
    if (c.kind == kind)
      return c;
  throw DomainError("missing component");
}

double oracle_max_over(double k, const LambdaBoundResult& r, double lambda)
{
  const Vec3 m = r.d.vec() - lambda * r.e.vec();
  auto f = [k](const Vec3& v) { return oracle::hesse(k, v); };
  double worst = -1e300;
  for (const auto& l : r.certificates)
    worst = std::max(worst, oracle::polarize(f, m, m, l.vec().normalized()));
  return worst;
}

} // namespace

TEST_CASE("lambda bound from a negative linear form")
{
  const auto comp = component(5, ComponentKind::BOUNDED_POSITIVE);
  const RayVector e(1, 0, 0);
  const auto r = lambda_bound(5, comp, e, comp.witness);
  CHECK(r.method == LambdaMethod::NEGATIVE_FORM);
  REQUIRE(!r.certificates.empty());
  const auto f = hesse_cubic(5);
  for (const auto& l : r.certificates)
    CHECK(oracle::polarize([](const Vec3& v) { return oracle::hesse(5, v); }, e.vec(), e.vec(),
                           l.vec().normalized()) < 0);

  // Bisection on the largest certificate value.
  double lo = 0.0, hi = 100.0;
  REQUIRE(oracle_max_over(5, r, lo) > 0);
  REQUIRE(oracle_max_over(5, r, hi) < 0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle_max_over(5, r, mid) < 0 ? hi : lo) = mid;
  }
  CHECK(r.lambda0 == doctest::Approx(hi).epsilon(1e-8));

  SplitMix64 rng(41);
  for (int i = 0; i < 20; ++i) {
    const double lam = r.lambda0 * (1 + 1e-6 + rng.uniform() * (1 - 1e-6));
    CHECK(lambda_certificate_holds(r, lam));
  }
  CHECK_FALSE(lambda_certificate_holds(r, 0.5 * r.lambda0));

  const auto r2 = lambda_bound(5, comp, e, 2.0 * comp.witness);
  CHECK(r2.lambda0 == doctest::Approx(2 * r.lambda0).epsilon(1e-6));
}

TEST_CASE("lambda bound from the roots of (D - tE)^3")
{
  const auto comp = component(5, ComponentKind::BOUNDED_POSITIVE);
  for (const RayVector e : {RayVector(0, 0, 1), RayVector(2, 2, 1), RayVector(-0.3, -0.3, 1)}) {
    const auto r = lambda_bound(5, comp, e, comp.witness);
    CHECK(r.method == LambdaMethod::CUBIC_ROOTS);
    CHECK(r.lambda0 == r.lambda2);
    REQUIRE(0 < r.lambda1);
    REQUIRE(r.lambda1 < r.lambda2);
    // Sign changes of the cubic on a t-grid.
    auto g = [&](double t) { return oracle::hesse(5, Vec3(comp.witness.vec() - t * e.vec())); };
    std::vector<double> changes;
    const double top = 4 * r.lambda2;
    for (int i = 0; i < 4000; ++i) {
      const double a = top * i / 4000, b = top * (i + 1) / 4000;
      if ((g(a) > 0) != (g(b) > 0))
        changes.push_back(poly::bisect(g, a, b));
    }
    REQUIRE(changes.size() == 2);
    CHECK(r.lambda1 == doctest::Approx(changes[0]).epsilon(1e-9));
    CHECK(r.lambda2 == doctest::Approx(changes[1]).epsilon(1e-9));
    CHECK(g(0.5 * r.lambda1) > 0);
    CHECK(g(0.5 * (r.lambda1 + r.lambda2)) < 0);
    CHECK(g(1.5 * r.lambda2) > 0);
    SplitMix64 rng(17);
    for (int i = 0; i < 20; ++i)
      CHECK(lambda_certificate_holds(r, r.lambda0 * (1 + 1e-6 + rng.uniform())));
    const auto r2 = lambda_bound(5, comp, e, 2.0 * comp.witness);
    CHECK(r2.lambda0 == doctest::Approx(2 * r.lambda0).epsilon(1e-6));
  }
}

TEST_CASE("lambda bound preconditions")
{
  const auto comp = component(5, ComponentKind::BOUNDED_POSITIVE);
  CHECK_THROWS_AS(lambda_bound(5, comp, comp.witness, comp.witness), DomainError);
  CHECK_THROWS_AS(lambda_bound(5, comp, {-1, -1, -1}, comp.witness), DomainError);
}

TEST_CASE("pole solver inverts the double polar")
{
  for (double k : {2.0, 5.0}) {
    const auto comp = component(k, ComponentKind::BOUNDED_POSITIVE);
    SplitMix64 rng(k * 13);
    const auto ls = comp.interior_samples(100, rng);
    std::vector<Vec3> covectors;
    for (const auto& l : ls) {
      const LinearForm3 c = double_polar(k, l);
      // Independent covector T(L, L, .) by polarization.
      Vec3 ref;
      for (int i = 0; i < 3; ++i)
        ref[i] = oracle::polarize([k](const Vec3& v) { return oracle::hesse(k, v); }, l.vec(), l.vec(),
                                  Vec3::Unit(i));
      CHECK((c.covector() - ref).cwiseAbs().maxCoeff() < 1e-10);
      const RayVector d = pole_solve(k, comp, c);
      CHECK((d.vec() - l.vec()).norm() < 1e-8);
      CHECK((double_polar(k, d).covector() - c.covector()).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(comp.contains(d));
      covectors.push_back(c.covector());
    }
    // Distinct classes have distinct double polars.
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
      if ((ls[i].vec() - ls[i + 1].vec()).norm() >= 1e-7)
        CHECK((covectors[i] - covectors[i + 1]).cwiseAbs().maxCoeff() > 1e-6);
  }
}

TEST_CASE("pole solver at boundary rays and strictly positive forms")
{
  const auto comp = component(5, ComponentKind::BOUNDED_POSITIVE);
  const auto& loop = comp.boundary_loop();
  for (std::size_t i = 0; i < loop.size(); i += loop.size() / 9) {
    const RayVector d0(loop[i]);
    const RayVector d = pole_solve(5, comp, double_polar(5, d0));
    CHECK((d.vec() - d0.vec()).norm() < 1e-7);
  }
  // The witness double polar is strictly positive on the closure.
  const LinearForm3 l = double_polar(5, comp.witness);
  for (const auto& v : loop)
    REQUIRE(l(RayVector(v)) > 0);
  CHECK(comp.contains(pole_solve(5, comp, l)));

  CHECK_THROWS_AS(pole_solve(5, comp, LinearForm3(1, -1, 0)), HypothesisFailed);
  const auto hybrid = component(5, ComponentKind::HYBRID);
  CHECK_THROWS_AS(pole_solve(5, hybrid, l), DomainError);
}

TEST_CASE("fermat case table examples")
{
  struct Row
  {
    double a, b;
    int id;
    bool mirrored;
  };
  for (const Row& r : {Row{1.1, 1.1, 1, false}, Row{1, 3, 1, false}, Row{0.3, 0.3, 2, false},
                       Row{0.6, 0.7, 2, false}, Row{0.5, 3, 3, false}, Row{0, 3, 4, false},
                       Row{-1, 3, 5, false}, Row{-3, 2, 5, false}, Row{-1, 2, 5, false},
                       Row{-1, 0.5, 6, false}, Row{3, -1, 5, true}, Row{3, 0.5, 3, true},
                       Row{3, 0, 4, true}, Row{0.5, -1, 6, true}}) {
    CAPTURE(r.a);
    CAPTURE(r.b);
    const auto c = fermat_classify({r.a, r.b, 1});
    CHECK(c.case_id == r.id);
    CHECK(c.mirrored == r.mirrored);
    CHECK_FALSE(c.tie);
    for (const auto& f : c.facts) {
      CAPTURE(f.name);
      CAPTURE(f.detail);
      CHECK(f.holds);
    }
  }
  const auto c2 = fermat_classify({0.3, 0.3, 1});
  CHECK(c2.h_value <= 0);
  // Scaling by a nonzero z does not change the affine point.
  CHECK(fermat_classify({0.6, 0.6, 2}).case_id == 2);
  CHECK(fermat_classify({-2, 1, -2}).case_id == 5);

  const auto tie = fermat_classify({0.5, 1, 1});
  CHECK(tie.tie);
  CHECK(tie.case_id == 2);
  CHECK(tie.matching == std::vector<int>{2, 3});

  CHECK_THROWS_AS(fermat_classify({-1, -1, 1}), DomainError);
  CHECK_THROWS_AS(fermat_classify({0, -1, 1}), DomainError);
  CHECK_THROWS_AS(fermat_classify({2, 2, 1}), DomainError);
  CHECK_THROWS_AS(fermat_classify({1, -1, 0}), AtInfinity);
  CHECK(fermat_classify({0, 0, 1}).case_id == 2);
}

TEST_CASE("fermat case table on a grid")
{
  int classified = 0;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 60; ++j) {
      const double a = -3 + 6 * (i + 0.5) / 60, b = -3 + 6 * (j + 0.5) / 60;
      const bool in_p = oracle::hesse(0, Vec3(a, b, 1)) > 0 && a > 1 && b > 1;
      const bool neg = a <= 0 && b <= 0;
      if (in_p || neg) {
        CHECK_THROWS_AS(fermat_classify({a, b, 1}), DomainError);
        continue;
      }
      const auto c = fermat_classify({a, b, 1});
      ++classified;
      CHECK(c.matching.size() == 1);
      CHECK(c.facts_hold);
    }
  CHECK(classified > 2000);
}

TEST_CASE("k = -2 helper functions")
{
  CHECK(km2_functions(1).t == doctest::Approx(1).epsilon(1e-15));
  const auto q = km2_functions(0.25);
  CHECK(q.t == doctest::Approx(-0.75 + std::sqrt(0.8125)).epsilon(1e-14));
  REQUIRE(q.s);
  CHECK(*q.s == doctest::Approx(0.875).epsilon(1e-14));
  CHECK_FALSE(km2_functions(0.5).s);
  for (int i = 1; i <= 50; ++i) {
    const double mu = 0.5 * i / 51;
    const auto v = km2_functions(mu);
    CHECK(*v.s > v.t);
  }
  CHECK_THROWS_AS(km2_functions(0), DomainError);
}

TEST_CASE("k = -2 facts")
{
  for (double mu : {0.1, 0.25, 0.45, 0.5, 1.0, 1.5, 1.9, 2.0, 3.0}) {
    CAPTURE(mu);
    const auto r = km2_fact_check(mu, 300);
    CHECK(r.all_hold);
    CHECK(r.facts.size() >= 4);
  }
  // The second line meets z = 0 at (1 : 1 : 0) for mu = 1.
  const auto r = km2_fact_check(1, 100);
  bool found = false;
  for (const auto& f : r.facts)
    found = found || (f.name == "second line meets z=0 at (1:t:0)" && f.detail == "t=1");
  CHECK(found);

  // Closed forms of the polar conics.
  const auto f = hesse_cubic(-2);
  const Mat3 g = polar_quadric(f, {1.0 / 3, 1.0 / 3, 1}).matrix();
  Mat3 expect = Mat3::Zero();
  expect(2, 2) = -1.0 / 3;
  CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("integral enumeration")
{
  auto oracle_list = [](double k, const std::function<bool(const Vec3&)>& in, int b, double lo, double hi) {
    std::vector<std::array<int, 3>> out;
    for (int z = b; z >= -b; --z)
      for (int y = b; y >= -b; --y)
        for (int x = b; x >= -b; --x) {
          if (x == 0 && y == 0 && z == 0)
            continue;
          const double v = oracle::hesse(k, Vec3(x, y, z));
          if (v >= lo - 1e-9 * (1 + std::abs(lo)) && v <= hi + 1e-9 * (1 + std::abs(hi)) && in(Vec3(x, y, z)))
            out.push_back({x, y, z});
        }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto as_ints = [](const std::vector<RayVector>& v) {
    std::vector<std::array<int, 3>> out;
    for (const auto& r : v)
      out.push_back({int(r.x()), int(r.y()), int(r.z())});
    return out;
  };

  RegionSpec any;
  CHECK(as_ints(enumerate_integral(5, any, 4, {1, 9})) == oracle_list(5, [](const Vec3&) { return true; }, 4, 1, 9));
  CHECK(enumerate_integral(5, any, 4, {1, 0}).empty());

  RegionSpec bp;
  bp.kind = RegionSpec::Kind::COMPONENT;
  bp.component_id = "BOUNDED_POSITIVE";
  const auto pred = region_predicate(5, bp);
  const auto list = enumerate_integral(5, bp, 6, {1, 200});
  CHECK(as_ints(list) == oracle_list(5, pred, 6, 1, 200));
  CHECK_FALSE(list.empty());
  for (const auto& e : list) {
    const double v = oracle::hesse(5, e.vec());
    CHECK(v >= 1);
    CHECK(v <= 200);
  }

  RegionSpec ray;
  ray.kind = RegionSpec::Kind::RAY;
  ray.direction = Vec3(-1, -1, -3);
  const auto m = enumerate_integral(-2, ray, 12, {1, 9});
  REQUIRE(m.size() == 1);
  CHECK(m[0].vec() == Vec3(-1, -1, -3));

  RegionSpec half;
  half.kind = RegionSpec::Kind::HESSIAN_BOUNDED_HALF_CONE;
  const auto hpred = region_predicate(-1, half);
  const auto h = curve_form(-1, CurveKind::H);
  CHECK(hpred(Vec3(1, 1, 3) * (h(Vec3(1, 1, 3)) >= 0 ? 1 : -1)));
  CHECK_FALSE(hpred(Vec3(5, 5, 1)));
  CHECK(as_ints(enumerate_integral(-1, half, 5, {-50, 50})) == oracle_list(-1, hpred, 5, -50, 50));
  CHECK_THROWS_AS(region_predicate(5, half), DomainError);
}
