#include "doctest.h"

#include "cubiclab/cone_atlas.hpp"

using namespace cubiclab;

namespace {

const ConeComponent& find(const std::vector<ConeComponent>& cs, const std::string& id)
{
  for (const auto& c : cs)
    if (c.id == id)
      return c;
  throw std::runtime_error("missing component " + id);
}

bool has_corner(const ConeComponent& c, const RayVector& r)
{
  for (const auto& x : c.corners)
    if (ray_distance(x, r) < 1e-12)
      return true;
  return false;
}

} // namespace

TEST_CASE("positive index membership")
{
  CHECK(positive_index_membership(5, {1.0 / 3, 1.0 / 3, 1}));
  for (double k : {-3.0, 0.5, 2.0, 5.0})
    CHECK_FALSE(positive_index_membership(k, {0, 0, 1}));
  const Arc oval = trace_branch(5, CurveKind::F, "BOUNDED");
  CHECK_FALSE(positive_index_membership(5, oval.samples[10]));
}

TEST_CASE("component counts and kinds")
{
  CHECK(enumerate_components(5).size() == 4);
  CHECK(enumerate_components(2).size() == 4);
  CHECK(enumerate_components(-3).size() == 4);
  CHECK(enumerate_components(-2).size() == 3);
  // for -2 < k < 1 the negated bounded Hessian cone is positive definite
  for (double k : {0.5, 0.0, -0.5}) {
    std::vector<std::string> warnings;
    const auto cs = enumerate_components(k, {}, {}, &warnings);
    CHECK(cs.size() == 3);
    CHECK(warnings.size() == 1);
    const auto s = signature(polar_quadric(hesse_cubic(k), {-1.0 / 3, -1.0 / 3, -1}));
    CHECK(s == Signature{3, 0, 0});
  }
  const auto cm3 = enumerate_components(-3);
  CHECK(find(cm3, "NEG_BOUNDED_HESSIAN").kind == ComponentKind::NEG_BOUNDED_HESSIAN);
}

TEST_CASE("corner rays")
{
  const auto c5 = enumerate_components(5);
  const auto& h = find(c5, "HYBRID_B1B2");
  CHECK(has_corner(h, {0, -1, 0}));
  CHECK(has_corner(h, {-1, 0, 0}));
  const auto c05 = enumerate_components(0.5);
  const auto& hk = find(c05, "HYBRID_B1B2");
  CHECK(has_corner(hk, {0, 1, 0}));
  CHECK(has_corner(hk, {1, 0, 0}));
  // corners are where the F part and the H part of the boundary meet
  for (const auto& c : c5) {
    if (c.kind != ComponentKind::HYBRID)
      continue;
    REQUIRE(c.boundary.size() == 2);
    const auto& fa = c.boundary[0];
    const auto& ha = c.boundary[1];
    CHECK(ray_distance(RayVector(fa.sign * fa.arc.endpoints.second.vec()), RayVector(ha.sign * ha.arc.endpoints.first.vec())) < 1e-9);
    CHECK(ray_distance(RayVector(fa.sign * fa.arc.endpoints.first.vec()), RayVector(ha.sign * ha.arc.endpoints.second.vec())) < 1e-9);
  }
}

TEST_CASE("witnesses, interior samples, boundary and convexity")
{
  SplitMix64 rng(42);
  for (double k : {5.0, 2.0, -3.0, 0.5, 0.0, -2.0}) {
    const auto f = hesse_cubic(k);
    const auto h = hessian_cubic(f);
    for (const auto& c : enumerate_components(k)) {
      CAPTURE(k);
      CAPTURE(c.id);
      CHECK(positive_index_membership(f, c.witness));
      CHECK(c.contains(c.witness));
      const auto region = component_region(c, 300, rng);
      CHECK(region.interior_samples.size() == 300);
      for (const auto& d : region.interior_samples)
        CHECK(positive_index_membership(f, d));
      CHECK(convexity_check(region, 300, rng));
      for (const auto& v : c.boundary_loop()) {
        const double r = std::min(std::abs(f(v)), std::abs(h(v)) / h.scale());
        const bool at_infinity_km2 = c.kind == ComponentKind::KM2_SPECIAL && std::abs(v.z()) < 1e-12;
        CHECK((r < 1e-9 || at_infinity_km2));
      }
    }
  }
}

TEST_CASE("component_of")
{
  CHECK(component_of(5, {1.0 / 3, 1.0 / 3, 1}) == std::optional<std::string>("BOUNDED_POSITIVE"));
  CHECK(component_of(5, {-3, -3, 1}) == std::optional<std::string>("HYBRID_B1B2"));
  CHECK_FALSE(component_of(5, {0, 0, 1}).has_value());
  // points separated by the symmetry maps land in the matching components
  const auto cs = enumerate_components(5);
  const Vec3 p(-3, -3, 1);
  CHECK(cs[*component_of(cs, RayVector(swap_yw() * p))].id == "HYBRID_B1B3");
  CHECK(cs[*component_of(cs, RayVector(swap_xw() * p))].id == "HYBRID_B2B3");
}

TEST_CASE("antipodal rule for the negative bounded cone")
{
  const double k = -3;
  const auto f = hesse_cubic(k);
  const auto cs = enumerate_components(k);
  const auto& c = find(cs, "NEG_BOUNDED_HESSIAN");
  SplitMix64 rng(3);
  for (const auto& d : c.interior_samples(200, rng)) {
    CHECK(f(-d) < 0);
    CHECK(signature(polar_quadric(f, -d)) == Signature{2, 1, 0});
  }
}

TEST_CASE("q subcones")
{
  const auto cm3 = enumerate_components(-3);
  const auto& p = find(cm3, "HYBRID_B1B2");
  CHECK(q_subcone(-3, p, {0.28, 0.28, 1}).regions.size() == 2);
  CHECK(q_subcone(-3, p, {0.25, 0.25, 1}).regions.size() == 0);

  const auto c5 = enumerate_components(5);
  const auto& h = find(c5, "HYBRID_B1B2");
  CHECK(q_subcone(5, h, {-1, 3, 1}).regions.size() == 1);
  CHECK(q_subcone(5, h, {-2, 1, 1}).regions.size() == 1);

  SplitMix64 rng(8);
  const auto qw = q_subcone(5, h, h.witness);
  REQUIRE(qw.regions.size() == 1);
  for (const auto& d : h.interior_samples(200, rng))
    CHECK(qw.region_contains(0, d));

  const auto q2 = q_subcone(-3, p, {0.28, 0.28, 1});
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& d : q2.regions[i].interior_samples)
      CHECK(q2.g_e(d) > 0);
    CHECK(convexity_check(q2.region(i), 300, rng));
    CHECK_FALSE(q2.regions[i].conic_boundary.empty());
  }
  CHECK_FALSE(convexity_check(q2.all_regions(), 300, rng));
}
