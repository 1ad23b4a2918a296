#include "cubiclab/scenario.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/poly.hpp"

#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace cubiclab {

namespace {

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

std::string fmt(const RayVector& r)
{
  return "(" + fmt(r.x()) + ", " + fmt(r.y()) + ", " + fmt(r.z()) + ")";
}

double quad_value(const TernaryCubic& f, const Vec3& d, const Vec3& e, const Vec3& l)
{
  return f.trilinear().apply(d, e, l);
}

} // namespace

std::string to_string(LambdaMethod m)
{
  return m == LambdaMethod::NEGATIVE_FORM ? "NEGATIVE_FORM" : "CUBIC_ROOTS";
}

LambdaBoundResult lambda_bound(double k, const ConeComponent& comp, const RayVector& e, const RayVector& d,
                               const Tolerances& tol)
{
  if (e.is_zero() || d.is_zero())
    throw DomainError("D and E must be nonzero");
  const auto f = hesse_cubic(k, tol);
  if (comp.contains(e, tol))
    throw DomainError("E lies in the component");
  const SubconeQ q = q_subcone(k, comp, e, 200, tol);
  const auto idx = q.region_of(d, tol);
  if (!idx)
    throw DomainError("D is not in a region of {D in comp : E.D^2 > 0}");

  LambdaBoundResult r;
  r.k = k;
  r.d = d;
  r.e = e;
  const Vec3& dv = d.vec();
  const Vec3& ev = e.vec();
  const double fe = f(ev);

  if (fe >= 0.0) {
    r.method = LambdaMethod::NEGATIVE_FORM;
    const QRegion& reg = q.regions[*idx];
    std::vector<RayVector> cert = reg.interior_samples;
    cert.insert(cert.end(), reg.parent_boundary.begin(), reg.parent_boundary.end());
    cert.insert(cert.end(), reg.conic_boundary.begin(), reg.conic_boundary.end());
    double lambda0 = 0.0;
    for (const auto& l : cert) {
      const Vec3 lv = l.vec().normalized();
      const double a2 = quad_value(f, ev, ev, lv);
      if (!(a2 < 0.0))
        throw HypothesisFailed("E^2.L = " + fmt(a2) + " is not negative at L = " + fmt(l));
      const double b = quad_value(f, dv, ev, lv);
      const double c = quad_value(f, dv, dv, lv);
      // (D - lE)^2.L = a2 l^2 - 2 b l + c, negative past its larger root.
      const double disc = b * b - a2 * c;
      if (disc < 0.0)
        continue;
      lambda0 = std::max(lambda0, (b - std::sqrt(disc)) / a2);
    }
    r.lambda0 = lambda0;
    r.certificates = std::move(cert);
  } else {
    r.method = LambdaMethod::CUBIC_ROOTS;
    const auto& t = f.trilinear();
    // (D - tE)^3 = F(D) - 3t D^2.E + 3t^2 D.E^2 - t^3 F(E).
    const auto roots = poly::real_cubic_roots(-fe, 3.0 * t.apply(dv, ev, ev), -3.0 * t.apply(dv, dv, ev), f(dv));
    std::vector<double> pos;
    for (const auto& rt : roots)
      for (int m = 0; m < rt.multiplicity; ++m)
        if (rt.value > 0.0)
          pos.push_back(rt.value);
    if (pos.size() != 2)
      throw HypothesisFailed("(D - tE)^3 does not have two positive roots");
    r.lambda1 = pos[0];
    r.lambda2 = pos[1];
    r.lambda0 = pos[1];
  }
  return r;
}

bool lambda_certificate_holds(const LambdaBoundResult& r, double lambda, const Tolerances& tol)
{
  const auto f = hesse_cubic(r.k, tol);
  const Vec3 m = r.d.vec() - lambda * r.e.vec();
  if (r.method == LambdaMethod::NEGATIVE_FORM) {
    for (const auto& l : r.certificates) {
      const Vec3 lv = l.vec().normalized();
      const double v = quad_value(f, m, m, lv);
      const double scale = std::abs(quad_value(f, r.d.vec(), r.d.vec(), lv)) +
                           lambda * lambda * std::abs(quad_value(f, r.e.vec(), r.e.vec(), lv));
      if (v > 1e-12 * scale)
        return false;
    }
    return true;
  }
  auto cube = [&](double t) { return f(Vec3(r.d.vec() - t * r.e.vec())); };
  if (lambda > r.lambda2)
    return cube(lambda) > 0.0;
  if (lambda > r.lambda1)
    return cube(lambda) < 0.0;
  return cube(lambda) > 0.0;
}

LinearForm3 double_polar(double k, const RayVector& d, const Tolerances& tol)
{
  const auto f = hesse_cubic(k, tol);
  return LinearForm3(f.trilinear().contract(d.vec(), d.vec()));
}

RayVector pole_solve(double k, const ConeComponent& comp, const LinearForm3& l, const Tolerances& tol)
{
  if (comp.kind != ComponentKind::BOUNDED_POSITIVE)
    throw DomainError("pole_solve needs the cone on a bounded component");
  const auto f = hesse_cubic(k, tol);
  const auto& t = f.trilinear();
  const Vec3 target = l.covector();
  const double lnorm = target.cwiseAbs().maxCoeff();
  if (!(lnorm > 0.0))
    throw DomainError("l must be nonzero");

  for (const auto& v : comp.boundary_loop())
    if (target.dot(v) < -1e-9 * lnorm)
      throw HypothesisFailed("l is negative on the boundary ray " + fmt(RayVector(v)));

  SplitMix64 rng(0x5eed);
  std::vector<RayVector> seeds = comp.interior_samples(64, rng, tol);
  seeds.push_back(comp.witness);
  for (const auto& s : seeds)
    if (target.dot(s.vec()) < -1e-9 * lnorm)
      throw HypothesisFailed("l is negative on the interior ray " + fmt(s));

  // Seeds ordered by how well D^2 lines up with l.
  std::vector<std::pair<double, Vec3>> ranked;
  for (const auto& s : seeds) {
    const Vec3 u = s.vec().normalized();
    const Vec3 c = t.contract(u, u);
    ranked.emplace_back(-c.dot(target) / (c.norm() * target.norm()), u * std::sqrt(target.norm() / c.norm()));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  const double goal = tol.newton_residual * std::max(1.0, lnorm);
  for (const auto& [score, seed] : ranked) {
    Vec3 dv = seed;
    auto residual = [&](const Vec3& x) { return Vec3(t.contract(x, x) - target); };
    Vec3 r = residual(dv);
    for (int it = 0; it < 200 && r.cwiseAbs().maxCoeff() >= goal; ++it) {
      const Mat3 j = 2.0 * t.contract(dv);
      const Eigen::FullPivLU<Mat3> lu(j);
      if (!lu.isInvertible())
        break;
      const Vec3 step = -lu.solve(r);
      double s = 1.0;
      Vec3 next = dv + step;
      Vec3 rn = residual(next);
      while (rn.norm() >= r.norm() && s > 1e-10) {
        s *= 0.5;
        next = dv + s * step;
        rn = residual(next);
      }
      if (rn.norm() >= r.norm())
        break;
      dv = next;
      r = rn;
    }
    if (r.cwiseAbs().maxCoeff() >= goal)
      continue;
    // D and -D share the same double polar.
    for (const Vec3& cand : {dv, Vec3(-dv)}) {
      const RayVector rc(cand);
      if (comp.contains(rc, tol) || locate_on_boundary(comp, rc, tol))
        return rc;
    }
  }
  throw NoConvergence("no solution of D^2 = l in the closure of the component");
}

namespace {

struct FermatData
{
  TernaryCubic f, h;
  ConeComponent comp;
  std::vector<Vec3> c1;
  std::vector<RayVector> interior;
};

const FermatData& fermat_data()
{
  static const FermatData data = [] {
    FermatData d;
    d.f = hesse_cubic(0.0);
    d.h = curve_form(0.0, CurveKind::H);
    for (auto& c : enumerate_components(0.0))
      if (c.id == "HYBRID_B1B2")
        d.comp = c;
    const Arc& arc = d.comp.boundary.front().arc;
    d.c1.push_back(arc.endpoints.first.vec().normalized());
    for (const auto& s : arc.samples)
      d.c1.push_back(s.vec().normalized());
    d.c1.push_back(arc.endpoints.second.vec().normalized());
    SplitMix64 rng(0xfe44a7);
    d.interior = d.comp.interior_samples(300, rng);
    return d;
  }();
  return data;
}

/// Roots s <= 0 of c2 s^2 + c1 s + c0, with multiplicity.
int nonpositive_roots(double c2, double c1, double c0, bool include_zero, std::vector<double>* where)
{
  int n = 0;
  auto take = [&](double s, int m) {
    if (s < 0.0 || (include_zero && s == 0.0)) {
      n += m;
      if (where)
        where->push_back(s);
    }
  };
  const double sc = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  if (sc == 0.0)
    return 0;
  if (std::abs(c2) <= 1e-14 * sc) {
    if (std::abs(c1) > 1e-14 * sc)
      take(-c0 / c1, 1);
    return n;
  }
  const auto roots = poly::quadratic_roots(c2, c1, c0);
  if (std::abs(roots[0].imag()) > 1e-12 * (1 + std::abs(roots[0].real())))
    return 0;
  if (std::abs(roots[0].real() - roots[1].real()) <= 1e-9 * (1 + std::abs(roots[0].real()))) {
    take(0.5 * (roots[0].real() + roots[1].real()), 2);
    return n;
  }
  take(roots[0].real(), 1);
  take(roots[1].real(), 1);
  return n;
}

bool case_matches(int id, double a, double b)
{
  switch (id) {
  case 1:
    return a >= 1 && b >= 1;
  case 2:
    return a >= 0 && a <= 1 && b >= 0 && b <= 1 && !(a == 1 && b == 1);
  case 3:
    return a > 0 && a < 1 && b >= 1;
  case 4:
    return a == 0 && b > 1;
  case 5:
    return a < 0 && b >= 1;
  case 6:
    return a < 0 && b > 0 && b < 1;
  }
  return false;
}

void fermat_facts(int id, double a, double b, FermatCase& out, const Tolerances& tol)
{
  const FermatData& fd = fermat_data();
  const RayVector av(a, b, 1.0);
  const QuadraticForm3 g = polar_quadric(fd.f, av);
  const double h = fd.h(av);
  const double hs = fd.h.scale() * std::pow(std::max({1.0, std::abs(a), std::abs(b)}), 3);
  const double heps = 1e-12 * hs;

  int c1 = 0;
  for (const auto& z : arc_zeros(fd.f, g, fd.c1))
    c1 += z.multiplicity;
  // G_A(0, y, 1) and G_A(x, 0, 1) as quadratics in y and x.
  const Mat3& m = g.matrix();
  std::vector<double> l1_at, l2_at;
  const int l1 = nonpositive_roots(m(1, 1), 2 * m(1, 2), m(2, 2), true, &l1_at);
  const int l2 = nonpositive_roots(m(0, 0), 2 * m(0, 2), m(2, 2), false, &l2_at);
  const double g_b1 = g(Vec3(0, 1, 0));
  const double g_b2 = g(Vec3(1, 0, 0));
  bool neg_on_p = true;
  for (const auto& s : fd.interior)
    neg_on_p = neg_on_p && g(s) < 0.0;

  auto add = [&](const std::string& name, bool holds, const std::string& detail = {}) {
    out.facts.push_back({name, holds, detail});
    out.facts_hold = out.facts_hold && holds;
  };
  auto tangent_vis = [&](const RayVector& p) { return tangent_visible(fd.comp, av, p, tol); };
  auto all_visible = [&](const std::vector<RayVector>& pts) {
    for (const auto& p : pts) {
      const auto v = tangent_vis(p);
      if (!v || !*v)
        return false;
    }
    return true;
  };
  // Side of the line a + b = 1, with rounding of the input treated as on it.
  const double excess = a + b - 1.0;
  const int side = std::abs(excess) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b)) ? 0 : (excess > 0 ? 1 : -1);
  const std::string counts = "C1=" + std::to_string(c1) + " L1=" + std::to_string(l1) + " L2=" + std::to_string(l2);
  const std::string hstr = "H(A)=" + fmt(h);

  if (id >= 3 && id <= 5) {
    int c1_distinct = 0;
    for (const auto& z : arc_zeros(fd.f, g, fd.c1))
      c1_distinct += z.multiplicity > 0;
    add("one zero on C1 and one on C2", c1_distinct == 1 && l1_at.size() + l2_at.size() == 1, counts);
  }

  switch (id) {
  case 1: {
    add("two zeros on the closure of C1", c1 == 2, counts);
    add("no zero on C2", l1 + l2 == 0, counts);
    add("H(A) > 0", h > heps, hstr);
    std::vector<RayVector> pts;
    for (double s : {-0.01, -0.1, -1.0, -10.0, -100.0}) {
      pts.emplace_back(0, s, 1);
      pts.emplace_back(s, 0, 1);
    }
    add("C2 visible", all_visible(pts));
    break;
  }
  case 2:
    if (side <= 0) {
      add("H(A) <= 0", h <= heps, hstr);
      add("G_A negative on P interior", neg_on_p);
    } else {
      add("one zero on L1 and one on L2", l1 == 1 && l2 == 1, counts);
      add("H(A) > 0", h > heps, hstr);
      bool ok = l1_at.size() == 1 && l2_at.size() == 1;
      if (ok) {
        std::vector<RayVector> pts{RayVector(0, 0.5 * l1_at[0], 1), RayVector(0.5 * l2_at[0], 0, 1)};
        ok = all_visible(pts);
      }
      add("arc between the zeros visible, not in the extremity", ok);
    }
    break;
  case 3:
    add("H(A) > 0", h > heps, hstr);
    add("zero on L1", l1 == 1, counts);
    add("G_A(B1) < 0", g_b1 < 0, fmt(g_b1));
    add("G_A(B2) > 0", g_b2 > 0, fmt(g_b2));
    add("L2 visible, not in the extremity",
        all_visible({RayVector(-0.1, 0, 1), RayVector(-1, 0, 1), RayVector(-10, 0, 1)}));
    break;
  case 4:
    add("H(A) = 0", std::abs(h) <= heps, hstr);
    add("zero on L1", l1 == 1, counts);
    add("G_A(B1) < 0", g_b1 < 0, fmt(g_b1));
    add("G_A(B2) > 0", g_b2 > 0, fmt(g_b2));
    add("(0,-1,0) and (-1,0,0) visible",
        visible(fd.comp, av, RayVector(0, -1, 0), tol) && visible(fd.comp, av, RayVector(-1, 0, 0), tol));
    break;
  case 5:
    add("G_A(B1) < 0", g_b1 < 0, fmt(g_b1));
    add("G_A(B2) > 0", g_b2 > 0, fmt(g_b2));
    if (side < 0) {
      add("H(A) > 0", h > heps, hstr);
      add("zero on L2", l2 == 1, counts);
      add("L2 near B2 visible", all_visible({RayVector(-50, 0, 1), RayVector(-500, 0, 1)}));
    } else if (side > 0) {
      add("H(A) < 0", h < -heps, hstr);
      add("zero on L1", l1 == 1, counts);
      const auto v1 = tangent_vis(RayVector(0, -50, 1));
      const auto v2 = tangent_vis(RayVector(0, -500, 1));
      add("L1 near B1 not visible", v1 && !*v1 && v2 && !*v2);
    } else {
      add("H(A) = 0", std::abs(h) <= heps, hstr);
      bool pair = false;
      try {
        pair = projective_distance(conic_singular_point(g, tol), RayVector(0, 0, 1)) < 1e-9;
      } catch (const CubicError&) {
      }
      add("G_A is a line pair through (0:0:1)", pair);
      add("C2 near B2 visible", all_visible({RayVector(-50, 0, 1)}));
      const auto v = tangent_vis(RayVector(0, -50, 1));
      add("C2 near B1 not visible", v && !*v);
    }
    break;
  case 6:
    add("H(A) > 0", h > heps, hstr);
    add("G_A negative on P interior", neg_on_p);
    break;
  }
}

} // namespace

FermatCase fermat_classify(const RayVector& a_in, const Tolerances& tol)
{
  if (a_in.is_zero())
    throw DomainError("A must be nonzero");
  if (a_in.z() == 0.0)
    throw AtInfinity("A lies on the line at infinity");
  const RayVector a = a_in.affine();
  const double x = a.x(), y = a.y();
  if (x <= 0 && y <= 0 && !(x == 0 && y == 0))
    throw DomainError("A lies in the closed negative quadrant, where A is in -P");
  if (fermat_data().comp.contains(a, tol))
    throw DomainError("A lies in P");

  FermatCase out;
  out.h_value = evaluate(fermat_data().h, a);
  int best = 0;
  bool best_mirrored = false;
  for (int id = 1; id <= 6; ++id) {
    const bool direct = case_matches(id, x, y);
    const bool mirror = case_matches(id, y, x);
    if (!direct && !mirror)
      continue;
    out.matching.push_back(id);
    if (best == 0) {
      best = id;
      best_mirrored = !direct;
    }
  }
  if (best == 0)
    throw DomainError("A = " + fmt(a) + " is not covered by the case table");
  out.case_id = best;
  out.mirrored = best_mirrored;
  out.tie = out.matching.size() > 1;
  if (out.mirrored)
    fermat_facts(best, y, x, out, tol);
  else
    fermat_facts(best, x, y, out, tol);
  return out;
}

Km2Values km2_functions(double mu)
{
  if (!(mu > 0.0))
    throw DomainError("mu must be positive");
  Km2Values v;
  v.t = mu - 1.0 + std::sqrt((mu - 1.0) * (mu - 1.0) + mu);
  if (mu != 0.5)
    v.s = mu * (2.0 - mu) / (1.0 - 2.0 * mu);
  return v;
}

Km2Report km2_fact_check(double mu, std::size_t samples, const Tolerances& tol)
{
  const Km2Values tv = km2_functions(mu);
  const double k = -2.0;
  const auto f = hesse_cubic(k, tol);
  Km2Report rep;
  rep.mu = mu;
  rep.e = RayVector(-1, mu, 0);
  const QuadraticForm3 g = polar_quadric(f, rep.e);
  const LinearForm3 lin = second_polar(f, rep.e);

  ConeComponent comp;
  for (auto& c : enumerate_components(k, tol))
    if (c.kind == ComponentKind::KM2_SPECIAL && c.id == "KM2_B1B2")
      comp = c;
  SplitMix64 rng(default_seed());
  const std::vector<RayVector> interior = comp.interior_samples(samples, rng, tol);
  std::vector<Vec3> closure;
  for (const auto& s : interior)
    closure.push_back(s.vec().normalized());
  for (const auto& v : comp.boundary_loop())
    closure.push_back(v);

  auto fail = [&](const std::string& fact, const std::string& detail) {
    rep.facts.push_back({fact, false, detail});
    rep.all_hold = false;
    throw HypothesisFailed("k=-2, mu=" + fmt(mu) + ": " + fact + " fails: " + detail);
  };
  auto pass = [&](const std::string& fact, const std::string& detail = {}) { rep.facts.push_back({fact, true, detail}); };

  const RayVector centroid(1.0 / 3, 1.0 / 3, 1);
  const RayVector sing = conic_singular_point(g, tol);
  if (projective_distance(sing, centroid) > 1e-9)
    fail("line pair through (1/3:1/3:1)", "singular point " + fmt(sing));
  pass("line pair through (1/3:1/3:1)");

  // Points at infinity of the two lines: roots of G_E(x, y, 0).
  const Mat3& m = g.matrix();
  std::vector<Vec3> dirs;
  if (std::abs(m(0, 0)) > 1e-14) {
    for (const auto& r : poly::quadratic_roots(m(0, 0), 2 * m(0, 1), m(1, 1)))
      if (std::abs(r.imag()) < 1e-12)
        dirs.emplace_back(r.real(), 1.0, 0.0);
  } else {
    dirs.emplace_back(1.0, 0.0, 0.0);
    dirs.emplace_back(-m(1, 1), 2 * m(0, 1), 0.0);
  }
  if (dirs.size() != 2)
    fail("G_E is a real line pair", "no real points at infinity");

  int missing = -1, splitting = -1;
  std::array<Vec3, 2> lines;
  for (int i = 0; i < 2; ++i) {
    lines[i] = centroid.vec().cross(dirs[i].normalized());
    int pos = 0, neg = 0;
    for (const auto& s : interior) {
      const double v = lines[i].dot(s.vec().normalized());
      pos += v > 1e-12;
      neg += v < -1e-12;
    }
    if (pos > 0 && neg > 0)
      splitting = i;
    else
      missing = i;
  }
  if (missing < 0 || splitting < 0)
    fail("one line misses P, the other splits it", "lines do not separate as stated");
  {
    const Vec3& lm = lines[missing];
    double lo = 1e300, hi = -1e300;
    for (const auto& v : closure) {
      lo = std::min(lo, lm.dot(v));
      hi = std::max(hi, lm.dot(v));
    }
    if (lo < -1e-9 && hi > 1e-9)
      fail("one line misses P", "missing line changes sign on the closure");
  }
  pass("one line misses P, the other splits it");

  // Q is the side of the splitting line containing B2 in its closure.
  {
    const Vec3& ls = lines[splitting];
    const double side_b2 = ls.dot(Vec3(1, 0, 0));
    int good = 0, bad = 0;
    for (const auto& s : interior) {
      if (!(g(s) > 0.0))
        continue;
      (ls.dot(s.vec()) * side_b2 > 0 ? good : bad)++;
    }
    if (bad > 0 || good == 0 || !(g(Vec3(1, 0, 0)) >= 0.0))
      fail("Q is the part with B2 on its boundary", std::to_string(good) + " on the B2 side, " + std::to_string(bad) +
                                                          " across");
    pass("Q is the part with B2 on its boundary", std::to_string(good) + " samples");
  }

  {
    const Vec3 d = dirs[splitting];
    const RayVector at(1.0, d.y() / d.x(), 0.0);
    const double dist = projective_distance(RayVector(d), RayVector(1.0, tv.t, 0.0));
    if (dist > 1e-9)
      fail("second line meets z=0 at (1:t:0)", "meets at " + fmt(at) + ", t=" + fmt(tv.t));
    pass("second line meets z=0 at (1:t:0)", "t=" + fmt(tv.t));
  }

  if (mu > 0.5 && mu < 2.0) {
    for (const auto& v : closure)
      if (!(lin(RayVector(v)) < 0.0))
        fail("E^2.D < 0 on the closure of P", "value " + fmt(lin(RayVector(v))) + " at " + fmt(RayVector(v)));
    pass("E^2.D < 0 on the closure of P");
  } else if (mu == 0.5 || mu == 2.0) {
    const Vec3 asym = mu == 0.5 ? Vec3(1, 0, -1.0 / 3) : Vec3(0, 1, -1.0 / 3);
    if (lin.covector().normalized().cross(asym.normalized()).norm() > 1e-9)
      fail("E^2.D is an asymptote", fmt(RayVector(lin.covector())));
    pass(mu == 0.5 ? "E^2.D is the asymptote through B1" : "E^2.D is the asymptote through B2");
  }
  if (mu > 0.0 && mu < 0.5) {
    const double s = *tv.s;
    int checked = 0;
    for (const auto& v : closure) {
      if (v.z() <= 1e-12)
        continue;
      const Vec3 p = v / v.z();
      if (!(p.y() - 1.0 / 3 < s * (p.x() - 1.0 / 3)))
        continue;
      ++checked;
      if (!(lin(RayVector(p)) < 0.0))
        fail("E^2.D < 0 below the s-line", "value " + fmt(lin(RayVector(p))) + " at " + fmt(RayVector(p)));
    }
    pass("E^2.D < 0 below the s-line", std::to_string(checked) + " samples");
    if (!(s > tv.t))
      fail("s > t", "s=" + fmt(s) + " t=" + fmt(tv.t));
    pass("s > t", "s=" + fmt(s) + " t=" + fmt(tv.t));
  }
  if (mu > 0.0 && mu <= 0.5) {
    // Nonzero points in the closure of Q.
    for (const auto& v : closure) {
      if (!(g(v) >= 0.0) || lines[splitting].dot(v) * lines[splitting].dot(Vec3(1, 0, 0)) < 0.0)
        continue;
      if (!(lin(RayVector(v)) < 0.0))
        fail("E^2.D < 0 on the closure of Q", "value " + fmt(lin(RayVector(v))) + " at " + fmt(RayVector(v)));
    }
    pass("E^2.D < 0 on the closure of Q");
  }
  return rep;
}

std::function<bool(const Vec3&)> region_predicate(double k, const RegionSpec& region, const Tolerances& tol)
{
  switch (region.kind) {
  case RegionSpec::Kind::ANY:
    return [](const Vec3&) { return true; };
  case RegionSpec::Kind::RAY: {
    const Vec3 dir = region.direction;
    if (dir.norm() == 0.0)
      throw DomainError("ray direction must be nonzero");
    return [dir](const Vec3& v) {
      return v.dot(dir) > 0.0 && v.cross(dir).norm() <= 1e-12 * v.norm() * dir.norm();
    };
  }
  case RegionSpec::Kind::COMPONENT: {
    auto comps = enumerate_components(k, tol);
    for (auto& c : comps)
      if (c.id == region.component_id || to_string(c.kind) == region.component_id) {
        auto comp = std::make_shared<const ConeComponent>(std::move(c));
        return [comp, tol](const Vec3& v) { return comp->contains(RayVector(v), tol); };
      }
    throw DomainError("no component " + region.component_id + " at k=" + fmt(k));
  }
  case RegionSpec::Kind::HESSIAN_BOUNDED_HALF_CONE: {
    const Regime r = regime_of(k, tol);
    if (r == Regime::TWO_F_COMPONENTS || r == Regime::KM2)
      throw DomainError("the Hessian has no bounded component at k=" + fmt(k));
    const auto h = std::make_shared<const TernaryCubic>(curve_form(k, CurveKind::H, tol));
    std::vector<Vec2> poly;
    if (r == Regime::FERMAT) {
      poly = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    } else {
      for (const auto& s : trace_branch(k, CurveKind::H, "H_BOUNDED", tol).samples)
        poly.emplace_back(s.x() / s.z(), s.y() / s.z());
    }
    auto shape = std::make_shared<const std::vector<Vec2>>(std::move(poly));
    return [h, shape](const Vec3& v) {
      if (v.z() == 0.0 || (*h)(v) < 0.0)
        return false;
      const Vec2 p(v.x() / v.z(), v.y() / v.z());
      const auto& q = *shape;
      bool inside = false;
      double edge = 1e300;
      for (std::size_t i = 0, j = q.size() - 1; i < q.size(); j = i++) {
        if ((q[i].y() > p.y()) != (q[j].y() > p.y()) &&
            p.x() < (q[j].x() - q[i].x()) * (p.y() - q[i].y()) / (q[j].y() - q[i].y()) + q[i].x())
          inside = !inside;
        const Vec2 e = q[i] - q[j];
        const double t = std::clamp((p - q[j]).dot(e) / e.squaredNorm(), 0.0, 1.0);
        edge = std::min(edge, (p - q[j] - t * e).norm());
      }
      return inside || edge < 1e-9 || std::abs((*h)(Vec3(p.x(), p.y(), 1.0))) <= 1e-12 * h->scale();
    };
  }
  }
  return [](const Vec3&) { return false; };
}

std::vector<RayVector> enumerate_integral(double k, const RegionSpec& region, int sup_norm_bound,
                                          std::pair<double, double> cubic_range, const Tolerances& tol)
{
  if (sup_norm_bound < 1)
    throw DomainError("sup_norm_bound must be at least 1");
  std::vector<RayVector> out;
  const auto [lo, hi] = cubic_range;
  if (lo > hi)
    return out;
  const auto f = hesse_cubic(k, tol);
  const auto in_region = region_predicate(k, region, tol);
  const double lo_e = lo - 1e-9 * (1.0 + std::abs(lo));
  const double hi_e = hi + 1e-9 * (1.0 + std::abs(hi));
  const int b = sup_norm_bound;
  for (int x = -b; x <= b; ++x)
    for (int y = -b; y <= b; ++y)
      for (int z = -b; z <= b; ++z) {
        if (x == 0 && y == 0 && z == 0)
          continue;
        const Vec3 v(x, y, z);
        const double val = f(v);
        if (val < lo_e || val > hi_e)
          continue;
        if (in_region(v))
          out.emplace_back(v);
      }
  return out;
}

} // namespace cubiclab
