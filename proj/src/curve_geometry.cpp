#include "cubiclab/curve_geometry.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/poly.hpp"

#include <algorithm>
#include <cmath>

namespace cubiclab {

namespace {

const RayVector kB1(0, 1, 0), kB2(1, 0, 0), kB3(1, -1, 0);

// Unit-sphere tracer state.
struct Walker
{
  TernaryCubic c;  // rescaled so the largest coefficient is 1
  TraceOptions opts;

  double value(const Vec3& v) const { return c(v); }

  Vec3 tangent(const Vec3& v) const
  {
    const Vec3 t = v.cross(c.gradient(v));
    return t.normalized();
  }

  bool correct(Vec3& w) const
  {
    w.normalize();
    for (int it = 0; it < 12; ++it) {
      const double f = c(w);
      if (std::abs(f) < 1e-15)
        return true;
      const Vec3 g = c.gradient(w);
      const Vec3 gp = g - g.dot(w) * w;
      const double n2 = gp.squaredNorm();
      if (n2 < 1e-24)
        return false;
      w -= (f / n2) * gp;
      w.normalize();
    }
    return std::abs(c(w)) < 1e-13;
  }
};

double affine_ratio(const Vec3& v)
{
  return (std::abs(v.x()) + std::abs(v.y())) / std::max(v.z(), 0.0);
}

enum class Stop { INFINITY_REACHED, LOOP_CLOSED };

// March from v0 along dir until the branch leaves through z = 0 or returns to v0.
Stop march(const Walker& wk, const Vec3& v0, Vec3 dir, std::vector<Vec3>& out)
{
  Vec3 v = v0;
  double h = wk.opts.max_step;
  double travelled = 0.0;
  while (static_cast<int>(out.size()) < wk.opts.max_samples) {
    double cap = wk.opts.max_step;
    // Slow down while approaching the line at infinity so the cutoff is hit
    // before z changes sign.
    cap = std::min(cap, std::max(0.5 * v.z(), 1e-12));
    const double step = std::min(h, cap);

    Vec3 w = v + step * dir;
    bool ok = wk.correct(w);
    Vec3 ndir;
    if (ok) {
      ndir = wk.tangent(w);
      if (ndir.dot(dir) < 0.0)
        ndir = -ndir;
      const double ang = std::acos(std::clamp(v.dot(w), -1.0, 1.0));
      ok = ang <= 2.0 * step + 1e-15 && ndir.dot(dir) > std::cos(0.25) && w.z() > 0.0;
    }
    if (!ok) {
      h = 0.5 * step;
      if (h < wk.opts.min_step)
        throw NoConvergence("branch tracing stalled");
      continue;
    }

    travelled += std::acos(std::clamp(v.dot(w), -1.0, 1.0));
    v = w;
    dir = ndir;
    if (travelled > 4.0 * wk.opts.max_step && (v - v0).norm() < 1.01 * step + 1e-12)
      return Stop::LOOP_CLOSED;
    out.push_back(v);
    if (affine_ratio(v) > wk.opts.cutoff)
      return Stop::INFINITY_REACHED;
    h = std::min(1.5 * h, wk.opts.max_step);
  }
  throw NoConvergence("branch tracing exceeded the sample budget");
}

RayVector snap(const Vec3& v, const std::vector<RayVector>& ends)
{
  RayVector best;
  double bd = 1e300;
  for (const auto& e : ends)
    for (const RayVector& r : {e, -e}) {
      const double d = ray_distance(RayVector(v), r);
      if (d < bd) {
        bd = d;
        best = r.normalized();
      }
    }
  if (bd > 0.05)
    throw NoConvergence("branch end does not approach a known point at infinity");
  return best;
}

RayVector affine_sample(const Vec3& v)
{
  return RayVector(v / v.z());
}

// Roots of C(t, t, 1) = 0, with multiplicities.
std::vector<double> diagonal_roots(const TernaryCubic& c)
{
  const Vec3 p(0, 0, 1), q(1, 1, 0);
  const auto& t = c.trilinear();
  const auto roots = poly::real_cubic_roots(c(q), 3.0 * t.apply(p, q, q), 3.0 * t.apply(p, p, q), c(p));
  std::vector<double> out;
  for (const auto& r : roots)
    out.push_back(r.value);
  return out;
}

double diagonal_seed(const TernaryCubic& c, bool bounded)
{
  const auto roots = diagonal_roots(c);
  for (double t : roots) {
    const bool inside = t > 0.0 && t < 0.5;
    if (inside == bounded)
      return t;
  }
  throw NoConvergence("no diagonal seed for the requested branch");
}

Arc lines_c2_fermat(const TraceOptions& opts)
{
  // k = 0: the Hessian branch through the origin is x = 0, y <= 0 followed by
  // y = 0, x <= 0.
  Arc a;
  a.curve = CurveKind::H;
  a.branch_id = "C2";
  const int n = 400;
  const double far = opts.cutoff;
  for (int i = 0; i <= n; ++i) {
    const double s = far * std::pow(1.0 - double(i) / n, 3.0);
    a.samples.emplace_back(0.0, -s, 1.0);
  }
  for (int i = 1; i <= n; ++i) {
    const double s = far * std::pow(double(i) / n, 3.0);
    a.samples.emplace_back(-s, 0.0, 1.0);
  }
  a.endpoints = {-kB1, -kB2};
  return a;
}

Arc triangle_fermat()
{
  Arc a;
  a.curve = CurveKind::H;
  a.branch_id = "H_BOUNDED";
  const int n = 200;
  const std::array<Vec3, 3> v{Vec3(0, 0, 1), Vec3(1, 0, 1), Vec3(0, 1, 1)};
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < n; ++i) {
      const double t = double(i) / n;
      a.samples.emplace_back((1 - t) * v[s] + t * v[(s + 1) % 3]);
    }
  a.endpoints = {a.samples.front(), a.samples.front()};
  a.closed = true;
  return a;
}

Arc segment_at_infinity()
{
  Arc a;
  a.curve = CurveKind::H;
  a.branch_id = "C3";
  const int n = 200;
  for (int i = 0; i <= n; ++i) {
    const double s = double(i) / n;
    a.samples.emplace_back(s, 1.0 - s, 0.0);
  }
  a.endpoints = {kB1, kB2};
  return a;
}

bool is_close(double a, double b, double band) { return std::abs(a - b) <= band; }

} // namespace

std::string to_string(CurveKind c)
{
  return c == CurveKind::F ? "F" : "H";
}

Regime regime_of(double k, const Tolerances& tol)
{
  if (is_close(k, 1.0, tol.degenerate_k_band))
    throw DegenerateParameter("k = 1 splits the cubic into a line and a conic");
  if (is_close(k, 0.0, tol.degenerate_k_band))
    return Regime::FERMAT;
  if (is_close(k, -2.0, tol.degenerate_k_band))
    return Regime::KM2;
  return k > 1.0 ? Regime::TWO_F_COMPONENTS : Regime::ONE_F_COMPONENT;
}

std::array<RayVector, 3> inflexion_points(double k, const Tolerances& tol)
{
  regime_of(k, tol);
  return {kB1, kB2, kB3};
}

std::array<LinearForm3, 3> asymptotes(double k, const Tolerances& tol)
{
  const auto f = hesse_cubic(k, tol);
  std::array<LinearForm3, 3> out;
  const auto b = inflexion_points(k, tol);
  for (int i = 0; i < 3; ++i) {
    const Vec3 l = second_polar(f, b[i]).covector();
    out[i] = LinearForm3(l / l.cwiseAbs().maxCoeff());
  }
  return out;
}

CurveTopology curve_topology(double k, const Tolerances& tol)
{
  CurveTopology t;
  t.k = k;
  const Regime r = regime_of(k, tol);
  t.inflexions = inflexion_points(k, tol);
  t.asymptotes = asymptotes(k, tol);
  t.f_components = r == Regime::TWO_F_COMPONENTS ? 2 : 1;
  switch (r) {
  case Regime::TWO_F_COMPONENTS:
    t.h_components = 1;
    break;
  case Regime::ONE_F_COMPONENT:
    t.h_components = 2;
    break;
  case Regime::FERMAT:
    t.h_shape = HessianShape::LINE_TRIPLE;
    break;
  case Regime::KM2:
    t.h_shape = HessianShape::LINE_PLUS_POINT;
    break;
  }
  return t;
}

TernaryCubic curve_form(double k, CurveKind curve, const Tolerances& tol)
{
  const auto f = hesse_cubic(k, tol);
  return curve == CurveKind::F ? f : hessian_cubic(f);
}

Mat3 swap_xy()
{
  Mat3 m;
  m << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  return m;
}

Mat3 swap_yw()
{
  Mat3 m;
  m << 1, 0, 0, -1, -1, 1, 0, 0, 1;
  return m;
}

Mat3 swap_xw()
{
  Mat3 m;
  m << -1, -1, 1, 0, 1, 0, 0, 0, 1;
  return m;
}

Arc reversed(Arc arc)
{
  std::reverse(arc.samples.begin(), arc.samples.end());
  std::swap(arc.endpoints.first, arc.endpoints.second);
  return arc;
}

Arc transform_arc(const Arc& arc, const Mat3& m, const std::string& new_id)
{
  Arc out;
  out.curve = arc.curve;
  out.branch_id = new_id;
  out.closed = arc.closed;
  auto map = [&](const RayVector& r) {
    const Vec3 v = m * r.vec();
    return r.z() != 0.0 ? RayVector(v / v.z()) : RayVector(v).normalized();
  };
  for (const auto& s : arc.samples)
    out.samples.push_back(map(s));
  out.endpoints = {map(arc.endpoints.first), map(arc.endpoints.second)};
  return out;
}

std::pair<Arc, Arc> split_arc(const Arc& arc, const RayVector& point)
{
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t i = 0; i < arc.samples.size(); ++i) {
    const double d = ray_distance(arc.samples[i], point);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  // Keep the split point strictly between neighbours.
  const RayVector p = point.z() != 0.0 ? point.affine() : point;
  Arc a = arc, b = arc;
  a.closed = b.closed = false;
  a.samples.assign(arc.samples.begin(), arc.samples.begin() + best);
  b.samples.assign(arc.samples.begin() + best + 1, arc.samples.end());
  if (best > 0 && best + 1 < arc.samples.size()) {
    // Decide which side the nearest sample belongs to.
    const double dprev = ray_distance(arc.samples[best - 1], p);
    const double dnext = ray_distance(arc.samples[best + 1], p);
    if (dprev < dnext)
      b.samples.insert(b.samples.begin(), arc.samples[best]);
    else
      a.samples.push_back(arc.samples[best]);
  }
  a.samples.push_back(p);
  b.samples.insert(b.samples.begin(), p);
  a.endpoints = {arc.endpoints.first, p};
  b.endpoints = {p, arc.endpoints.second};
  return {a, b};
}

Vec3 project_to_curve(const TernaryCubic& c, Vec3 w)
{
  w.normalize();
  for (int it = 0; it < 30; ++it) {
    const double f = c(w);
    const Vec3 g = c.gradient(w);
    const Vec3 gp = g - g.dot(w) * w;
    if (gp.squaredNorm() == 0.0)
      break;
    w -= (f / gp.squaredNorm()) * gp;
    w.normalize();
    if (std::abs(f) < 1e-16 * c.scale())
      break;
  }
  return w;
}

double max_residual(const Arc& arc, const TernaryCubic& form)
{
  double m = 0.0;
  for (const auto& s : arc.samples)
    m = std::max(m, std::abs(form(s.normalized())));
  return m;
}

Arc trace_through(const TernaryCubic& c, const RayVector& seed, const std::vector<RayVector>& ends,
                  const TraceOptions& opts)
{
  Walker wk{c.scaled(1.0 / c.scale()), opts};
  Vec3 v0 = seed.vec();
  if (!wk.correct(v0))
    throw NoConvergence("seed could not be projected onto the curve");
  if (v0.z() < 0.0)
    v0 = -v0;

  const Vec3 t0 = wk.tangent(v0);
  std::vector<Vec3> fwd;
  Arc arc;
  if (march(wk, v0, t0, fwd) == Stop::LOOP_CLOSED) {
    arc.samples.push_back(affine_sample(v0));
    for (const auto& v : fwd)
      arc.samples.push_back(affine_sample(v));
    arc.closed = true;
    arc.endpoints = {arc.samples.front(), arc.samples.front()};
    return arc;
  }
  std::vector<Vec3> bwd;
  if (march(wk, v0, -t0, bwd) == Stop::LOOP_CLOSED)
    throw NoConvergence("inconsistent branch topology while tracing");

  for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
    arc.samples.push_back(affine_sample(*it));
  arc.samples.push_back(affine_sample(v0));
  for (const auto& v : fwd)
    arc.samples.push_back(affine_sample(v));
  arc.endpoints = {snap(bwd.back(), ends), snap(fwd.back(), ends)};
  return arc;
}

std::vector<std::string> branch_ids(double k, CurveKind curve, const Tolerances& tol)
{
  const Regime r = regime_of(k, tol);
  if (curve == CurveKind::F) {
    std::vector<std::string> ids{"C1", "F_B1B3", "F_B2B3"};
    if (r == Regime::TWO_F_COMPONENTS)
      ids.push_back("BOUNDED");
    return ids;
  }
  switch (r) {
  case Regime::TWO_F_COMPONENTS:
    return {"C2", "H_B1B3", "H_B2B3", "B1R", "RB2", "Q1B3", "B3Q2"};
  case Regime::KM2:
    return {"C3", "H_B1B3", "H_B2B3"};
  default:
    return {"C2", "H_B1B3", "H_B2B3", "H_BOUNDED"};
  }
}

Arc trace_branch(double k, CurveKind curve, const std::string& branch_id, const Tolerances& tol,
                 const TraceOptions& opts)
{
  const auto ids = branch_ids(k, curve, tol);
  if (std::find(ids.begin(), ids.end(), branch_id) == ids.end())
    throw UnknownBranch("branch " + branch_id + " does not exist for k = " + std::to_string(k));

  const Regime r = regime_of(k, tol);
  const std::string main_id = curve == CurveKind::F ? "C1" : (r == Regime::KM2 ? "C3" : "C2");
  const std::vector<RayVector> ends{kB1, kB2, kB3};

  auto main_branch = [&]() {
    if (curve == CurveKind::H && r == Regime::FERMAT)
      return lines_c2_fermat(opts);
    if (curve == CurveKind::H && r == Regime::KM2)
      return segment_at_infinity();
    const auto c = curve_form(k, curve, tol);
    const double t = diagonal_seed(c, false);
    Arc a = trace_through(c, RayVector(t, t, 1), ends, opts);
    if (projective_distance(a.endpoints.first, kB1) > 1e-6)
      a = reversed(a);
    a.curve = curve;
    a.branch_id = main_id;
    return a;
  };

  if (branch_id == main_id)
    return main_branch();
  if (branch_id == "F_B1B3" || branch_id == "H_B1B3")
    return transform_arc(main_branch(), swap_yw(), branch_id);
  if (branch_id == "F_B2B3" || branch_id == "H_B2B3")
    return reversed(transform_arc(main_branch(), swap_xw(), branch_id));

  if (branch_id == "BOUNDED" || branch_id == "H_BOUNDED") {
    if (curve == CurveKind::H && r == Regime::FERMAT)
      return triangle_fermat();
    const auto c = curve_form(k, curve, tol);
    const double t = diagonal_seed(c, true);
    Arc a = trace_through(c, RayVector(t, t, 1), ends, opts);
    a.curve = curve;
    a.branch_id = branch_id;
    return a;
  }

  // Sub-arcs of the Hessian for k > 1.
  const auto f = hesse_cubic(k, tol);
  if (branch_id == "B1R" || branch_id == "RB2") {
    const double rc = k / (2.0 * (k - 1.0));
    auto [first, second] = split_arc(trace_branch(k, curve, "C2", tol, opts), RayVector(rc, rc, 1));
    first.branch_id = "B1R";
    second.branch_id = "RB2";
    return branch_id == "B1R" ? first : second;
  }
  if (branch_id == "Q1B3") {
    const RayVector q1 = conic_singular_point(polar_quadric(f, kB1), tol).affine();
    Arc a = split_arc(trace_branch(k, curve, "H_B2B3", tol, opts), q1).second;
    a.branch_id = branch_id;
    return a;
  }
  const RayVector q2 = conic_singular_point(polar_quadric(f, kB2), tol).affine();
  Arc a = reversed(split_arc(trace_branch(k, curve, "H_B1B3", tol, opts), q2).second);
  a.branch_id = branch_id;
  return a;
}

std::vector<Arc> all_branches(double k, CurveKind curve, const Tolerances& tol, const TraceOptions& opts)
{
  std::vector<Arc> out;
  for (const auto& id : branch_ids(k, curve, tol)) {
    if (id == "B1R" || id == "RB2" || id == "Q1B3" || id == "B3Q2")
      continue;
    out.push_back(trace_branch(k, curve, id, tol, opts));
  }
  return out;
}

std::vector<LineIntersection> line_cubic_intersections(const TernaryCubic& c, const RayVector& p1,
                                                       const RayVector& p2)
{
  const Vec3 e1 = p1.vec().normalized();
  Vec3 e2 = p2.vec() - p2.vec().dot(e1) * e1;
  if (p1.is_zero() || p2.is_zero() || e2.norm() <= 1e-12 * p2.vec().norm())
    throw IdenticalPoints("the two points do not span a line");
  e2.normalize();

  // Rotate the basis so the first direction is far from every root.
  double best = -1.0;
  Vec3 f1, f2;
  for (int i = 0; i < 6; ++i) {
    const double phi = i * M_PI / 6.0;
    const Vec3 u = std::cos(phi) * e1 + std::sin(phi) * e2;
    if (std::abs(c(u)) > best) {
      best = std::abs(c(u));
      f1 = u;
      f2 = -std::sin(phi) * e1 + std::cos(phi) * e2;
    }
  }
  if (best <= 1e-14 * c.scale())
    throw DomainError("the line is contained in the curve");

  // C(w f1 + f2) = a w^3 + b w^2 + c w + d.
  const auto& t = c.trilinear();
  const double a = c(f1), b = 3.0 * t.apply(f1, f1, f2), cc = 3.0 * t.apply(f1, f2, f2), d = c(f2);
  std::vector<LineIntersection> out;
  for (const auto& r : poly::real_cubic_roots(a, b, cc, d))
    out.push_back({canonical_projective(RayVector(r.value * f1 + f2)), r.multiplicity});
  return out;
}

} // namespace cubiclab
