#include "cubiclab/visibility.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/steinian.hpp"

#include <algorithm>
#include <cmath>

namespace cubiclab {

namespace {

constexpr double kBoundaryResidual = 1e-6;
constexpr double kBoundaryDistance = 1e-3;
constexpr double kCornerDistance = 1e-6;
constexpr double kTangentCos = 1e-6;

// Rays of a boundary piece in order, with its orientation applied.
std::vector<Vec3> piece_rays(const BoundaryPiece& p)
{
  std::vector<Vec3> out;
  const double s = p.sign;
  if (!p.arc.closed)
    out.push_back(s * p.arc.endpoints.first.vec().normalized());
  for (const auto& r : p.arc.samples)
    out.push_back(s * r.vec().normalized());
  if (!p.arc.closed)
    out.push_back(s * p.arc.endpoints.second.vec().normalized());
  else if (!out.empty())
    out.push_back(out.front());
  return out;
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b)
{
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 == 0.0 ? 0.0 : std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Keeps consecutive unit vectors on the same side so interpolation is meaningful.
std::vector<Vec3> aligned(std::vector<Vec3> pts)
{
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].dot(pts[i - 1]) < 0.0)
      pts[i] = -pts[i];
  return pts;
}

Vec3 curve_point(const TernaryCubic& c, const std::vector<Vec3>& pts, double t)
{
  const std::size_t last = pts.size() - 1;
  std::size_t j = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(last)));
  if (j == last)
    return pts[last];
  const double s = t - static_cast<double>(j);
  return project_to_curve(c, (1.0 - s) * pts[j] + s * pts[j + 1]);
}

double form_scale(const QuadraticForm3& q) { return q.matrix().cwiseAbs().maxCoeff(); }

Tolerances fine_tolerances()
{
  Tolerances t;
  t.kernel_rank_rel = 1e-13;
  return t;
}

// Outward unit normal of comp at a smooth boundary ray d on the given piece.
Vec3 outward_normal(const ConeComponent& comp, const BoundaryPiece& piece, const Vec3& d, const Tolerances& tol)
{
  const TernaryCubic phi = curve_form(comp.k, piece.arc.curve, tol);
  Vec3 n = phi.gradient(d);
  if (n.dot(comp.witness.vec().normalized()) > 0.0)
    n = -n;
  return n.normalized();
}

const ConeComponent& find_component(const std::vector<ConeComponent>& comps, const std::string& id)
{
  for (const auto& c : comps)
    if (c.id == id)
      return c;
  throw DomainError("no component " + id);
}

double upper_hessian_root(const TernaryCubic& h, double x)
{
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : line_cubic_intersections(h, RayVector(x, 0, 1), RayVector(x, 1, 1))) {
    const Vec3 v = p.point.vec();
    if (std::abs(v.z()) > 1e-12 * v.cwiseAbs().maxCoeff())
      best = std::max(best, v.y() / v.z());
  }
  return best;
}

} // namespace

std::optional<BoundaryLocation> locate_on_boundary(const ConeComponent& comp, const RayVector& d,
                                                   const Tolerances& tol)
{
  if (d.is_zero())
    return std::nullopt;
  const Vec3 v = d.vec().normalized();
  std::optional<BoundaryLocation> best;
  for (std::size_t i = 0; i < comp.boundary.size(); ++i) {
    const auto& piece = comp.boundary[i];
    const TernaryCubic phi = curve_form(comp.k, piece.arc.curve, tol);
    if (std::abs(phi(v)) / phi.scale() > kBoundaryResidual)
      continue;
    const auto rays = piece_rays(piece);
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + 1 < rays.size(); ++j)
      dist = std::min(dist, point_segment_distance(v, rays[j], rays[j + 1]));
    if (rays.size() == 1)
      dist = (v - rays[0]).norm();
    if (dist < kBoundaryDistance && (!best || dist < best->distance))
      best = BoundaryLocation{i, false, dist};
  }
  if (best)
    for (const auto& c : comp.corners)
      if ((v - c.vec().normalized()).norm() < kCornerDistance)
        best->corner = true;
  return best;
}

bool segment_avoids_interior(const ConeComponent& comp, const Vec3& a, const Vec3& d0)
{
  static const Tolerances fine = fine_tolerances();
  const TernaryCubic f = hesse_cubic(comp.k, Tolerances{}, true);
  // Rays within rounding of the boundary do not count as interior.
  auto inside = [&](double t) {
    const Vec3 p = (1.0 - t) * a + t * d0;
    if (p.norm() < 1e-12 || f(p.normalized()) <= 1e-13 * f.scale())
      return false;
    return comp.contains(RayVector(p), fine);
  };
  constexpr int n = 256;
  for (int i = 0; i < n; ++i)
    if (inside(static_cast<double>(i) / n))
      return false;
  for (int j = 9; j <= 32; ++j)
    if (inside(1.0 - std::ldexp(1.0, -j)))
      return false;
  return true;
}

VisibilityReport visibility_report(const ConeComponent& comp, const RayVector& a, const RayVector& d0,
                                   const Tolerances& tol)
{
  if (a.is_zero())
    throw DomainError("A must be nonzero");
  VisibilityReport r;
  Vec3 av = a.vec().normalized(), dv = d0.vec().normalized();
  auto loc = locate_on_boundary(comp, d0, tol);
  if (!loc) {
    loc = locate_on_boundary(comp, -d0, tol);
    if (!loc)
      throw NotOnBoundary("D0 is not on the boundary of the component or of its negative");
    r.negated = true;
    av = -av;
    dv = -dv;
  }
  r.visible = segment_avoids_interior(comp, av, dv);
  r.smooth = !loc->corner;
  if (r.smooth) {
    r.tangent_cos = outward_normal(comp, comp.boundary[loc->piece], dv, tol).dot(av);
    if (std::abs(r.tangent_cos) >= kTangentCos)
      r.tangent_visible = r.tangent_cos > 0.0;
  }
  return r;
}

bool visible(const ConeComponent& comp, const RayVector& a, const RayVector& d0, const Tolerances& tol)
{
  return visibility_report(comp, a, d0, tol).visible;
}

std::optional<bool> tangent_visible(const ConeComponent& comp, const RayVector& a, const RayVector& d0,
                                    const Tolerances& tol)
{
  if (a.is_zero())
    throw DomainError("A must be nonzero");
  Vec3 av = a.vec().normalized(), dv = d0.vec().normalized();
  auto loc = locate_on_boundary(comp, d0, tol);
  if (!loc) {
    loc = locate_on_boundary(comp, -d0, tol);
    if (!loc)
      throw NotOnBoundary("D0 is not on the boundary of the component or of its negative");
    av = -av;
    dv = -dv;
  }
  if (loc->corner)
    return std::nullopt;
  const double c = outward_normal(comp, comp.boundary[loc->piece], dv, tol).dot(av);
  if (std::abs(c) < kTangentCos)
    return std::nullopt;
  return c > 0.0;
}

std::vector<ExtremityPoint> visible_extremity(const ConeComponent& comp, const RayVector& a, const Tolerances& tol)
{
  if (a.is_zero())
    throw DomainError("A must be nonzero");
  const Vec3 av = a.vec().normalized();
  std::vector<ExtremityPoint> out;
  auto add = [&](const Vec3& v, std::size_t piece, bool corner) {
    const RayVector r(v);
    for (const auto& e : out)
      if (ray_distance(e.ray, r) < 1e-8)
        return;
    out.push_back({r, piece, corner});
  };

  for (std::size_t i = 0; i < comp.boundary.size(); ++i) {
    const auto& piece = comp.boundary[i];
    const TernaryCubic phi = curve_form(comp.k, piece.arc.curve, tol);
    const auto rays = piece_rays(piece);
    auto f = [&](const Vec3& v) { return phi.gradient(v).dot(av); };
    for (std::size_t j = 0; j + 1 < rays.size(); ++j) {
      const double fa = f(rays[j]), fb = f(rays[j + 1]);
      if (fa == 0.0) {
        add(rays[j], i, false);
        continue;
      }
      if (fb == 0.0 || (fa > 0.0) == (fb > 0.0))
        continue;
      Vec3 lo = rays[j], hi = rays[j + 1];
      double flo = fa;
      for (int it = 0; it < 80 && (lo - hi).norm() > 1e-15; ++it) {
        Vec3 mid = project_to_curve(phi, lo + hi);
        if (mid.dot(lo) < 0.0)
          mid = -mid;
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      Vec3 z = project_to_curve(phi, lo + hi);
      if (z.dot(lo) < 0.0)
        z = -z;
      add(z, i, false);
    }
  }
  for (const auto& c : comp.corners) {
    const Vec3 cv = c.vec().normalized();
    if (segment_avoids_interior(comp, av, cv) && segment_avoids_interior(comp, -av, cv))
      add(cv, 0, true);
  }
  return out;
}

std::vector<ArcZero> arc_zeros(const TernaryCubic& c, const QuadraticForm3& q, const std::vector<Vec3>& raw)
{
  std::vector<ArcZero> out;
  if (raw.empty())
    return out;
  const auto pts = aligned(raw);
  const std::size_t n = pts.size();
  const double ztol = 1e-10 * form_scale(q);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = q(pts[i]);
  auto is_zero = [&](std::size_t i) { return std::abs(v[i]) <= ztol; };
  auto sgn = [&](std::size_t i) { return v[i] > 0.0 ? 1 : -1; };

  for (std::size_t i = 0; i < n;) {
    if (!is_zero(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && is_zero(j + 1))
      ++j;
    const bool has_prev = i > 0, has_next = j + 1 < n;
    int mult = 1;
    if (has_prev && has_next && sgn(i - 1) == sgn(j + 1))
      mult = 2;
    out.push_back({0.5 * static_cast<double>(i + j), mult});
    i = j + 1;
  }

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!is_zero(i) && !is_zero(i + 1) && sgn(i) != sgn(i + 1))
      out.push_back({static_cast<double>(i) + 0.5, 1});

  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(i))
      continue;
    const bool has_prev = i > 0, has_next = i + 1 < n;
    if (!has_prev && !has_next)
      continue;
    bool dip = true;
    for (std::size_t j : {i - 1, i + 1}) {
      if ((j == i - 1 && !has_prev) || (j == i + 1 && !has_next))
        continue;
      dip = dip && !is_zero(j) && sgn(j) == sgn(i) && std::abs(v[i]) <= std::abs(v[j]);
    }
    if (!dip)
      continue;
    // Golden-section search for the minimum of sign * q along the curve.
    const double s = sgn(i);
    double lo = has_prev ? static_cast<double>(i - 1) : static_cast<double>(i);
    double hi = has_next ? static_cast<double>(i + 1) : static_cast<double>(i);
    auto g = [&](double t) { return s * q(curve_point(c, pts, t)); };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double g1 = g(x1), g2 = g(x2);
    double best = std::min({g1, g2, std::abs(v[i])});
    double where = static_cast<double>(i);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      if (g1 < g2) {
        hi = x2;
        x2 = x1;
        g2 = g1;
        x1 = hi - phi * (hi - lo);
        g1 = g(x1);
      } else {
        lo = x1;
        x1 = x2;
        g1 = g2;
        x2 = lo + phi * (hi - lo);
        g2 = g(x2);
      }
      if (std::min(g1, g2) < best) {
        best = std::min(g1, g2);
        where = g1 < g2 ? x1 : x2;
      }
      if (best < 0.0)
        break;
    }
    if (best < 0.0) {
      out.push_back({where, 1});
      out.push_back({where, 1});
    } else if (best <= ztol) {
      out.push_back({where, 2});
    }
  }
  std::sort(out.begin(), out.end(), [](const ArcZero& l, const ArcZero& r) { return l.position < r.position; });
  return out;
}

std::map<std::string, int> ga_zero_table(double k, const RayVector& a, std::string* region, const Tolerances& tol)
{
  if (!(k > 1.0) || regime_of(k, tol) != Regime::TWO_F_COMPONENTS)
    throw DomainError("the zero-count table needs k > 1");
  const Vec3 v = a.vec();
  if (!(std::abs(v.z()) > 1e-12 * v.cwiseAbs().maxCoeff()))
    throw DomainError("the zero-count table needs an affine A");
  double x = v.x() / v.z(), y = v.y() / v.z();
  const double u = -1.0 / (k - 1.0);
  const double kp = hessian_parameter(k, tol);
  const double s = kp / (kp - 1.0);
  const double eps = 1e-12 * (1.0 + std::abs(x) + std::abs(y));
  std::map<std::string, int> m{{"C1", 0}, {"B1R", 0}, {"R", 0}, {"RB2", 0}};
  std::string label;

  if (x <= u && y <= u && positive_index_membership(k, RayVector(x, y, 1.0), tol)) {
    // Inside the hybrid component itself: G_A is positive on all of it.
    label = "A in P";
  } else if (x <= u && y <= u) {
    m["C1"] = 2;
    label = "a<=u, b<=u";
  } else if (x > u && y > u) {
    const double d = x + y - s;
    if (d > eps) {
      label = "a>u, b>u, a+b>s";
    } else if (d >= -eps) {
      m["R"] = 2;
      label = "a>u, b>u, a+b=s";
    } else {
      m["B1R"] = 1;
      m["RB2"] = 1;
      label = "a>u, b>u, a+b<s";
    }
  } else {
    const bool mirrored = x > u;
    if (mirrored)
      std::swap(x, y);
    const std::string near = mirrored ? "RB2" : "B1R", far = mirrored ? "B1R" : "RB2";
    const std::string pre = mirrored ? "a>u, b<u" : "a<u, b>u";
    m["C1"] = 1;
    const double d = x + y - s;
    if (d > eps) {
      m[near] = 1;
      label = pre + ", a+b>s";
    } else if (d >= -eps) {
      m[near] = 1;
      m["R"] = 2;
      label = pre + ", a+b=s";
    } else {
      const TernaryCubic h = curve_form(k, CurveKind::H, tol);
      const double fu = upper_hessian_root(h, x);
      if (std::abs(y - fu) <= 1e-9 * (1.0 + std::abs(y))) {
        m[near] = 2;
        m[far] = 1;
        label = pre + ", a+b<s, on Hessian arc";
      } else if (y > fu) {
        m[near] = 2;
        m[far] = 1;
        label = pre + ", a+b<s, open region";
      } else {
        m[far] = 1;
        label = pre + ", a+b<s, below Hessian arc";
      }
    }
  }
  if (region != nullptr)
    *region = label;
  return m;
}

std::vector<std::string> zero_table_rows()
{
  return {"A in P",
          "a<=u, b<=u",
          "a>u, b>u, a+b>s",
          "a>u, b>u, a+b<s",
          "a<u, b>u, a+b>s",
          "a<u, b>u, a+b<s, open region",
          "a<u, b>u, a+b<s, below Hessian arc",
          "a>u, b<u, a+b>s",
          "a>u, b<u, a+b<s, open region",
          "a>u, b<u, a+b<s, below Hessian arc",
          "a>u, b>u, a+b=s",
          "a<u, b>u, a+b=s",
          "a>u, b<u, a+b=s",
          "a<u, b>u, a+b<s, on Hessian arc",
          "a>u, b<u, a+b<s, on Hessian arc"};
}

std::vector<RayVector> sample_zero_table_row(double k, const std::string& row, std::size_t n, SplitMix64& rng,
                                             const Tolerances& tol)
{
  const double u = -1.0 / (k - 1.0);
  const double kp = hessian_parameter(k, tol);
  const double s = kp / (kp - 1.0);
  const bool mirrored = row.rfind("a>u, b<u", 0) == 0;
  const bool on_line = row.find("a+b=s") != std::string::npos;
  const bool on_arc = row.find("on Hessian arc") != std::string::npos;

  std::vector<RayVector> arc;
  if (on_arc)
    for (const auto& p : trace_branch(k, CurveKind::H, mirrored ? "B3Q2" : "Q1B3", tol).samples)
      if (std::abs(p.z()) > 1e-9 && p.affine().vec().head<2>().lpNorm<Eigen::Infinity>() < 20.0)
        arc.push_back(p.affine());

  double x0, x1, y0, y1;
  if (row == "A in P" || row == "a<=u, b<=u") {
    x0 = y0 = u - 4.0;
    x1 = y1 = u;
  } else if (row == "a>u, b>u, a+b<s" || row == "a>u, b>u, a+b=s") {
    x0 = y0 = u;
    x1 = y1 = s - u;
  } else if (row == "a>u, b>u, a+b>s") {
    x0 = y0 = u;
    x1 = y1 = u + 6.0;
  } else if (row.find("open region") != std::string::npos) {
    x0 = u - 2.0;
    x1 = u;
    y0 = s - u - 1.5;
    y1 = s - x0;
  } else {
    x0 = u - 5.0;
    x1 = u;
    y0 = u;
    y1 = u + 6.0;
  }
  std::vector<RayVector> out;
  for (std::size_t tries = 0; out.size() < n; ++tries) {
    if (tries > 2000000)
      throw NoConvergence("could not sample table row " + row);
    RayVector a;
    if (on_arc) {
      a = arc[rng.next() % arc.size()];
      // Q1 and Q2 themselves sit on a = u or b = u.
      if (std::min(std::abs(a.x() - u), std::abs(a.y() - u)) < 1e-6)
        continue;
    } else {
      double x = rng.uniform(x0, x1);
      double y = on_line ? s - x : rng.uniform(y0, y1);
      if (mirrored)
        std::swap(x, y);
      a = RayVector(x, y, 1.0);
    }
    std::string label;
    ga_zero_table(k, a, &label, tol);
    if (label == row)
      out.push_back(a);
  }
  return out;
}

ZeroCountReport ga_zero_count(double k, const RayVector& a, const Tolerances& tol)
{
  if (a.is_zero())
    throw DomainError("A must be nonzero");
  const TernaryCubic f = hesse_cubic(k, tol);
  const TernaryCubic h = curve_form(k, CurveKind::H, tol);
  const QuadraticForm3 q = polar_quadric(f, a);
  const Regime regime = regime_of(k, tol);
  ZeroCountReport r;
  r.k = k;
  r.a = a;

  auto closed_rays = [](const Arc& arc) {
    std::vector<Vec3> pts{arc.endpoints.first.vec().normalized()};
    for (const auto& s : arc.samples)
      pts.push_back(s.vec().normalized());
    pts.push_back(arc.endpoints.second.vec().normalized());
    return pts;
  };
  auto total = [](const std::vector<ArcZero>& zs) {
    int t = 0;
    for (const auto& z : zs)
      t += z.multiplicity;
    return t;
  };

  const Arc c1 = trace_branch(k, CurveKind::F, "C1", tol);
  r.sampled["C1"] = total(arc_zeros(f, q, closed_rays(c1)));

  if (k > 1.0 && regime == Regime::TWO_F_COMPONENTS) {
    const Arc b1r = trace_branch(k, CurveKind::H, "B1R", tol);
    const Arc rb2 = trace_branch(k, CurveKind::H, "RB2", tol);
    // split_arc keeps the sample nearest R next to R itself; merge such pairs.
    std::vector<Vec3> pts;
    auto push = [&](const RayVector& r) {
      const Vec3 w = r.vec().normalized();
      if (!pts.empty() && (w - pts.back()).norm() < 1e-9)
        pts.back() = w;
      else
        pts.push_back(w);
    };
    push(b1r.endpoints.first);
    for (const auto& s : b1r.samples)
      push(s);
    const double m = static_cast<double>(pts.size() - 1);
    for (std::size_t i = 1; i < rb2.samples.size(); ++i)
      push(rb2.samples[i]);
    push(rb2.endpoints.second);
    double m_at = m;
    // A line pair has an exact double zero at its singular point; when that
    // point is on C2 it becomes a sample, so it cannot fall between samples.
    if (relative_residual(h, a) < tol.on_curve_abs) {
      try {
        Vec3 sp = conic_singular_point(q, tol).vec().normalized();
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (double sg : {1.0, -1.0})
            if ((sg * sp - pts[i]).norm() < bd) {
              bd = (sg * sp - pts[i]).norm();
              best = i;
              if (sg < 0)
                sp = -sp;
            }
        const bool on_h = std::abs(h(sp)) <= tol.on_curve_abs * h.scale();
        const bool interior = best > 0 && best + 1 < pts.size();
        if (on_h && interior && bd > 1e-9) {
          const std::size_t at =
              (sp - pts[best - 1]).norm() + (sp - pts[best]).norm() - (pts[best] - pts[best - 1]).norm() <
                      (sp - pts[best]).norm() + (sp - pts[best + 1]).norm() - (pts[best + 1] - pts[best]).norm()
                  ? best
                  : best + 1;
          pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(at), sp);
          if (static_cast<double>(at) <= m_at)
            m_at += 1.0;
        }
      } catch (const CubicError&) {
      }
    }
    const double last = static_cast<double>(pts.size() - 1);
    r.sampled["B1R"] = r.sampled["R"] = r.sampled["RB2"] = 0;
    for (const auto& z : arc_zeros(h, q, pts)) {
      // The endpoints B1, B2 belong to the closure of C1.
      if (z.position <= 0.0 || z.position >= last)
        continue;
      const std::string key = std::abs(z.position - m_at) < 1e-9 ? "R" : (z.position < m_at ? "B1R" : "RB2");
      r.sampled[key] += z.multiplicity;
    }
    try {
      std::string label;
      r.analytic = ga_zero_table(k, a, &label, tol);
      r.region = label;
      r.agree = *r.analytic == r.sampled;
    } catch (const DomainError& e) {
      r.notes.push_back(std::string("no analytic table: ") + e.what());
    }
    r.notes.push_back("open region bounded by the Hessian arc Q1B3, the line x = -1/(k-1) and the line a+b = k'/(k'-1)");
  } else {
    const std::string other = regime == Regime::KM2 ? "C3" : "C2";
    const Arc c = trace_branch(k, CurveKind::H, other, tol);
    const auto zs = arc_zeros(h, q, closed_rays(c));
    int t = 0;
    const double last = static_cast<double>(c.samples.size() + 1);
    for (const auto& z : zs)
      if (z.position > 0.0 && z.position < last)
        t += z.multiplicity;
    r.sampled[other] = t;
  }

  if (relative_residual(h, a) < tol.on_curve_abs) {
    r.line_pair = true;
    try {
      r.singular_point = conic_singular_point(q, tol);
    } catch (const CubicError&) {
    }
  }
  for (const auto& [key, count] : r.sampled)
    r.total += count;
  return r;
}

Prop23Result prop23_classify(double k, const RayVector& a, const Tolerances& tol)
{
  if (!(k > 1.0) || regime_of(k, tol) != Regime::TWO_F_COMPONENTS)
    throw DomainError("classification needs k > 1");
  const Vec3 v = a.vec();
  if (!(std::abs(v.z()) > 1e-12 * v.cwiseAbs().maxCoeff()))
    throw DomainError("A must be affine");
  const double x = v.x() / v.z(), y = v.y() / v.z();
  const double u = -1.0 / (k - 1.0);
  Prop23Result res;
  if (x < u && y > u)
    res.mirrored = false;
  else if (x > u && y < u)
    res.mirrored = true;
  else
    throw DomainError("A must satisfy a < -1/(k-1) < b or its mirror");

  const Vec3 aa = res.mirrored ? Vec3(y, x, 1.0) : Vec3(x, y, 1.0);
  const RayVector A(aa);
  const TernaryCubic f = hesse_cubic(k, tol);
  const TernaryCubic h = curve_form(k, CurveKind::H, tol);
  const QuadraticForm3 q = polar_quadric(f, A);
  res.h_value = h(A.normalized());
  res.sign_class = res.h_value >= 0.0 ? 1 : -1;
  const auto comps = enumerate_components(k, tol);
  const ConeComponent& comp = find_component(comps, "HYBRID_B1B2");
  const Arc c2 = trace_branch(k, CurveKind::H, "C2", tol);
  const auto& s = c2.samples;
  const bool want_visible = res.sign_class > 0;

  auto flip = [&](const RayVector& r) { return res.mirrored ? RayVector(swap_xy() * r.vec()) : r; };

  std::size_t i = 0;
  while (i < s.size()) {
    if (!(res.sign_class * q(s[i].vec()) > 0.0)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < s.size() && res.sign_class * q(s[j + 1].vec()) > 0.0)
      ++j;
    Prop23Component pc;
    pc.span = {flip(s[i]), flip(s[j])};
    // Longest run of samples with the required tangent-plane verdict.
    std::size_t best_lo = 0, best_len = 0, run_lo = i, run_len = 0;
    for (std::size_t t = i; t <= j; ++t) {
      const auto tv = tangent_visible(comp, A, s[t], tol);
      if (tv && *tv == want_visible) {
        if (run_len == 0)
          run_lo = t;
        ++run_len;
        if (run_len > best_len) {
          best_len = run_len;
          best_lo = run_lo;
        }
      } else {
        run_len = 0;
      }
    }
    if (best_len > 0) {
      const std::size_t lo = best_lo, hi = best_lo + best_len - 1;
      pc.witness = {flip(s[lo]), flip(s[hi])};
      pc.witness_visible = visible(comp, A, s[(lo + hi) / 2], tol);
      pc.found = pc.witness_visible == want_visible;
    }
    res.components.push_back(pc);
    i = j + 1;
  }

  if (want_visible)
    res.consistent = !res.components.empty() &&
                     std::all_of(res.components.begin(), res.components.end(), [](const auto& c) { return c.found; });
  else
    res.consistent = std::any_of(res.components.begin(), res.components.end(), [](const auto& c) { return c.found; });
  return res;
}

} // namespace cubiclab
