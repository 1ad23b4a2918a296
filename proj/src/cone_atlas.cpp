#include "cubiclab/cone_atlas.hpp"

#include "cubiclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace cubiclab {

namespace {

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p)
{
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x)
        inside = !inside;
    }
  }
  return inside;
}

// Unit vectors along the open segment from a to b (both unit), excluding ends.
template <class F>
bool segment_all(const Vec3& a, const Vec3& b, int n, F&& pred)
{
  for (int i = 1; i < n; ++i) {
    const double t = double(i) / n;
    if (!pred(Vec3((1 - t) * a + t * b)))
      return false;
  }
  return true;
}

ConeComponent make_component(ComponentKind kind, std::string id, double k, std::vector<BoundaryPiece> pieces,
                             std::vector<RayVector> corners, RayVector witness)
{
  ConeComponent c;
  c.kind = kind;
  c.id = std::move(id);
  c.k = k;
  c.boundary = std::move(pieces);
  c.corners = std::move(corners);
  c.witness = witness;
  c.finalize();
  return c;
}

ConeComponent transformed(const ConeComponent& src, const Mat3& m, const std::string& id,
                          const std::string& f_id, const std::string& h_id)
{
  ConeComponent c;
  c.kind = src.kind;
  c.id = id;
  c.k = src.k;
  for (const auto& p : src.boundary)
    c.boundary.push_back({transform_arc(p.arc, m, p.arc.curve == CurveKind::F ? f_id : h_id), p.sign});
  for (const auto& r : src.corners)
    c.corners.push_back(RayVector(m * r.vec()).normalized());
  c.witness = RayVector(m * src.witness.vec());
  c.finalize();
  return c;
}

} // namespace

std::string to_string(ComponentKind k)
{
  switch (k) {
  case ComponentKind::BOUNDED_POSITIVE:
    return "BOUNDED_POSITIVE";
  case ComponentKind::HYBRID:
    return "HYBRID";
  case ComponentKind::NEG_BOUNDED_HESSIAN:
    return "NEG_BOUNDED_HESSIAN";
  case ComponentKind::KM2_SPECIAL:
    return "KM2_SPECIAL";
  }
  return "?";
}

Vec2 Chart::project(const Vec3& d) const
{
  const Vec3 p = d / axis.dot(d);
  return {p.dot(u1), p.dot(u2)};
}

void ConeComponent::finalize()
{
  f_ = hesse_cubic(k);
  loop_.clear();
  auto push = [&](const Vec3& v) {
    const Vec3 u = v.normalized();
    if (loop_.empty() || (loop_.back() - u).norm() > 1e-12)
      loop_.push_back(u);
  };
  for (const auto& p : boundary) {
    if (!p.arc.closed)
      push(p.sign * p.arc.endpoints.first.vec());
    for (const auto& s : p.arc.samples)
      push(p.sign * s.vec());
    if (!p.arc.closed)
      push(p.sign * p.arc.endpoints.second.vec());
  }
  if (loop_.size() > 1 && (loop_.front() - loop_.back()).norm() < 1e-12)
    loop_.pop_back();

  // Axis: length-weighted mean of the boundary loop, which lies inside a
  // pointed convex cone.
  Vec3 axis = Vec3::Zero();
  for (std::size_t i = 0; i < loop_.size(); ++i) {
    const Vec3& a = loop_[i];
    const Vec3& b = loop_[(i + 1) % loop_.size()];
    axis += (a - b).norm() * (a + b);
  }
  axis.normalize();
  double worst = 1.0;
  for (const auto& v : loop_)
    worst = std::min(worst, axis.dot(v));
  if (worst <= 0.0)
    throw NoConvergence("component " + id + " is not pointed in its chart");

  chart_.axis = axis;
  const Vec3 helper = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  chart_.u1 = (helper - helper.dot(axis) * axis).normalized();
  chart_.u2 = axis.cross(chart_.u1);

  polygon_.clear();
  bbox_ = {1e300, -1e300, 1e300, -1e300};
  for (const auto& v : loop_) {
    const Vec2 p = chart_.project(v);
    polygon_.push_back(p);
    bbox_[0] = std::min(bbox_[0], p.x());
    bbox_[1] = std::max(bbox_[1], p.x());
    bbox_[2] = std::min(bbox_[2], p.y());
    bbox_[3] = std::max(bbox_[3], p.y());
  }
}

bool ConeComponent::in_polygon(const Vec3& d) const
{
  if (chart_.axis.dot(d) <= 0.0)
    return false;
  return point_in_polygon(polygon_, chart_.project(d));
}

bool ConeComponent::contains(const RayVector& d, const Tolerances& tol) const
{
  if (!positive_index_membership(f_, d, tol))
    return false;
  if (in_polygon(d.vec()))
    return true;
  // Thin sliver between the inscribed polygon and the curved boundary: the
  // component is convex, so d belongs to it iff the segment to the witness
  // stays in the positive index cone.
  const Vec3 a = d.vec().normalized(), b = witness.vec().normalized();
  return segment_all(a, b, 48, [&](const Vec3& v) { return positive_index_membership(f_, RayVector(v), tol); });
}

std::vector<RayVector> ConeComponent::interior_samples(std::size_t n, SplitMix64& rng, const Tolerances& tol) const
{
  std::vector<RayVector> out;
  std::size_t attempts = 0;
  while (out.size() < n && attempts < 200 * n + 1000) {
    ++attempts;
    const Vec2 p(rng.uniform(bbox_[0], bbox_[1]), rng.uniform(bbox_[2], bbox_[3]));
    if (!point_in_polygon(polygon_, p))
      continue;
    const RayVector d(chart_.lift(p).normalized());
    if (positive_index_membership(f_, d, tol))
      out.push_back(d);
  }
  return out;
}

bool positive_index_membership(const TernaryCubic& f, const RayVector& d, const Tolerances& tol)
{
  if (d.is_zero() || !(f(d) > 0.0))
    return false;
  return signature(polar_quadric(f, d), tol) == Signature{1, 2, 0};
}

bool positive_index_membership(double k, const RayVector& d, const Tolerances& tol)
{
  return positive_index_membership(hesse_cubic(k, tol), d, tol);
}

std::vector<ConeComponent> enumerate_components(double k, const Tolerances& tol, const TraceOptions& opts,
                                                std::vector<std::string>* warnings)
{
  const Regime r = regime_of(k, tol);
  const Arc c1 = trace_branch(k, CurveKind::F, "C1", tol, opts);
  std::vector<ConeComponent> out;

  ConeComponent base;
  if (r == Regime::KM2) {
    const Arc c3 = trace_branch(k, CurveKind::H, "C3", tol, opts);
    base = make_component(ComponentKind::KM2_SPECIAL, "KM2_B1B2", k, {{c1, 1}, {reversed(c3), 1}},
                          {RayVector(0, 1, 0), RayVector(1, 0, 0)}, RayVector(10, 10, 1));
  } else {
    const Arc c2 = trace_branch(k, CurveKind::H, "C2", tol, opts);
    const double s = r == Regime::TWO_F_COMPONENTS ? -1.0 : 1.0;
    base = make_component(ComponentKind::HYBRID, "HYBRID_B1B2", k, {{c1, 1}, {reversed(c2), -1}},
                          {RayVector(0, s, 0), RayVector(s, 0, 0)}, RayVector(s, s, 0));
  }
  const std::string prefix = r == Regime::KM2 ? "KM2_" : "HYBRID_";
  out.push_back(base);
  out.push_back(transformed(base, swap_yw(), prefix + "B1B3", "F_B1B3", "H_B1B3"));
  out.push_back(transformed(base, swap_xw(), prefix + "B2B3", "F_B2B3", "H_B2B3"));

  if (r == Regime::TWO_F_COMPONENTS) {
    out.push_back(make_component(ComponentKind::BOUNDED_POSITIVE, "BOUNDED_POSITIVE", k,
                                 {{trace_branch(k, CurveKind::F, "BOUNDED", tol, opts), 1}}, {},
                                 RayVector(1.0 / 3, 1.0 / 3, 1)));
  } else if (r != Regime::KM2) {
    // The negated cone on the bounded Hessian oval. Its polar forms have
    // index (1, 2) only for k < -2; for -2 < k < 1 they are positive definite
    // and the cone is not part of the positive index cone.
    const RayVector w(-1.0 / 3, -1.0 / 3, -1);
    const auto f = hesse_cubic(k, tol);
    if (positive_index_membership(f, w, tol)) {
      out.push_back(make_component(ComponentKind::NEG_BOUNDED_HESSIAN, "NEG_BOUNDED_HESSIAN", k,
                                   {{trace_branch(k, CurveKind::H, "H_BOUNDED", tol, opts), -1}}, {}, w));
    } else if (warnings != nullptr) {
      const Signature s = signature(polar_quadric(f, w), tol);
      warnings->push_back("negated cone on the bounded Hessian component has index (" + std::to_string(s.p) + "," +
                          std::to_string(s.n) + "," + std::to_string(s.z) +
                          ") at -(1/3,1/3,1); it is not a component of the positive index cone");
    }
  }
  return out;
}

std::optional<std::size_t> component_of(const std::vector<ConeComponent>& components, const RayVector& d,
                                        const Tolerances& tol)
{
  for (std::size_t i = 0; i < components.size(); ++i)
    if (components[i].contains(d, tol))
      return i;
  return std::nullopt;
}

std::optional<std::string> component_of(double k, const RayVector& d, const Tolerances& tol)
{
  if (!positive_index_membership(k, d, tol))
    return std::nullopt;
  const auto comps = enumerate_components(k, tol);
  const auto i = component_of(comps, d, tol);
  if (!i)
    return std::nullopt;
  return comps[*i].id;
}

bool SubconeQ::region_contains(std::size_t i, const RayVector& d, const Tolerances& tol) const
{
  if (!(g_e(d) > 0.0) || !parent->contains(d, tol))
    return false;
  const Vec3 a = regions[i].witness.vec().normalized(), b = d.vec().normalized();
  return segment_all(a, b, 64, [&](const Vec3& v) { return g_e(v) > 0.0; });
}

std::optional<std::size_t> SubconeQ::region_of(const RayVector& d, const Tolerances& tol) const
{
  for (std::size_t i = 0; i < regions.size(); ++i)
    if (region_contains(i, d, tol))
      return i;
  return std::nullopt;
}

SampledRegion SubconeQ::region(std::size_t i, const Tolerances& tol) const
{
  SampledRegion r;
  r.interior_samples = regions[i].interior_samples;
  r.contains = [this, i, tol](const RayVector& d) { return region_contains(i, d, tol); };
  return r;
}

SampledRegion SubconeQ::all_regions(const Tolerances& tol) const
{
  SampledRegion r;
  for (const auto& reg : regions)
    r.interior_samples.insert(r.interior_samples.end(), reg.interior_samples.begin(), reg.interior_samples.end());
  r.contains = [this, tol](const RayVector& d) { return region_of(d, tol).has_value(); };
  return r;
}

SubconeQ q_subcone(double k, const ConeComponent& comp, const RayVector& e, int grid, const Tolerances& tol)
{
  if (e.is_zero())
    throw DomainError("E must be nonzero");
  const auto f = hesse_cubic(k, tol);
  SubconeQ q;
  q.parent = std::make_shared<const ConeComponent>(comp);
  q.e_class = e;
  q.g_e = polar_quadric(f, e);

  const auto& bb = comp.bbox();
  const double span = std::max(bb[1] - bb[0], bb[3] - bb[2]);
  q.grid_size = grid;
  q.grid_step = span * 1.002 / grid;
  q.grid_origin = Vec2(0.5 * (bb[0] + bb[1]), 0.5 * (bb[2] + bb[3])) - 0.5 * grid * q.grid_step * Vec2(1, 1);

  const auto& chart = comp.chart();
  const auto& poly = comp.polygon();
  auto center = [&](int i, int j) -> Vec2 { return q.grid_origin + q.grid_step * Vec2(i + 0.5, j + 0.5); };

  // 0 = outside comp, 1 = in comp with G_E <= 0, 2 = in comp with G_E > 0.
  std::vector<int> state(grid * grid, 0);
  for (int j = 0; j < grid; ++j) {
    const double y = center(0, j).y();
    std::vector<double> xs;
    for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
      const Vec2& p = poly[a];
      const Vec2& r = poly[b];
      if ((p.y() > y) != (r.y() > y))
        xs.push_back(p.x() + (y - p.y()) * (r.x() - p.x()) / (r.y() - p.y()));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t s = 0; s + 1 < xs.size(); s += 2)
      for (int i = 0; i < grid; ++i) {
        const Vec2 c = center(i, j);
        if (c.x() <= xs[s] || c.x() >= xs[s + 1])
          continue;
        const Vec3 d = chart.lift(c);
        if (!positive_index_membership(f, RayVector(d), tol))
          continue;
        state[j * grid + i] = q.g_e(d) > 0.0 ? 2 : 1;
      }
  }

  std::vector<int> label(grid * grid, -1);
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int start = 0; start < grid * grid; ++start) {
    if (state[start] != 2 || label[start] >= 0)
      continue;
    const int id = static_cast<int>(q.regions.size());
    QRegion reg;
    std::deque<int> todo{start};
    label[start] = id;
    while (!todo.empty()) {
      const int cur = todo.front();
      todo.pop_front();
      const int i = cur % grid, j = cur / grid;
      reg.cells.emplace_back(i, j);
      for (int n = 0; n < 4; ++n) {
        const int ni = i + di[n], nj = j + dj[n];
        if (ni < 0 || nj < 0 || ni >= grid || nj >= grid)
          continue;
        const int idx = nj * grid + ni;
        if (state[idx] == 2 && label[idx] < 0) {
          label[idx] = id;
          todo.push_back(idx);
        } else if (state[idx] == 1) {
          // Locate the conic between the two cell centres.
          Vec3 a = chart.lift(center(i, j)), b = chart.lift(center(ni, nj));
          for (int it = 0; it < 40; ++it) {
            const Vec3 m = 0.5 * (a + b);
            (q.g_e(m) > 0.0 ? a : b) = m;
          }
          reg.conic_boundary.push_back(RayVector(0.5 * (a + b)).normalized());
        }
      }
    }
    q.regions.push_back(std::move(reg));
  }

  for (auto& reg : q.regions) {
    std::sort(reg.cells.begin(), reg.cells.end(), [](auto a, auto b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
    Vec2 mean = Vec2::Zero();
    for (const auto& [i, j] : reg.cells)
      mean += center(i, j);
    mean /= double(reg.cells.size());
    std::pair<int, int> best = reg.cells.front();
    double bd = 1e300;
    for (const auto& c : reg.cells) {
      const double d = (center(c.first, c.second) - mean).norm();
      if (d < bd) {
        bd = d;
        best = c;
      }
    }
    reg.witness = RayVector(chart.lift(center(best.first, best.second)).normalized());
    const std::size_t stride = std::max<std::size_t>(1, reg.cells.size() / 400);
    for (std::size_t s = 0; s < reg.cells.size(); s += stride)
      reg.interior_samples.push_back(RayVector(chart.lift(center(reg.cells[s].first, reg.cells[s].second)).normalized()));
  }

  for (const auto& v : comp.boundary_loop()) {
    if (q.g_e(v) < 0.0)
      continue;
    for (auto& reg : q.regions) {
      const Vec3 w = reg.witness.vec();
      if (segment_all(w, v, 64, [&](const Vec3& u) { return q.g_e(u) > 0.0; })) {
        reg.parent_boundary.push_back(RayVector(v));
        break;
      }
    }
  }
  return q;
}

SampledRegion component_region(const ConeComponent& comp, std::size_t n, SplitMix64& rng, const Tolerances& tol)
{
  SampledRegion r;
  r.interior_samples = comp.interior_samples(n, rng, tol);
  const ConeComponent* c = &comp;
  r.contains = [c, tol](const RayVector& d) { return c->contains(d, tol); };
  return r;
}

bool convexity_check(const SampledRegion& region, std::size_t n_samples, SplitMix64& rng)
{
  const auto& s = region.interior_samples;
  if (s.empty())
    throw DomainError("convexity check needs a nonempty region");
  for (std::size_t t = 0; t < n_samples; ++t) {
    const auto& a = s[rng.next() % s.size()];
    const auto& b = s[rng.next() % s.size()];
    const RayVector mid(a.vec().normalized() + b.vec().normalized());
    if (mid.is_zero() || !region.contains(mid))
      return false;
  }
  return true;
}

} // namespace cubiclab
