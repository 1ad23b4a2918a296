#include "cubiclab/render.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/steinian.hpp"

#include <cstdio>
#include <sstream>

namespace cubiclab {

namespace {

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Frame
{
  double xmin, xmax, ymin, ymax;
  double w, h;

  double px(double x) const { return (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return (ymax - y) / (ymax - ymin) * h; }
  bool inside(const Vec2& p) const { return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax; }
};

/// Liang-Barsky clipping of segment pq to the viewport.
std::optional<std::pair<Vec2, Vec2>> clip(const Frame& f, const Vec2& p, const Vec2& q)
{
  double t0 = 0.0, t1 = 1.0;
  const Vec2 d = q - p;
  const double ps[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double qs[4] = {p.x() - f.xmin, f.xmax - p.x(), p.y() - f.ymin, f.ymax - p.y()};
  for (int i = 0; i < 4; ++i) {
    if (ps[i] == 0.0) {
      if (qs[i] < 0.0)
        return std::nullopt;
      continue;
    }
    const double t = qs[i] / ps[i];
    if (ps[i] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1)
      return std::nullopt;
  }
  return std::make_pair(Vec2(p + t0 * d), Vec2(p + t1 * d));
}

/// Path data for an arc, broken wherever it leaves the viewport or passes
/// through the line at infinity.
std::string arc_path(const Frame& f, const Arc& arc)
{
  std::vector<std::optional<Vec2>> pts;
  for (const auto& s : arc.samples) {
    if (std::abs(s.z()) < 1e-12)
      pts.push_back(std::nullopt);
    else
      pts.push_back(Vec2(s.x() / s.z(), s.y() / s.z()));
  }
  if (arc.closed && !pts.empty())
    pts.push_back(pts.front());

  std::string d;
  std::optional<Vec2> pen;
  auto move = [&](const Vec2& p) {
    d += "M" + num(f.px(p.x())) + " " + num(f.py(p.y()));
    pen = p;
  };
  auto line = [&](const Vec2& p) {
    d += "L" + num(f.px(p.x())) + " " + num(f.py(p.y()));
    pen = p;
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!pts[i] || !pts[i + 1]) {
      pen.reset();
      continue;
    }
    const auto c = clip(f, *pts[i], *pts[i + 1]);
    if (!c) {
      pen.reset();
      continue;
    }
    if (!pen || (*pen - c->first).norm() > 0.0)
      move(c->first);
    line(c->second);
    if ((c->second - *pts[i + 1]).norm() > 0.0)
      pen.reset();
  }
  return d;
}

/// The segment of {l = 0} inside the viewport.
std::optional<std::pair<Vec2, Vec2>> line_in_view(const Frame& f, const LinearForm3& l)
{
  const Vec3 c = l.covector();
  const Vec2 n(c.x(), c.y());
  if (n.norm() == 0.0)
    return std::nullopt;
  const Vec2 p0 = -c.z() * n / n.squaredNorm();
  const Vec2 dir(-n.y(), n.x());
  const double span = 4.0 * (std::abs(f.xmax) + std::abs(f.xmin) + std::abs(f.ymax) + std::abs(f.ymin) + p0.norm());
  return clip(f, p0 - span * dir.normalized(), p0 + span * dir.normalized());
}

std::string form_label(const LinearForm3& l)
{
  // a x + b y + c = 0, scaled so the first nonzero of (a, b) is 1.
  const Vec3 c = l.covector();
  const double s = std::abs(c.x()) > 1e-14 ? c.x() : c.y();
  const Vec3 u = c / s;
  std::string out;
  if (std::abs(u.x()) > 1e-14)
    out += std::abs(u.x() - 1) < 1e-14 ? "x" : num(u.x()) + "x";
  if (std::abs(u.y()) > 1e-14)
    out += (out.empty() ? "" : "+") + (std::abs(u.y() - 1) < 1e-14 ? std::string("y") : num(u.y()) + "y");
  return out + "=" + num(-u.z());
}

} // namespace

std::string to_string(Layer l)
{
  switch (l) {
  case Layer::CUBIC:
    return "CUBIC";
  case Layer::HESSIAN:
    return "HESSIAN";
  case Layer::ASYMPTOTES:
    return "ASYMPTOTES";
  case Layer::SHADE_Q:
    return "SHADE_Q";
  case Layer::MARK_POINTS:
    return "MARK_POINTS";
  }
  return "?";
}

Layer layer_from_string(const std::string& s)
{
  for (Layer l : {Layer::CUBIC, Layer::HESSIAN, Layer::ASYMPTOTES, Layer::SHADE_Q, Layer::MARK_POINTS})
    if (to_string(l) == s)
      return l;
  throw DomainError("unknown layer " + s);
}

std::string render_figure(const FigureSpec& spec, const Tolerances& tol)
{
  const auto& vp = spec.viewport;
  if (!(vp[0] < vp[1]) || !(vp[2] < vp[3]))
    throw DomainError("empty viewport");
  if (spec.width_px <= 0 || spec.height_px <= 0 || spec.shade_columns <= 0)
    throw DomainError("figure size must be positive");
  if (spec.layers.count(Layer::SHADE_Q) && !spec.a_point)
    throw DomainError("SHADE_Q needs a point A");
  hesse_cubic(spec.k, tol);

  const Frame f{vp[0], vp[1], vp[2], vp[3], double(spec.width_px), double(spec.height_px)};
  const FigureStyle& st = spec.style;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width_px << "\" height=\""
     << spec.height_px << "\" viewBox=\"0 0 " << spec.width_px << " " << spec.height_px << "\" data-k=\""
     << num(spec.k) << "\" data-viewport=\"" << num(vp[0]) << " " << num(vp[1]) << " " << num(vp[2]) << " "
     << num(vp[3]) << "\">\n";

  if (spec.layers.count(Layer::SHADE_Q)) {
    ConeComponent comp;
    for (auto& c : enumerate_components(spec.k, tol))
      if (c.id == "HYBRID_B1B2" || c.id == "KM2_B1B2")
        comp = c;
    const SubconeQ q = q_subcone(spec.k, comp, *spec.a_point, 200, tol);
    const int cols = spec.shade_columns;
    const int rows = std::max(1, int(std::lround(cols * f.h / f.w)));
    const double dx = (f.xmax - f.xmin) / cols, dy = (f.ymax - f.ymin) / rows;
    // label[r][c] = region index + 1, or 0.
    std::vector<std::vector<int>> label(rows, std::vector<int>(cols, 0));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const Vec3 p(f.xmin + (c + 0.5) * dx, f.ymax - (r + 0.5) * dy, 1.0);
        for (const Vec3& v : {p, Vec3(-p)}) {
          const auto i = q.region_of(RayVector(v), tol);
          if (i) {
            label[r][c] = int(*i) + 1;
            break;
          }
        }
      }
    os << "<g id=\"shade-q\" data-regions=\"" << q.regions.size() << "\">\n";
    for (std::size_t i = 0; i < q.regions.size(); ++i) {
      std::string d;
      int cells = 0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols;) {
          if (label[r][c] != int(i) + 1) {
            ++c;
            continue;
          }
          int e = c;
          while (e < cols && label[r][e] == int(i) + 1)
            ++e;
          cells += e - c;
          const double x0 = f.px(f.xmin + c * dx), x1 = f.px(f.xmin + e * dx);
          const double y0 = f.py(f.ymax - r * dy), y1 = f.py(f.ymax - (r + 1) * dy);
          d += "M" + num(x0) + " " + num(y0) + "H" + num(x1) + "V" + num(y1) + "H" + num(x0) + "Z";
          c = e;
        }
      os << "<g class=\"q-region\" data-region=\"" << i << "\" data-cells=\"" << cells << "\"><path fill=\"" << st.shade_fill
         << "\" fill-rule=\"evenodd\" stroke=\"none\" d=\"" << d << "\"/></g>\n";
    }
    os << "</g>\n";
  }

  auto curve_groups = [&](CurveKind kind, const std::string& stroke) {
    const std::string name = kind == CurveKind::F ? "cubic" : "hessian";
    os << "<g id=\"" << name << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(st.stroke_width)
       << "\">\n";
    std::vector<std::string> bounded, unbounded;
    for (const auto& arc : all_branches(spec.k, kind, tol)) {
      const std::string d = arc_path(f, arc);
      if (d.empty())
        continue;
      (arc.closed ? bounded : unbounded).push_back("<path data-branch=\"" + arc.branch_id + "\" d=\"" + d + "\"/>");
    }
    for (const auto& [label, paths] : {std::pair{"unbounded", unbounded}, std::pair{"bounded", bounded}}) {
      if (paths.empty())
        continue;
      os << "<g class=\"" << name << "-component\" data-component=\"" << label << "\">\n";
      for (const auto& p : paths)
        os << p << "\n";
      os << "</g>\n";
    }
    os << "</g>\n";
  };
  if (spec.layers.count(Layer::CUBIC))
    curve_groups(CurveKind::F, st.cubic_stroke);
  if (spec.layers.count(Layer::HESSIAN))
    curve_groups(CurveKind::H, st.hessian_stroke);

  if (spec.layers.count(Layer::ASYMPTOTES)) {
    os << "<g id=\"asymptotes\" stroke=\"" << st.asymptote_stroke << "\" stroke-width=\"" << num(st.stroke_width)
       << "\" stroke-dasharray=\"6 4\">\n";
    for (const auto& l : asymptotes(spec.k, tol)) {
      const auto seg = line_in_view(f, l);
      if (!seg)
        continue;
      os << "<line class=\"asymptote\" data-line=\"" << form_label(l) << "\" x1=\"" << num(f.px(seg->first.x()))
         << "\" y1=\"" << num(f.py(seg->first.y())) << "\" x2=\"" << num(f.px(seg->second.x())) << "\" y2=\""
         << num(f.py(seg->second.y())) << "\"/>\n";
    }
    os << "</g>\n";
  }

  if (spec.layers.count(Layer::MARK_POINTS)) {
    std::vector<std::pair<std::string, RayVector>> marks;
    if (spec.a_point)
      marks.emplace_back("A", *spec.a_point);
    const Regime r = regime_of(spec.k, tol);
    if (r == Regime::TWO_F_COMPONENTS || r == Regime::ONE_F_COMPONENT) {
      const auto inf = inflexion_points(spec.k, tol);
      for (int i = 0; i < 3; ++i)
        marks.emplace_back("Q" + std::to_string(i + 1), steinian_map(spec.k, inf[i], tol));
    }
    os << "<g id=\"points\" fill=\"" << st.point_fill << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (const auto& [name, pt] : marks) {
      if (std::abs(pt.z()) < 1e-12)
        continue;
      const Vec2 p(pt.x() / pt.z(), pt.y() / pt.z());
      if (!f.inside(p))
        continue;
      const double x = f.px(p.x()), y = f.py(p.y());
      os << "<polygon class=\"mark\" data-name=\"" << name << "\" points=\"" << num(x - 3) << "," << num(y) << " "
         << num(x) << "," << num(y - 3) << " " << num(x + 3) << "," << num(y) << " " << num(x) << "," << num(y + 3)
         << "\"/><text x=\"" << num(x + 5) << "\" y=\"" << num(y - 5) << "\">" << name << "</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::string> figure_presets()
{
  return {"fig1", "fig2", "fig3", "fig4", "fig5"};
}

FigureSpec figure_preset(const std::string& name)
{
  FigureSpec s;
  const std::set<Layer> curves{Layer::CUBIC, Layer::HESSIAN, Layer::ASYMPTOTES};
  const std::set<Layer> shaded{Layer::CUBIC, Layer::HESSIAN, Layer::ASYMPTOTES, Layer::SHADE_Q, Layer::MARK_POINTS};
  if (name == "fig1") {
    s.k = 5;
    s.viewport = {-2.5, 2.5, -2.5, 2.5};
    s.layers = curves;
  } else if (name == "fig2") {
    s.k = 5;
    s.a_point = RayVector(-1, 3, 1);
    s.viewport = {-3.5, 3.5, -2.5, 4.5};
    s.layers = shaded;
  } else if (name == "fig3") {
    s.k = 5;
    s.a_point = RayVector(-2, 1, 1);
    s.viewport = {-3.5, 3.5, -3.0, 3.5};
    s.layers = shaded;
  } else if (name == "fig4") {
    s.k = -3;
    s.a_point = RayVector(0.28, 0.28, 1);
    s.viewport = {-12, 12, -12, 12};
    s.layers = shaded;
  } else if (name == "fig5") {
    s.k = -3;
    s.a_point = RayVector(0.28, 0.28, 1);
    s.viewport = {-0.5, 3.5, -0.5, 3.5};
    s.layers = shaded;
  } else {
    throw DomainError("unknown figure preset " + name);
  }
  return s;
}

} // namespace cubiclab
