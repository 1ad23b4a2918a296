#include "cubiclab/cli.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/render.hpp"
#include "cubiclab/rng.hpp"
#include "cubiclab/scenario.hpp"
#include "cubiclab/steinian.hpp"
#include "cubiclab/verify.hpp"
#include "cubiclab/visibility.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <memory>

namespace cubiclab::cli {

namespace {

using json = nlohmann::ordered_json;

struct ArgError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& s)
{
  auto one = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ArgError("not a number: '" + s + "'");
    }
    if (used != t.size() || !std::isfinite(v))
      throw ArgError("not a number: '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos)
    return one(s);
  const double q = one(s.substr(slash + 1));
  if (q == 0.0)
    throw ArgError("zero denominator in '" + s + "'");
  return one(s.substr(0, slash)) / q;
}

std::vector<double> parse_list(const std::string& s, std::size_t n)
{
  std::vector<double> v;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    v.push_back(parse_real(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  if (n && v.size() != n)
    throw ArgError("expected " + std::to_string(n) + " comma-separated values in '" + s + "'");
  return v;
}

Vec3 parse_vec(const std::string& s)
{
  const auto v = parse_list(s, 3);
  return Vec3(v[0], v[1], v[2]);
}

RayVector parse_ray(const std::string& s)
{
  const Vec3 v = parse_vec(s);
  if (v.isZero())
    throw ArgError("the zero vector is not a ray");
  return RayVector(v);
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json to_json(const RayVector& r) { return to_json(r.vec()); }

json rays(const std::vector<RayVector>& v)
{
  json a = json::array();
  for (const auto& r : v)
    a.push_back(to_json(r));
  return a;
}

json facts_json(const std::vector<Fact>& facts)
{
  json a = json::array();
  for (const auto& f : facts)
    a.push_back({{"name", f.name}, {"holds", f.holds}, {"detail", f.detail}});
  return a;
}

CurveKind parse_curve(const std::string& s)
{
  if (s == "F")
    return CurveKind::F;
  if (s == "H")
    return CurveKind::H;
  throw ArgError("curve must be F or H, got '" + s + "'");
}

ConeComponent component_by_id(double k, const std::string& id, const Tolerances& tol)
{
  std::vector<std::string> ids;
  for (auto& c : enumerate_components(k, tol)) {
    if (c.id == id)
      return c;
    ids.push_back(c.id);
  }
  std::string known;
  for (const auto& i : ids)
    known += (known.empty() ? "" : ", ") + i;
  throw DomainError("no component " + id + " at this k (have " + known + ")");
}

struct Report
{
  json outputs = json::object();
  json residuals = json::object();
  json warnings = json::array();
  std::string text;  // raw text printed instead of the outputs in human mode
  int exit_code = 0;
};

struct Command
{
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::function<void(Command&, const Tolerances&, Report&)> body;

  bool has(const std::string& name) const { return values.count(name) && !values.at(name).empty(); }
  const std::string& str(const std::string& name) const { return values.at(name); }
  double real(const std::string& name) const { return parse_real(values.at(name)); }
  RayVector ray(const std::string& name) const { return parse_ray(values.at(name)); }
};

void option(Command& c, const std::string& name, const std::string& help, bool required = true,
            const std::string& fallback = "")
{
  auto& slot = c.values[name];
  slot = fallback;
  auto* o = c.app->add_option("--" + name, slot, help);
  if (required)
    o->required();
}

void flag(Command& c, const std::string& name, const std::string& help)
{
  auto& slot = c.flags[name];
  slot = false;
  c.app->add_flag("--" + name, slot, help);
}

void print_human(const std::string& op, const Report& r, std::ostream& out)
{
  if (!r.text.empty()) {
    out << r.text;
    if (r.text.back() != '\n')
      out << '\n';
  } else {
    out << op << '\n';
    for (const auto& [key, v] : r.outputs.items())
      out << "  " << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    for (const auto& [key, v] : r.residuals.items())
      out << "  residual " << key << ": " << v.dump() << '\n';
  }
  for (const auto& w : r.warnings)
    out << "warning: " << w.get<std::string>() << '\n';
}

void register_commands(CLI::App& app, std::vector<std::unique_ptr<Command>>& cmds)
{
  auto add = [&](const std::string& name, const std::string& help) -> Command& {
    cmds.push_back(std::make_unique<Command>());
    cmds.back()->app = app.add_subcommand(name, help);
    return *cmds.back();
  };

  {
    auto& c = add("eval", "Evaluate F_k, its Hessian H_k or the polar conic G_A at a point");
    option(c, "k", "parameter k");
    option(c, "form", "F, H or G", false, "F");
    option(c, "point", "point x,y,z");
    option(c, "a", "pole A for --form G", false);
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const std::string form = c.str("form");
      const RayVector d = c.ray("point");
      const TernaryCubic f = hesse_cubic(k, tol);
      if (form == "F") {
        r.outputs["value"] = f(d);
      } else if (form == "H") {
        r.outputs["value"] = hessian_cubic(f)(d);
      } else if (form == "G") {
        if (!c.has("a"))
          throw ArgError("--form G needs --a");
        r.outputs["value"] = polar_quadric(f, c.ray("a"))(d);
      } else {
        throw ArgError("form must be F, H or G");
      }
    };
  }
  {
    auto& c = add("hessian", "Hessian cubic of F_k and its parameter k'");
    option(c, "k", "parameter k");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const TernaryCubic h = hessian_cubic(hesse_cubic(k, tol));
      r.outputs["coefficients"] = h.coeffs();
      const double kp = hessian_parameter(k, tol);
      r.outputs["k_prime"] = kp;
      const TernaryCubic fk = hesse_cubic(kp, tol, true);
      double worst = 0.0;
      for (int i = 0; i < 10; ++i)
        worst = std::max(worst, std::abs(h.coeffs()[i] + 54 * k * k * fk.coeffs()[i]));
      r.residuals["identity_coefficients"] = worst / h.scale();
    };
  }
  {
    auto& c = add("siblings", "The three k with a given Hessian parameter k'");
    option(c, "kprime", "parameter k'");
    flag(c, "allow-boundary", "accept k' = 1");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double kp = c.real("kprime");
      const auto s = siblings(kp, c.flags["allow-boundary"]);
      r.outputs["siblings"] = s;
      double worst = 0.0;
      for (double k : s)
        if (std::abs(k) > tol.degenerate_k_band && std::abs(k - 1) > tol.degenerate_k_band)
          worst = std::max(worst, std::abs(hessian_parameter(k, tol) - kp));
      r.residuals["round_trip"] = worst;
      if (kp > 1)
        r.outputs["e_levels"] = e_levels(kp);
    };
  }
  {
    auto& c = add("components", "Components of the positive index cone");
    option(c, "k", "parameter k");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      std::vector<std::string> warnings;
      json comps = json::array();
      for (const auto& comp : enumerate_components(k, tol, {}, &warnings))
        comps.push_back({{"id", comp.id},
                         {"kind", to_string(comp.kind)},
                         {"corner_rays", rays(comp.corners)},
                         {"witness", to_json(comp.witness)}});
      r.outputs["k"] = k;
      r.outputs["components"] = comps;
      for (const auto& w : warnings)
        r.warnings.push_back(w);
    };
  }
  {
    auto& c = add("steinian", "Steinian involution of a Hessian point");
    option(c, "k", "parameter k");
    option(c, "point", "Hessian point U");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const RayVector u = c.ray("point");
      const RayVector a = steinian_map(k, u, tol);
      r.outputs["alpha"] = to_json(a.normalized());
      const auto t = verify_steinian_tangency(k, u, tol);
      r.residuals["involution"] = projective_distance(steinian_map(k, a, tol), u);
      r.residuals["on_line"] = t.on_line;
      r.residuals["tangency"] = t.tangency;
    };
  }
  {
    auto& c = add("group", "Chord-tangent sum of two curve points");
    option(c, "k", "parameter k");
    option(c, "curve", "F or H", false, "H");
    option(c, "zero", "inflexion used as zero", false, "1,-1,0");
    option(c, "p", "first point");
    option(c, "q", "second point");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const auto ctx = make_group_context(c.real("k"), parse_curve(c.str("curve")), c.ray("zero"), tol);
      const RayVector s = group_add(ctx, c.ray("p"), c.ray("q"), tol);
      r.outputs["sum"] = to_json(canonical_projective(s));
      r.residuals["on_curve"] = relative_residual(ctx.curve, s);
    };
  }
  {
    auto& c = add("two-torsion", "Real 2-torsion points and e-levels");
    option(c, "k", "parameter k");
    option(c, "curve", "F or H", false, "H");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const auto ctx = make_group_context(k, parse_curve(c.str("curve")), {1, -1, 0}, tol);
      json pts = json::array();
      json sums = json::array();
      for (const auto& t : two_torsion(ctx, tol)) {
        pts.push_back(to_json(canonical_projective(t)));
        if (std::abs(t.z()) > 1e-12)
          sums.push_back((t.x() + t.y()) / t.z());
      }
      r.outputs["points"] = pts;
      r.outputs["x_plus_y"] = sums;
      if (ctx.kind == CurveKind::H) {
        const double kp = hessian_parameter(k, tol);
        if (kp > 1)
          r.outputs["e_levels"] = e_levels(kp);
      }
    };
  }
  {
    auto& c = add("zeros", "Zeros of G_A on the boundary of the hybrid component");
    option(c, "k", "parameter k");
    option(c, "a", "point A");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const auto z = ga_zero_count(c.real("k"), c.ray("a"), tol);
      r.outputs["sampled"] = z.sampled;
      if (z.analytic)
        r.outputs["analytic"] = *z.analytic;
      r.outputs["region"] = z.region;
      r.outputs["line_pair"] = z.line_pair;
      if (z.singular_point)
        r.outputs["singular_point"] = to_json(canonical_projective(*z.singular_point));
      r.outputs["total"] = z.total;
      r.outputs["agree"] = z.agree;
      for (const auto& n : z.notes)
        r.warnings.push_back(n);
    };
  }
  {
    auto& c = add("visible", "Visibility of a boundary ray from A");
    option(c, "k", "parameter k");
    option(c, "component", "component id", false, "HYBRID_B1B2");
    option(c, "a", "point A");
    option(c, "d", "boundary ray D0");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const auto comp = component_by_id(c.real("k"), c.str("component"), tol);
      const auto v = visibility_report(comp, c.ray("a"), c.ray("d"), tol);
      r.outputs["visible"] = v.visible;
      r.outputs["negated"] = v.negated;
      r.outputs["smooth"] = v.smooth;
      r.outputs["tangent_visible"] = v.tangent_visible ? json(*v.tangent_visible) : json(nullptr);
      r.residuals["tangent_cos"] = v.tangent_cos;
    };
  }
  {
    auto& c = add("classify-fermat", "Case table for the Fermat cubic k = 0");
    option(c, "a", "point A");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const auto fc = fermat_classify(c.ray("a"), tol);
      r.outputs["case_id"] = fc.case_id;
      r.outputs["mirrored"] = fc.mirrored;
      r.outputs["tie"] = fc.tie;
      r.outputs["matching"] = fc.matching;
      r.outputs["facts"] = facts_json(fc.facts);
      r.outputs["facts_hold"] = fc.facts_hold;
      r.residuals["h_value"] = fc.h_value;
    };
  }
  {
    auto& c = add("km2", "Facts for k = -2 and E = (-1, mu, 0)");
    option(c, "mu", "parameter mu > 0");
    option(c, "samples", "samples per check", false, "300");
    option(c, "c2", "linear form c2 for the inequality check", false);
    option(c, "m", "multiple m", false);
    option(c, "r", "multiple r", false);
    option(c, "D", "class D", false);
    option(c, "E", "class E", false);
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double mu = c.real("mu");
      const auto v = km2_functions(mu);
      r.outputs["t"] = v.t;
      r.outputs["s"] = v.s ? json(*v.s) : json(nullptr);
      const double n = c.real("samples");
      if (!(n >= 1) || n != std::floor(n))
        throw ArgError("--samples must be a positive integer");
      const auto rep = km2_fact_check(mu, static_cast<std::size_t>(n), tol);
      r.outputs["e"] = to_json(rep.e);
      r.outputs["facts"] = facts_json(rep.facts);
      r.outputs["all_hold"] = rep.all_hold;
      const bool any = c.has("c2") || c.has("m") || c.has("r") || c.has("D") || c.has("E");
      if (any) {
        for (const char* k : {"c2", "m", "r", "D", "E"})
          if (!c.has(k))
            throw ArgError(std::string("the inequality check needs --c2, --m, --r, --D and --E; missing --") + k);
        const Vec3 c2 = parse_vec(c.str("c2"));
        const double lhs = c.real("r") * c2.dot(parse_vec(c.str("E")));
        const double rhs = c.real("m") * c2.dot(parse_vec(c.str("D")));
        r.outputs["inequality"] = {{"r_c2_E", lhs}, {"m_c2_D", rhs}, {"holds", lhs <= rhs}};
      }
    };
  }
  {
    auto& c = add("lambda-bound", "Bound lambda0 with (D - lambda E) negative on the closure of Q");
    option(c, "k", "parameter k");
    option(c, "component", "component id", false, "BOUNDED_POSITIVE");
    option(c, "e", "class E");
    option(c, "d", "class D (default: the component witness)", false);
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const auto comp = component_by_id(k, c.str("component"), tol);
      const RayVector d = c.has("d") ? c.ray("d") : comp.witness;
      const auto res = lambda_bound(k, comp, c.ray("e"), d, tol);
      r.outputs["lambda0"] = res.lambda0;
      r.outputs["method"] = to_string(res.method);
      r.outputs["certificate_count"] = res.certificates.size();
      if (res.method == LambdaMethod::CUBIC_ROOTS)
        r.outputs["roots"] = {res.lambda1, res.lambda2};
      r.outputs["d"] = to_json(d);
      r.outputs["certificate_recheck"] = lambda_certificate_holds(res, res.lambda0 * (1 + 1e-6), tol);
    };
  }
  {
    auto& c = add("pole", "Solve T(D, D, .) = l for D in a bounded positive component");
    option(c, "k", "parameter k");
    option(c, "component", "component id", false, "BOUNDED_POSITIVE");
    option(c, "l", "covector l");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      const double k = c.real("k");
      const auto comp = component_by_id(k, c.str("component"), tol);
      const LinearForm3 l(parse_vec(c.str("l")));
      const RayVector d = pole_solve(k, comp, l, tol);
      r.outputs["d"] = to_json(d);
      r.residuals["covector"] = (double_polar(k, d, tol).covector() - l.covector()).cwiseAbs().maxCoeff();
    };
  }
  {
    auto& c = add("enumerate", "Integral classes with F(E) in a range");
    option(c, "k", "parameter k");
    option(c, "region", "any | component:ID | half-cone | ray:x,y,z", false, "any");
    option(c, "bound", "sup-norm bound", false, "10");
    option(c, "range", "closed range lo,hi for F(E)", false, "1,9");
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      RegionSpec reg;
      const std::string s = c.str("region");
      if (s == "any") {
        reg.kind = RegionSpec::Kind::ANY;
      } else if (s == "half-cone") {
        reg.kind = RegionSpec::Kind::HESSIAN_BOUNDED_HALF_CONE;
      } else if (s.rfind("component:", 0) == 0) {
        reg.kind = RegionSpec::Kind::COMPONENT;
        reg.component_id = s.substr(10);
      } else if (s.rfind("ray:", 0) == 0) {
        reg.kind = RegionSpec::Kind::RAY;
        reg.direction = parse_vec(s.substr(4));
      } else {
        throw ArgError("unknown region '" + s + "'");
      }
      const double b = c.real("bound");
      if (!(b >= 1) || b != std::floor(b) || b > 1000)
        throw ArgError("--bound must be an integer in [1, 1000]");
      const auto range = parse_list(c.str("range"), 2);
      const auto list = enumerate_integral(c.real("k"), reg, static_cast<int>(b), {range[0], range[1]}, tol);
      r.outputs["count"] = list.size();
      r.outputs["classes"] = rays(list);
    };
  }
  {
    auto& c = add("figure", "Render an SVG figure");
    option(c, "preset", "fig1..fig5", false);
    option(c, "k", "parameter k (overrides the preset)", false);
    option(c, "a", "point A", false);
    option(c, "viewport", "xmin,xmax,ymin,ymax", false);
    option(c, "layers", "comma list of CUBIC,HESSIAN,ASYMPTOTES,SHADE_Q,MARK_POINTS", false);
    option(c, "size", "width,height in px", false);
    option(c, "out", "output path (default: standard output)", false);
    c.body = [](Command& c, const Tolerances& tol, Report& r) {
      FigureSpec spec;
      if (c.has("preset"))
        spec = figure_preset(c.str("preset"));
      else
        spec.layers = {Layer::CUBIC, Layer::HESSIAN, Layer::ASYMPTOTES};
      if (c.has("k"))
        spec.k = c.real("k");
      if (c.has("a"))
        spec.a_point = c.ray("a");
      if (c.has("viewport")) {
        const auto v = parse_list(c.str("viewport"), 4);
        spec.viewport = {v[0], v[1], v[2], v[3]};
      }
      if (c.has("layers")) {
        spec.layers.clear();
        std::string s = c.str("layers");
        std::size_t start = 0;
        for (;;) {
          const auto comma = s.find(',', start);
          const std::string name = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
          try {
            spec.layers.insert(layer_from_string(name));
          } catch (const DomainError& e) {
            throw ArgError(e.what());
          }
          if (comma == std::string::npos)
            break;
          start = comma + 1;
        }
      }
      if (c.has("size")) {
        const auto v = parse_list(c.str("size"), 2);
        if (!(v[0] >= 1 && v[1] >= 1 && v[0] <= 20000 && v[1] <= 20000))
          throw ArgError("--size must be two positive pixel counts");
        spec.width_px = static_cast<int>(v[0]);
        spec.height_px = static_cast<int>(v[1]);
      }
      const std::string svg = render_figure(spec, tol);
      r.outputs["bytes"] = svg.size();
      if (c.has("out")) {
        std::ofstream f(c.str("out"), std::ios::binary);
        f << svg;
        if (!f)
          throw DomainError("cannot write " + c.str("out"));
        r.outputs["path"] = c.str("out");
      } else {
        r.outputs["svg"] = svg;
        r.text = svg;
      }
    };
  }
  {
    auto& c = add("verify", "Run the acceptance criteria");
    option(c, "suite", "all, list or a criterion number", false, "all");
    option(c, "seed", "seed (default: CUBICLAB_SEED or 20240607)", false);
    c.body = [](Command& c, const Tolerances&, Report& r) {
      const std::string suite = c.str("suite");
      const auto titles = criterion_titles();
      if (suite == "list") {
        json list = json::array();
        for (std::size_t i = 0; i < titles.size(); ++i) {
          list.push_back({{"id", i + 1}, {"title", titles[i]}});
          r.text += std::to_string(i + 1) + " " + titles[i] + "\n";
        }
        r.outputs["criteria"] = list;
        return;
      }
      std::optional<int> which;
      if (suite != "all") {
        const double v = parse_real(suite);
        if (v != std::floor(v) || v < 1 || v > static_cast<double>(titles.size()))
          throw ArgError("--suite must be all, list or a criterion number");
        which = static_cast<int>(v);
      }
      std::uint64_t seed = default_seed();
      if (c.has("seed")) {
        try {
          std::size_t used = 0;
          seed = std::stoull(c.str("seed"), &used, 0);
          if (used != c.str("seed").size())
            throw std::invalid_argument("seed");
        } catch (const std::exception&) {
          throw ArgError("--seed must be an unsigned 64-bit integer");
        }
      }
      json list = json::array();
      int failed = 0;
      for (const auto& res : run_acceptance(seed, which)) {
        list.push_back({{"id", res.id}, {"title", res.title}, {"pass", res.pass}, {"detail", res.detail}});
        r.text += std::string(res.pass ? "PASS " : "FAIL ") + std::to_string(res.id) + " " + res.title + ": " +
                  res.detail + "\n";
        failed += res.pass ? 0 : 1;
      }
      r.outputs["seed"] = seed;
      r.outputs["criteria"] = list;
      r.outputs["failed"] = failed;
      if (failed)
        r.exit_code = 1;
    };
  }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Toolkit for the Hesse pencil of ternary cubics and its positive index cones", "cubiclab"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::vector<std::string> tol_overrides;
  app.add_flag("--json", as_json, "emit one JSON object");
  app.add_option("--tol", tol_overrides, "override a tolerance, name=value (repeatable)");
  std::vector<std::unique_ptr<Command>> cmds;
  register_commands(app, cmds);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Command* cmd = nullptr;
  for (auto& c : cmds)
    if (c->app->parsed())
      cmd = c.get();
  const std::string op = cmd->app->get_name();

  json inputs = json::object();
  for (const auto& [name, v] : cmd->values)
    if (!v.empty())
      inputs[name] = v;
  for (const auto& [name, v] : cmd->flags)
    if (v)
      inputs[name] = true;

  Report report;
  try {
    Tolerances tol;
    for (const auto& t : tol_overrides) {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw ArgError("--tol expects name=value, got '" + t + "'");
      try {
        tol.set(t.substr(0, eq), parse_real(t.substr(eq + 1)));
      } catch (const DomainError& e) {
        throw ArgError(e.what());
      }
      inputs["tol"][t.substr(0, eq)] = t.substr(eq + 1);
    }
    cmd->body(*cmd, tol, report);
  } catch (const ArgError& e) {
    err << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const CubicError& e) {
    if (as_json)
      out << json{{"op", op}, {"inputs", inputs}, {"error", {{"name", e.name()}, {"message", e.what()}}}}.dump(2)
          << '\n';
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  }

  if (as_json) {
    json doc{{"op", op},
             {"inputs", inputs},
             {"outputs", report.outputs},
             {"residuals", report.residuals},
             {"warnings", report.warnings}};
    out << doc.dump(2) << '\n';
  } else {
    print_human(op, report, out);
  }
  return report.exit_code;
}

} // namespace cubiclab::cli
