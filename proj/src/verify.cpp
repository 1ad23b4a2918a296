#include "cubiclab/verify.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/render.hpp"
#include "cubiclab/scenario.hpp"
#include "cubiclab/steinian.hpp"
#include "cubiclab/visibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace cubiclab {

namespace {

// Accumulates sub-checks of one criterion.
class Checker
{
public:
  void require(bool ok, const std::string& what)
  {
    if (!ok && failures_.size() < 6)
      failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return ok_; }
  std::string detail() const
  {
    std::ostringstream os;
    const auto& v = ok_ ? notes_ : failures_;
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? "; " : "") << v[i];
    return os.str();
  }

private:
  bool ok_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v)
{
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

Vec3 random_unit(SplitMix64& rng)
{
  for (;;) {
    const Vec3 v(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0)
      return v / n;
  }
}

const ConeComponent* find_id(const std::vector<ConeComponent>& cs, const std::string& id)
{
  for (const auto& c : cs)
    if (c.id == id)
      return &c;
  return nullptr;
}

ConeComponent find_kind(double k, ComponentKind kind)
{
  for (auto& c : enumerate_components(k))
    if (c.kind == kind)
      return c;
  throw DomainError("no component of kind " + to_string(kind));
}

int count_of(const std::string& s, const std::string& needle)
{
  int n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1))
    ++n;
  return n;
}

void hessian_identity(Checker& c, SplitMix64& rng)
{
  double worst = 0.0;
  for (double k : {-5.0, -3.0, -2.0, -0.5, 0.5, 2.0, 5.0, 10.0}) {
    const TernaryCubic h = hessian_cubic(hesse_cubic(k));
    const TernaryCubic fk = hesse_cubic(hessian_parameter(k), {}, true);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 d = random_unit(rng);
      worst = std::max(worst, std::abs(h(d) + 54 * k * k * fk(d)) / h.scale());
    }
  }
  c.require(worst < 1e-9, "max relative residual " + fmt(worst));
  c.note("max relative residual " + fmt(worst));
}

void closed_form_hessian(Checker& c, SplitMix64&)
{
  double worst = 0.0;
  for (double k : {2.0, 5.0, -3.0}) {
    const TernaryCubic h = hessian_cubic(diagonal_hesse_cubic(k));
    TernaryCubic::Coeffs expect{};
    expect[monomial_index(0, 0, 0)] = expect[monomial_index(1, 1, 1)] = expect[monomial_index(2, 2, 2)] =
        27 * 2 * k * k;
    expect[monomial_index(0, 1, 2)] = -27 * (8 - 2 * k * k * k);
    for (int i = 0; i < 10; ++i)
      worst = std::max(worst, std::abs(h.coeffs()[i] - expect[i]));
  }
  c.require(worst < 1e-10, "max coefficient error " + fmt(worst));
  c.note("max coefficient error " + fmt(worst));
}

void conic_identities(Checker& c, SplitMix64&)
{
  Mat3 expect = Mat3::Zero();
  expect(2, 2) = -1.0 / 3;
  const double e1 = (polar_quadric(hesse_cubic(-2), {1.0 / 3, 1.0 / 3, 1}).matrix() - expect).cwiseAbs().maxCoeff();
  c.require(e1 < 1e-12, "G at (1/3,1/3,1), k=-2: error " + fmt(e1));
  for (double k : {-3.0, -5.0}) {
    const Mat3 g = polar_quadric(hesse_cubic(k), {1 / (1 - k), 1 / (1 - k), 1}).matrix();
    // Coefficients of x^2, y^2 and xy in G(x, y, 0).
    const double xx = g(0, 0), yy = g(1, 1), xy = 2 * g(0, 1);
    const double err = std::max({std::abs(xx), std::abs(yy), std::abs(xy - 3 * (k + 2))});
    c.require(err < 1e-10, "k=" + fmt(k) + ": G(x,y,0) = " + fmt(xy) + " xy, expected " + fmt(3 * (k + 2)) + " xy");
  }
  c.note("G = -z^2/3 error " + fmt(e1));
}

void steinian_suite(Checker& c, SplitMix64& rng)
{
  double inv = 0.0, tang = 0.0, line = 0.0;
  for (double k : {2.0, 5.0, -3.0})
    for (const auto& u : hessian_samples(k, 200, rng)) {
      inv = std::max(inv, projective_distance(steinian_map(k, steinian_map(k, u)), u));
      const auto r = verify_steinian_tangency(k, u);
      tang = std::max(tang, r.tangency);
      line = std::max(line, r.on_line);
    }
  c.require(inv < 1e-7, "involution error " + fmt(inv));
  c.require(tang < 1e-7 && line < 1e-7, "tangency residual " + fmt(std::max(tang, line)));
  double b3 = 0.0;
  for (double k : {2.0, 5.0, 10.0}) {
    const double v = k / (2 * (k - 1));
    b3 = std::max(b3, projective_distance(steinian_map(k, {1, -1, 0}), {v, v, 1}));
  }
  c.require(b3 < 1e-9, "alpha(B3) error " + fmt(b3));
  for (double k : {2.0, 5.0})
    c.require(translation_check(k, 200, rng), "translation check failed at k=" + fmt(k));
  auto on_triangle = [](const RayVector& r) {
    if (std::abs(r.z()) < 1e-9)
      return false;
    const double x = r.x() / r.z(), y = r.y() / r.z();
    return x > 0 && y > 0 && x + y < 1;
  };
  for (double k : {-0.5, -3.0})
    for (const auto& u : hessian_samples(k, 100, rng))
      c.require(on_triangle(u) != on_triangle(steinian_map(k, u)), "no component swap at k=" + fmt(k));
  c.note("involution " + fmt(inv) + ", tangency " + fmt(std::max(tang, line)) + ", alpha(B3) " + fmt(b3));
}

void zero_tables(Checker& c, SplitMix64& rng)
{
  int total = 0, agree = 0;
  for (double k : {2.0, 3.0, 5.0})
    for (const auto& row : zero_table_rows())
      for (const auto& a : sample_zero_table_row(k, row, 200, rng)) {
        const auto r = ga_zero_count(k, a);
        ++total;
        agree += r.agree ? 1 : 0;
        c.require(r.agree, "disagreement at k=" + fmt(k) + " row " + row);
        c.require(r.total == 0 || r.total == 2 || r.total == 4, "odd total at k=" + fmt(k));
      }
  c.note(std::to_string(agree) + "/" + std::to_string(total) + " samples agree over " +
         std::to_string(zero_table_rows().size()) + " rows x 3 k-values");
}

void visibility_suite(Checker& c, SplitMix64& rng)
{
  const double k = 5;
  const double u = -1.0 / (k - 1);
  std::map<int, int> seen;
  int tries = 0;
  while ((seen[1] < 100 || seen[-1] < 100) && tries < 20000) {
    ++tries;
    double x = rng.uniform(u - 4, u), y = rng.uniform(u, u + 6);
    if (rng.uniform() < 0.5)
      std::swap(x, y);
    const auto r = prop23_classify(k, {x, y, 1});
    if (std::abs(r.h_value) < 1e-6 || seen[r.sign_class] >= 100)
      continue;
    ++seen[r.sign_class];
    c.require(r.consistent, "missing witness arc at A=(" + fmt(x) + "," + fmt(y) + ")");
  }
  c.require(seen[1] == 100 && seen[-1] == 100, "not enough samples per sign class");

  const auto comps = enumerate_components(k);
  int compared = 0, agree = 0;
  while (compared < 1000) {
    const auto& comp = comps[rng.next() % comps.size()];
    const RayVector a(Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)));
    const auto& piece = comp.boundary[rng.next() % comp.boundary.size()];
    const auto& s = piece.arc.samples[rng.next() % piece.arc.samples.size()];
    const auto rep = visibility_report(comp, a, RayVector(piece.sign * s.vec()));
    if (!rep.tangent_visible)
      continue;
    ++compared;
    agree += *rep.tangent_visible == rep.visible ? 1 : 0;
  }
  c.require(agree == compared, "segment and tangent tests disagree on " + std::to_string(compared - agree) + " pairs");
  c.note("200 classified A, " + std::to_string(agree) + "/1000 segment/tangent pairs agree");
}

void component_atlas(Checker& c, SplitMix64& rng)
{
  const std::map<double, std::size_t> expected{{5.0, 4}, {0.5, 4}, {0.0, 4}, {-2.0, 3}};
  std::ostringstream counts;
  for (const auto& [k, n] : expected) {
    const auto cs = enumerate_components(k);
    counts << " k=" << k << ":" << cs.size();
    c.require(cs.size() == n, "k=" + fmt(k) + ": " + std::to_string(cs.size()) + " components, expected " +
                                  std::to_string(n));
    // Corner rays: k > 1 meets at -B1, -B2 style rays, k < 1 at their negatives.
    const double sg = k > 1 ? 1.0 : -1.0;
    const std::map<std::string, std::array<Vec3, 2>> corners{
        {"B1B2", {Vec3(0, -1, 0), Vec3(-1, 0, 0)}},
        {"B1B3", {Vec3(0, 1, 0), Vec3(-1, 1, 0)}},
        {"B2B3", {Vec3(1, -1, 0), Vec3(1, 0, 0)}}};
    for (const auto& comp : cs) {
      for (const auto& [tag, want] : corners) {
        if (comp.id.size() < 4 || comp.id.substr(comp.id.size() - 4) != tag)
          continue;
        for (const Vec3& w : want) {
          bool hit = false;
          for (const auto& r : comp.corners)
            hit = hit || ray_distance(r, RayVector(sg * w)) < 1e-12;
          c.require(hit, comp.id + " at k=" + fmt(k) + " lacks a corner ray");
        }
      }
      const auto region = component_region(comp, 300, rng);
      c.require(convexity_check(region, 1000, rng), comp.id + " at k=" + fmt(k) + " fails the midpoint test");
    }
  }
  c.note("counts" + counts.str());
}

void siblings_levels(Checker& c, SplitMix64&)
{
  const auto s1 = siblings(1.0, true);
  const double e1 = std::max({std::abs(s1[0] + 2), std::abs(s1[1] + 2), std::abs(s1[2] - 1)});
  c.require(e1 < 1e-12, "siblings(1) error " + fmt(e1));
  double rt = 0.0;
  for (double kp : {1.5, 2.0, 5.0, 20.0}) {
    for (double k : siblings(kp))
      rt = std::max(rt, std::abs(hessian_parameter(k) - kp));
    const auto e = e_levels(kp);
    c.require(e[0] < e[1] && e[1] < e[2], "e-levels not strictly increasing at k'=" + fmt(kp));
  }
  c.require(rt < 1e-9, "round trip error " + fmt(rt));
  c.note("siblings(1) error " + fmt(e1) + ", round trip " + fmt(rt));
}

void pole_solver(Checker& c, SplitMix64& rng)
{
  double worst = 0.0;
  for (double k : {2.0, 5.0}) {
    const auto comp = find_kind(k, ComponentKind::BOUNDED_POSITIVE);
    for (const auto& l : comp.interior_samples(100, rng)) {
      const LinearForm3 cov = double_polar(k, l);
      const RayVector d = pole_solve(k, comp, cov);
      const double res = (double_polar(k, d).covector() - cov.covector()).cwiseAbs().maxCoeff();
      worst = std::max(worst, res);
    }
  }
  c.require(worst < 1e-8, "round trip residual " + fmt(worst));
  const auto comp = find_kind(5, ComponentKind::BOUNDED_POSITIVE);
  const auto& loop = comp.boundary_loop();
  double bd = 0.0;
  for (std::size_t i = 0; i < loop.size(); i += loop.size() / 9) {
    const RayVector d0(loop[i]);
    bd = std::max(bd, (pole_solve(5, comp, double_polar(5, d0)).vec() - d0.vec()).norm());
  }
  c.require(bd < 1e-7, "boundary recovery error " + fmt(bd));
  c.note("residual " + fmt(worst) + ", boundary error " + fmt(bd));
}

void lambda_suite(Checker& c, SplitMix64& rng)
{
  const auto comp = find_kind(5, ComponentKind::BOUNDED_POSITIVE);
  std::map<LambdaMethod, int> methods;
  for (const RayVector& e : {RayVector(1, 0, 0), RayVector(0, 0, 1)}) {
    const auto r = lambda_bound(5, comp, e, comp.witness);
    ++methods[r.method];
    for (int i = 0; i < 20; ++i) {
      const double lam = r.lambda0 * (1 + 1e-6 + rng.uniform() * (1 - 1e-6));
      c.require(lambda_certificate_holds(r, lam), to_string(r.method) + " certificate fails above the bound");
    }
    const auto r2 = lambda_bound(5, comp, e, 2.0 * comp.witness);
    const double err = std::abs(r2.lambda0 - 2 * r.lambda0) / std::max(1.0, r.lambda0);
    c.require(err < 1e-6, to_string(r.method) + " homogeneity error " + fmt(err));
  }
  c.require(methods.size() == 2, "both methods were not exercised");
  c.note("NEGATIVE_FORM and CUBIC_ROOTS certificates re-verify");
}

void fermat_table(Checker& c, SplitMix64&)
{
  int classified = 0, ties = 0, excluded = 0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 200; ++j) {
      const double a = -3 + 6 * (i + 0.5) / 200, b = -3 + 6 * (j + 0.5) / 200;
      FermatCase fc;
      try {
        fc = fermat_classify({a, b, 1});
      } catch (const DomainError&) {
        ++excluded;
        continue;
      }
      ++classified;
      ties += fc.tie ? 1 : 0;
      c.require(fc.matching.size() == 1 || fc.tie, "several cases without a tie flag");
      c.require(fc.facts_hold, "facts fail for case " + std::to_string(fc.case_id) + " at (" + fmt(a) + "," +
                                   fmt(b) + ")");
    }
  c.note(std::to_string(classified) + " points classified, " + std::to_string(ties) + " ties, " +
         std::to_string(excluded) + " excluded");
}

void km2_suite(Checker& c, SplitMix64&)
{
  c.require(std::abs(km2_functions(1).t - 1) < 1e-12, "t(1) != 1");
  const auto q = km2_functions(0.25);
  c.require(q.s && std::abs(*q.s - 0.875) < 1e-5, "s(1/4) != 0.875");
  c.require(std::abs(q.t - 0.15139) < 1e-5, "t(1/4) = " + fmt(q.t));
  for (int i = 1; i <= 50; ++i) {
    const double mu = 0.5 * i / 51;
    const auto v = km2_functions(mu);
    c.require(v.s && *v.s > v.t, "s <= t at mu=" + fmt(mu));
  }
  for (double mu : {0.25, 1.0, 1.5}) {
    bool ok = false;
    try {
      ok = km2_fact_check(mu, 300).all_hold;
    } catch (const CubicError&) {
    }
    c.require(ok, "fact check fails at mu=" + fmt(mu));
  }
  c.note("t(1/4)=" + fmt(q.t));
}

void figures(Checker& c, SplitMix64&)
{
  const std::map<std::string, int> expected{{"fig2", 1}, {"fig3", 1}, {"fig4", 2}, {"fig5", 2}};
  for (const auto& name : figure_presets()) {
    const FigureSpec spec = figure_preset(name);
    const std::string a = render_figure(spec);
    c.require(a == render_figure(spec), name + " is not deterministic");
    if (!expected.count(name))
      continue;
    ConeComponent parent = *find_id(enumerate_components(spec.k), "HYBRID_B1B2");
    const int n = expected.at(name);
    const int drawn = count_of(a, "class=\"q-region\"");
    const auto q = q_subcone(spec.k, parent, *spec.a_point);
    c.require(drawn == n && q.regions.size() == std::size_t(n),
              name + ": " + std::to_string(drawn) + " shaded regions, expected " + std::to_string(n));
  }
  const std::string s = render_figure(figure_preset("fig1"));
  c.require(count_of(s, "data-component=\"bounded\"") >= 1 && count_of(s, "data-component=\"unbounded\"") >= 1,
            "fig1 lacks a cubic component");
  for (const char* l : {"x=-0.25", "y=-0.25", "x+y=1.25"})
    c.require(count_of(s, std::string("data-line=\"") + l + "\"") == 1, std::string("fig1 lacks asymptote ") + l);
  c.note("5 presets deterministic, region counts 1/1/2/2");
}

void enumeration(Checker& c, SplitMix64&)
{
  auto reversed = [](double k, const RegionSpec& reg, int b, double lo, double hi) {
    const auto f = hesse_cubic(k);
    const auto in = region_predicate(k, reg);
    std::vector<std::array<long, 3>> out;
    for (int z = b; z >= -b; --z)
      for (int y = b; y >= -b; --y)
        for (int x = b; x >= -b; --x) {
          if (x == 0 && y == 0 && z == 0)
            continue;
          const double v = f(Vec3(x, y, z));
          if (v >= lo - 1e-9 * (1 + std::abs(lo)) && v <= hi + 1e-9 * (1 + std::abs(hi)) && in(Vec3(x, y, z)))
            out.push_back({x, y, z});
        }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto listed = [](const std::vector<RayVector>& v) {
    std::vector<std::array<long, 3>> out;
    for (const auto& r : v)
      out.push_back({std::lround(r.x()), std::lround(r.y()), std::lround(r.z())});
    return out;
  };
  RegionSpec any, bp, half;
  bp.kind = RegionSpec::Kind::COMPONENT;
  bp.component_id = "BOUNDED_POSITIVE";
  half.kind = RegionSpec::Kind::HESSIAN_BOUNDED_HALF_CONE;
  struct Case
  {
    double k;
    RegionSpec reg;
    int bound;
    double lo, hi;
  };
  for (const Case& t : {Case{5, any, 5, 1, 9}, Case{5, bp, 10, 1, 9}, Case{5, bp, 6, 1, 200},
                        Case{-1, half, 5, -50, 50}, Case{5, any, 4, 1, 0}})
    c.require(listed(enumerate_integral(t.k, t.reg, t.bound, {t.lo, t.hi})) ==
                  reversed(t.k, t.reg, t.bound, t.lo, t.hi),
              "mismatch with the reversed-loop listing at k=" + fmt(t.k));
  RegionSpec ray;
  ray.kind = RegionSpec::Kind::RAY;
  ray.direction = Vec3(-1, -1, -3);
  const auto m = enumerate_integral(-2, ray, 12, {1, 9});
  c.require(m.size() == 1 && m[0].vec() == Vec3(-1, -1, -3), "k=-2 ray admits " + std::to_string(m.size()) + " classes");
  c.note("5 listings match, k=-2 ray admits m=1 only");
}

struct Entry
{
  const char* title;
  std::function<void(Checker&, SplitMix64&)> run;
};

const std::vector<Entry>& entries()
{
  static const std::vector<Entry> e{
      {"Hessian identity", hessian_identity},
      {"Closed-form Hessian", closed_form_hessian},
      {"Polar conic identities", conic_identities},
      {"Steinian involution", steinian_suite},
      {"G_A zero-count tables", zero_tables},
      {"Visibility of Hessian arcs", visibility_suite},
      {"Component atlas", component_atlas},
      {"Siblings and e-levels", siblings_levels},
      {"Pole solver", pole_solver},
      {"Lambda bound", lambda_suite},
      {"Fermat case table", fermat_table},
      {"k=-2 facts", km2_suite},
      {"Figures", figures},
      {"Integral enumeration", enumeration},
  };
  return e;
}

} // namespace

std::vector<std::string> criterion_titles()
{
  std::vector<std::string> out;
  for (const auto& e : entries())
    out.push_back(e.title);
  return out;
}

std::uint64_t criterion_seed(std::uint64_t seed, int id)
{
  SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL * static_cast<std::uint64_t>(id)));
  return mix.next();
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::optional<int> which)
{
  const auto& e = entries();
  if (which && (*which < 1 || *which > static_cast<int>(e.size())))
    throw DomainError("no criterion " + std::to_string(*which));
  std::vector<CriterionResult> out;
  for (int id = 1; id <= static_cast<int>(e.size()); ++id) {
    if (which && *which != id)
      continue;
    CriterionResult r;
    r.id = id;
    r.title = e[id - 1].title;
    Checker c;
    SplitMix64 rng(criterion_seed(seed, id));
    try {
      e[id - 1].run(c, rng);
    } catch (const CubicError& ex) {
      c.require(false, ex.name() + ": " + ex.what());
    } catch (const std::exception& ex) {
      c.require(false, ex.what());
    }
    r.pass = c.ok();
    r.detail = c.detail();
    out.push_back(r);
  }
  return out;
}

} // namespace cubiclab
