#include "cubiclab/forms.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace cubiclab {

namespace {

// Number of distinct orderings of the multiset {i, j, k}.
int orderings(int i, int j, int k)
{
  if (i == j && j == k)
    return 1;
  if (i == j || j == k || i == k)
    return 3;
  return 6;
}

SymTrilinear tensor_from_coeffs(const TernaryCubic::Coeffs& c)
{
  std::array<Mat3, 3> s{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        s[i](j, k) = c[monomial_index(i, j, k)] / orderings(i, j, k);
  return SymTrilinear(s);
}

} // namespace

void Tolerances::set(const std::string& name, double value)
{
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("tolerance " + name + " must be positive");
  if (name == "on_curve_abs")
    on_curve_abs = value;
  else if (name == "kernel_rank_rel")
    kernel_rank_rel = value;
  else if (name == "newton_residual")
    newton_residual = value;
  else if (name == "degenerate_k_band")
    degenerate_k_band = value;
  else
    throw DomainError("unknown tolerance: " + name);
}

double SymTrilinear::apply(const Vec3& a, const Vec3& b, const Vec3& c) const
{
  return b.dot(contract(a) * c);
}

Mat3 SymTrilinear::contract(const Vec3& a) const
{
  return a[0] * slices_[0] + a[1] * slices_[1] + a[2] * slices_[2];
}

Vec3 SymTrilinear::contract(const Vec3& a, const Vec3& b) const
{
  return contract(a) * b;
}

int monomial_index(int i, int j, int k)
{
  std::array<int, 3> t{i, j, k};
  std::sort(t.begin(), t.end());
  // Lexicographic order of sorted index triples matches the coefficient order.
  static constexpr int table[3][3][3] = {
    {{0, 1, 2}, {-1, 3, 4}, {-1, -1, 5}},
    {{-1, -1, -1}, {-1, 6, 7}, {-1, -1, 8}},
    {{-1, -1, -1}, {-1, -1, -1}, {-1, -1, 9}},
  };
  return table[t[0]][t[1]][t[2]];
}

TernaryCubic::TernaryCubic(const Coeffs& coeffs) : coeffs_(coeffs), tri_(tensor_from_coeffs(coeffs))
{
  scale_ = 1.0;
  for (double c : coeffs_)
    scale_ = std::max(scale_, std::abs(c));
}

double TernaryCubic::operator()(const Vec3& d) const
{
  const double x = d[0], y = d[1], z = d[2];
  const auto& c = coeffs_;
  return x * (x * (c[0] * x + c[1] * y + c[2] * z) + y * (c[3] * y + c[4] * z) + c[5] * z * z) +
         y * (y * (c[6] * y + c[7] * z) + c[8] * z * z) + c[9] * z * z * z;
}

Vec3 TernaryCubic::gradient(const Vec3& d) const
{
  return 3.0 * tri_.contract(d, d);
}

TernaryCubic TernaryCubic::operator-() const
{
  return scaled(-1.0);
}

TernaryCubic TernaryCubic::scaled(double s) const
{
  Coeffs c = coeffs_;
  for (double& v : c)
    v *= s;
  return TernaryCubic(c);
}

TernaryCubic TernaryCubic::compose(const Mat3& m) const
{
  Coeffs out{};
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        const double t = tri_.apply(m.col(a), m.col(b), m.col(c));
        out[monomial_index(a, b, c)] = t * orderings(a, b, c);
      }
  return TernaryCubic(out);
}

TernaryCubic hesse_cubic(double k, const Tolerances& tol, bool allow_degenerate)
{
  if (!allow_degenerate && std::abs(k - 1.0) <= tol.degenerate_k_band)
    throw DegenerateParameter("k = 1 splits the cubic into a line and a conic");
  return TernaryCubic({0.0, 3.0 - 3.0 * k, -3.0, 3.0 - 3.0 * k, 3.0 * k - 6.0, 3.0, 0.0, -3.0, 3.0, -1.0});
}

TernaryCubic diagonal_hesse_cubic(double k)
{
  return TernaryCubic({-1.0, 0.0, 0.0, 0.0, 3.0 * k, 0.0, -1.0, 0.0, 0.0, -1.0});
}

double evaluate(const TernaryCubic& c, const RayVector& d)
{
  return c(d.vec());
}

const SymTrilinear& trilinear(const TernaryCubic& c)
{
  return c.trilinear();
}

QuadraticForm3 polar_quadric(const TernaryCubic& c, const RayVector& a)
{
  return QuadraticForm3(c.trilinear().contract(a.vec()));
}

LinearForm3 second_polar(const TernaryCubic& c, const RayVector& u)
{
  return LinearForm3(c.trilinear().contract(u.vec(), u.vec()));
}

TernaryCubic hessian_cubic(const TernaryCubic& c)
{
  // Second partials: d^2 C = 6 sum_l D_l T_l. Expand det row by row.
  std::array<Mat3, 3> a;
  for (int l = 0; l < 3; ++l)
    a[l] = 6.0 * c.trilinear().slice(l);

  static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  static constexpr int signs[6] = {1, 1, 1, -1, -1, -1};

  TernaryCubic::Coeffs out{};
  for (int l1 = 0; l1 < 3; ++l1)
    for (int l2 = 0; l2 < 3; ++l2)
      for (int l3 = 0; l3 < 3; ++l3) {
        double s = 0.0;
        for (int p = 0; p < 6; ++p)
          s += signs[p] * a[l1](0, perms[p][0]) * a[l2](1, perms[p][1]) * a[l3](2, perms[p][2]);
        out[monomial_index(l1, l2, l3)] += s;
      }
  return TernaryCubic(out);
}

double hessian_parameter(double k, const Tolerances& tol)
{
  if (std::abs(k) <= tol.degenerate_k_band)
    throw DegenerateParameter("k = 0: the Hessian is a triple of lines");
  return (4.0 - k * k * k) / (3.0 * k * k);
}

std::array<double, 3> siblings(double k_prime, bool allow_boundary)
{
  if (!(k_prime > 1.0) && !(allow_boundary && k_prime == 1.0))
    throw DomainError("siblings requires k' > 1");

  auto p = [&](double k) { return (k + 3.0 * k_prime) * k * k - 4.0; };
  double r = 1.0;
  if (p(1.0) != 0.0) {
    r = poly::bisect(p, 0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      const double dp = (3.0 * r + 6.0 * k_prime) * r;
      if (dp == 0.0)
        break;
      r -= p(r) / dp;
    }
  }

  // k^3 + 3k' k^2 - 4 = (k - r)(k^2 + b k + c).
  const double b = 3.0 * k_prime + r;
  const double c = r * b;
  const double disc = std::max(0.0, b * b - 4.0 * c);
  const double q = -0.5 * (b + std::sqrt(disc));
  std::array<double, 3> out{q, c / q, r};
  std::sort(out.begin(), out.end());
  return out;
}

Signature signature(const QuadraticForm3& q, const Tolerances& tol)
{
  Eigen::SelfAdjointEigenSolver<Mat3> es(q.matrix(), Eigen::EigenvaluesOnly);
  const Vec3 ev = es.eigenvalues();
  const double radius = ev.cwiseAbs().maxCoeff();
  Signature s;
  for (int i = 0; i < 3; ++i) {
    if (radius == 0.0 || std::abs(ev[i]) <= tol.kernel_rank_rel * radius)
      ++s.z;
    else if (ev[i] > 0.0)
      ++s.p;
    else
      ++s.n;
  }
  return s;
}

RayVector conic_singular_point(const QuadraticForm3& q, const Tolerances& tol)
{
  const Signature s = signature(q, tol);
  if (s.z != 1)
    throw RankError("polar conic has rank " + std::to_string(3 - s.z) + ", expected 2");

  const Mat3& m = q.matrix();
  Vec3 best = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const Vec3 v = m.row(i).transpose().cross(m.row(j).transpose());
      if (v.norm() > best.norm())
        best = v;
    }
  return canonical_projective(RayVector(best));
}

} // namespace cubiclab
