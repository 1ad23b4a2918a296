#include "cubiclab/poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cubiclab::poly {

std::vector<std::complex<double>> quadratic_roots(double a, double b, double c)
{
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double q = -0.5 * (b + (b >= 0.0 ? s : -s));
    if (q == 0.0)
      return {0.0, 0.0};
    return {q / a, c / q};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
  return {{re, -im}, {re, im}};
}

std::vector<std::complex<double>> cubic_roots(double a, double b, double c, double d)
{
  const double p = b / a, q = c / a, r = d / a;
  auto f = [&](double x) { return ((x + p) * x + q) * x + r; };
  auto df = [&](double x) { return (3.0 * x + 2.0 * p) * x + q; };

  // A monic cubic always has a real root inside the Cauchy bound.
  const double bound = 1.0 + std::max({std::abs(p), std::abs(q), std::abs(r)});
  double x = bisect(f, -bound, bound, 200);
  for (int i = 0; i < 4; ++i) {
    const double g = df(x);
    if (g == 0.0)
      break;
    const double nx = x - f(x) / g;
    if (!std::isfinite(nx) || std::abs(f(nx)) > std::abs(f(x)))
      break;
    x = nx;
  }

  // Deflate x^3 + p x^2 + q x + r = (x - root)(x^2 + e x + g).
  const double e = p + x;
  const double g = q + x * e;
  std::vector<std::complex<double>> out{x};
  for (auto z : quadratic_roots(1.0, e, g))
    out.push_back(z);
  return out;
}

std::vector<RealRoot> real_cubic_roots(double a, double b, double c, double d,
                                       double double_tol, double triple_tol)
{
  auto roots = cubic_roots(a, b, c, d);
  auto close = [](std::complex<double> u, std::complex<double> v, double tol) {
    return std::abs(u - v) <= tol * (1.0 + std::max(std::abs(u), std::abs(v)));
  };

  std::vector<RealRoot> out;
  if (close(roots[0], roots[1], triple_tol) && close(roots[0], roots[2], triple_tol) &&
      close(roots[1], roots[2], triple_tol)) {
    out.push_back({(roots[0].real() + roots[1].real() + roots[2].real()) / 3.0, 3});
    return out;
  }

  std::array<bool, 3> used{false, false, false};
  for (int i = 0; i < 3; ++i) {
    if (used[i])
      continue;
    for (int j = i + 1; j < 3; ++j) {
      if (!used[j] && close(roots[i], roots[j], double_tol)) {
        used[i] = used[j] = true;
        out.push_back({0.5 * (roots[i].real() + roots[j].real()), 2});
        break;
      }
    }
    if (!used[i]) {
      used[i] = true;
      if (std::abs(roots[i].imag()) <= double_tol * (1.0 + std::abs(roots[i])))
        out.push_back({roots[i].real(), 1});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& l, const RealRoot& r) { return l.value < r.value; });
  return out;
}

} // namespace cubiclab::poly
