#pragma once

#include <complex>
#include <vector>

namespace cubiclab::poly {

/// Roots of a x^2 + b x + c (a != 0), computed without cancellation.
std::vector<std::complex<double>> quadratic_roots(double a, double b, double c);

/// All three complex roots of a x^3 + b x^2 + c x + d (a != 0).
std::vector<std::complex<double>> cubic_roots(double a, double b, double c, double d);

struct RealRoot
{
  double value = 0.0;
  int multiplicity = 1;
};

/// Real roots of a cubic with multiplicities. Roots closer than `double_tol`
/// (relative to 1 + |root|) merge into a double root, and three roots within
/// `triple_tol` merge into a triple root; a complex pair that merges this way
/// counts as a real double root. Sorted ascending.
std::vector<RealRoot> real_cubic_roots(double a, double b, double c, double d,
                                       double double_tol = 1e-6, double triple_tol = 1e-4);

/// Bisection for a sign change of f on [lo, hi]; requires f(lo) f(hi) <= 0.
template <class F>
double bisect(F&& f, double lo, double hi, int iterations = 200)
{
  double flo = f(lo);
  if (flo == 0.0)
    return lo;
  if (f(hi) == 0.0)
    return hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
      break;
    const double fm = f(mid);
    if (fm == 0.0)
      return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace cubiclab::poly
