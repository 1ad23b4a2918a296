#include "doctest.h"
#include "oracles.hpp"

#include "cubiclab/errors.hpp"
#include "cubiclab/forms.hpp"

using namespace cubiclab;

TEST_CASE("hesse cubic matches the unexpanded formula")
{
  std::mt19937_64 rng(7);
  for (double k : {-5.0, -2.0, 0.0, 0.5, 2.0, 5.0}) {
    const auto f = hesse_cubic(k);
    for (int i = 0; i < 200; ++i) {
      const Vec3 d = oracle::random_unit_sup(rng);
      CHECK(f(d) == doctest::Approx(oracle::hesse(k, d)).epsilon(1e-12));
    }
  }
  CHECK(evaluate(hesse_cubic(5), {0, 0, 1}) == -1.0);
  CHECK(evaluate(hesse_cubic(5), {1, 0, 0}) == 0.0);
  CHECK(evaluate(hesse_cubic(-2), {1.0 / 3, 1.0 / 3, 1}) == doctest::Approx(-1.0 / 3).epsilon(1e-14));
  CHECK(evaluate(hesse_cubic(5), {1.0 / 3, 1.0 / 3, 1}) == doctest::Approx(4.0 / 9).epsilon(1e-14));
  CHECK_THROWS_AS(hesse_cubic(1.0), DegenerateParameter);
  CHECK_NOTHROW(hesse_cubic(1.0, {}, true));
}

TEST_CASE("polarization, Euler and homogeneity")
{
  std::mt19937_64 rng(11);
  const auto f = hesse_cubic(5);
  auto fn = [&](const Vec3& v) { return oracle::hesse(5, v); };
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = oracle::random_unit_sup(rng), b = oracle::random_unit_sup(rng), d = oracle::random_unit_sup(rng);
    const double fd = f(d);
    CHECK(std::abs(f.trilinear().apply(d, d, d) - fd) < 1e-12 * (1 + std::abs(fd)));
    CHECK(std::abs(f.gradient(d).dot(d) - 3 * fd) < 1e-12 * (1 + std::abs(fd)));
    CHECK(f(2.5 * d) == doctest::Approx(15.625 * fd).epsilon(1e-12));
    CHECK(f.trilinear().apply(a, b, d) == doctest::Approx(oracle::polarize(fn, a, b, d)).epsilon(1e-9));
  }
  // full index symmetry
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        CHECK(f.trilinear()(i, j, k) == f.trilinear()(j, i, k));
        CHECK(f.trilinear()(i, j, k) == f.trilinear()(k, j, i));
      }
}

TEST_CASE("polar quadrics and second polars")
{
  const auto fm2 = hesse_cubic(-2);
  const Mat3 g = polar_quadric(fm2, {1.0 / 3, 1.0 / 3, 1}).matrix();
  Mat3 expected = Mat3::Zero();
  expected(2, 2) = -1.0 / 3;
  CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-12);

  const double k = -3;
  const auto fm3 = hesse_cubic(k);
  const Mat3 g3 = polar_quadric(fm3, {1 / (1 - k), 1 / (1 - k), 1}).matrix();
  CHECK(g3(0, 0) == doctest::Approx(0).epsilon(1e-12));
  CHECK(g3(1, 1) == doctest::Approx(0).epsilon(1e-12));
  // T(A,D,D) normalization (pinned by G = -z^2/3 above) gives (k+2)xy
  CHECK(2 * g3(0, 1) == doctest::Approx(k + 2).epsilon(1e-12));

  const auto f5 = hesse_cubic(5);
  const RayVector a(0.3, -0.7, 0.2);
  CHECK(((-polar_quadric(f5, a)).matrix() - polar_quadric(f5, -a).matrix()).norm() < 1e-15);

  const Vec3 l1 = second_polar(f5, {0, 1, 0}).covector();
  CHECK(l1.cross(Vec3(1 - 5.0, 0, -1)).norm() < 1e-12);
  const Vec3 l2 = second_polar(f5, {1, 0, 0}).covector();
  // line y = -1/4 affinely
  CHECK(l2[0] == 0.0);
  CHECK(l2[2] / l2[1] == doctest::Approx(0.25));
}

TEST_CASE("Hessian closed form and the k' identity")
{
  for (double k : {2.0, 5.0, -3.0}) {
    const auto h = hessian_cubic(diagonal_hesse_cubic(k));
    TernaryCubic::Coeffs expect{};
    expect[0] = expect[6] = expect[9] = 27 * 2 * k * k;
    expect[4] = -27 * (8 - 2 * k * k * k);
    for (int i = 0; i < 10; ++i)
      CHECK(std::abs(h.coeffs()[i] - expect[i]) < 1e-10);
  }

  std::mt19937_64 rng(3);
  for (double k : {-5.0, -3.0, -2.0, -0.5, 0.5, 2.0, 5.0, 10.0}) {
    const auto h = hessian_cubic(hesse_cubic(k));
    const auto fk = hesse_cubic(hessian_parameter(k), {}, true);
    for (int i = 0; i < 100; ++i) {
      const Vec3 d = oracle::random_unit_sup(rng);
      const double hd = h(d);
      CHECK(std::abs(hd + 54 * k * k * fk(d)) / (1 + std::abs(hd)) < 1e-9);
      const double det = oracle::hessian_matrix([&](const Vec3& v) { return oracle::hesse(k, v); }, d).determinant();
      CHECK(hd == doctest::Approx(det).epsilon(1e-6).scale(1 + std::abs(k * k * k)));
    }
    CHECK(h(Vec3(0, 0, 1)) == doctest::Approx(54 * k * k));
  }
}

TEST_CASE("hessian parameter and siblings")
{
  CHECK(hessian_parameter(5) == doctest::Approx(-121.0 / 75));
  CHECK(hessian_parameter(-2) == 1.0);
  CHECK(hessian_parameter(2) == doctest::Approx(-1.0 / 3));
  CHECK_THROWS_AS(hessian_parameter(0), DegenerateParameter);

  const auto s1 = siblings(1.0, true);
  CHECK(std::abs(s1[0] + 2) < 1e-12);
  CHECK(std::abs(s1[1] + 2) < 1e-12);
  CHECK(std::abs(s1[2] - 1) < 1e-12);
  CHECK_THROWS_AS(siblings(1.0), DomainError);
  CHECK_THROWS_AS(siblings(0.5, true), DomainError);

  const auto s5 = siblings(5);
  CHECK(s5[0] + s5[1] + s5[2] == doctest::Approx(-15));
  CHECK(std::abs(s5[0] + 14.984) < 3e-3);
  CHECK(std::abs(s5[1] + 0.524) < 3e-3);
  CHECK(std::abs(s5[2] - 0.508) < 3e-3);
  CHECK(s5[0] * s5[1] * s5[2] == doctest::Approx(4));
  for (double kp : {1.5, 2.0, 5.0, 20.0}) {
    const auto s = siblings(kp);
    CHECK(s[0] < -2);
    CHECK(s[1] > -2);
    CHECK(s[1] < 0);
    CHECK(s[2] > 0);
    CHECK(s[2] < 1);
    for (double k : s)
      CHECK(std::abs(hessian_parameter(k) - kp) < 1e-9);
  }
}

TEST_CASE("signatures and conic singular points")
{
  for (double k : {-3.0, 0.5, 2.0, 5.0})
    CHECK(signature(polar_quadric(hesse_cubic(k), {0, 0, 1})) == Signature{1, 2, 0});
  CHECK(signature(polar_quadric(hesse_cubic(-2), {1.0 / 3, 1.0 / 3, 1})) == Signature{0, 1, 2});

  const auto f5 = hesse_cubic(5);
  const auto g = polar_quadric(f5, {1, -1, 0});
  CHECK(signature(g) == Signature{1, 1, 1});
  CHECK(signature(-g) == Signature{1, 1, 1});
  const RayVector r = conic_singular_point(g);
  CHECK(r.x() == doctest::Approx(5.0 / 8));
  CHECK(r.y() == doctest::Approx(5.0 / 8));
  CHECK(r.z() == 1.0);

  Mat3 rank1 = Mat3::Zero();
  rank1(2, 2) = 1;
  CHECK_THROWS_AS(conic_singular_point(QuadraticForm3(rank1)), RankError);
  CHECK_THROWS_AS(conic_singular_point(polar_quadric(f5, {0, 0, 1})), RankError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto q = polar_quadric(f5, RayVector(oracle::random_unit_sup(rng)));
    const auto s = signature(q), t = signature(-q);
    CHECK(s.p == t.n);
    CHECK(s.n == t.p);
    CHECK(s.z == t.z);
    CHECK(s.p + s.n + s.z == 3);
  }
}
