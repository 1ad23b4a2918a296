#pragma once

#include "cubiclab/visibility.hpp"

#include <functional>
#include <optional>

namespace cubiclab {

enum class LambdaMethod { NEGATIVE_FORM, CUBIC_ROOTS };

std::string to_string(LambdaMethod m);

struct LambdaBoundResult
{
  double lambda0 = 0.0;
  LambdaMethod method = LambdaMethod::NEGATIVE_FORM;
  /// NEGATIVE_FORM: sampled rays of the closure of Q. Empty for CUBIC_ROOTS.
  std::vector<RayVector> certificates;
  /// CUBIC_ROOTS: the positive roots of t -> (D - tE)^3.
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double k = 0.0;
  RayVector d, e;
};

/// Upper bound on lambda for D - lambda E to stay movable, from the data
/// (F, E, D). D must lie in a region of q_subcone(k, comp, E).
LambdaBoundResult lambda_bound(double k, const ConeComponent& comp, const RayVector& e, const RayVector& d,
                               const Tolerances& tol = {});

/// Re-verify a bound at some lambda > lambda0: (D - lambda E)^2 . L < 0 on
/// every certificate ray, or (D - lambda E)^3 > 0 past lambda2.
bool lambda_certificate_holds(const LambdaBoundResult& r, double lambda, const Tolerances& tol = {});

/// The D in the closure of comp (BOUNDED_POSITIVE) with T(D, D, .) = l.
RayVector pole_solve(double k, const ConeComponent& comp, const LinearForm3& l, const Tolerances& tol = {});

/// Covector D -> T(D, D, .) of F_k.
LinearForm3 double_polar(double k, const RayVector& d, const Tolerances& tol = {});

struct Fact
{
  std::string name;
  bool holds = false;
  std::string detail;
};

struct FermatCase
{
  int case_id = 0;
  /// The case matched with x and y exchanged.
  bool mirrored = false;
  /// More than one case matched; case_id is the lowest.
  bool tie = false;
  std::vector<int> matching;
  double h_value = 0.0;
  std::vector<Fact> facts;
  bool facts_hold = true;
};

/// Case of the k = 0 table for an affine A. Points of P and of the closed
/// negative quadrant (A in -P, apart from the origin) are rejected with
/// DomainError: E is then in P or -P.
FermatCase fermat_classify(const RayVector& a, const Tolerances& tol = {});

struct Km2Values
{
  double t = 0.0;
  std::optional<double> s;  // undefined at mu = 1/2
};

Km2Values km2_functions(double mu);

struct Km2Report
{
  double mu = 0.0;
  RayVector e;
  std::vector<Fact> facts;
  bool all_hold = true;
};

/// Facts about E = (-1, mu, 0) at k = -2, checked on `samples` rays of the
/// closure of the component. Throws HypothesisFailed naming the failing fact.
Km2Report km2_fact_check(double mu, std::size_t samples, const Tolerances& tol = {});

struct RegionSpec
{
  enum class Kind { ANY, COMPONENT, HESSIAN_BOUNDED_HALF_CONE, RAY };
  Kind kind = Kind::ANY;
  std::string component_id;  // COMPONENT
  Vec3 direction = Vec3::Zero();  // RAY
};

/// Integer vectors E with sup-norm <= bound, F(E) in the closed range and E
/// in the region, in lexicographic order.
std::vector<RayVector> enumerate_integral(double k, const RegionSpec& region, int sup_norm_bound,
                                          std::pair<double, double> cubic_range, const Tolerances& tol = {});

/// Region membership used by enumerate_integral.
std::function<bool(const Vec3&)> region_predicate(double k, const RegionSpec& region, const Tolerances& tol = {});

} // namespace cubiclab
