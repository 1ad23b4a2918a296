#pragma once

#include "cubiclab/curve_geometry.hpp"
#include "cubiclab/rng.hpp"

namespace cubiclab {

/// Chord-tangent group law on F_k = 0 or H_k = 0 with an inflexion as zero.
struct GroupLawContext
{
  double k = 0.0;
  CurveKind kind = CurveKind::H;
  TernaryCubic curve;
  RayVector zero{1, -1, 0};
};

/// zero must be one of the inflexions B1, B2, B3 (default B3).
GroupLawContext make_group_context(double k, CurveKind kind = CurveKind::H, const RayVector& zero = {1, -1, 0},
                                   const Tolerances& tol = {});

/// |C(D)| / scale(C) at the sup-normalized representative.
double relative_residual(const TernaryCubic& c, const RayVector& d);

/// Singular point of the polar conic of F_k at a Hessian point U.
RayVector steinian_map(double k, const RayVector& u, const Tolerances& tol = {});

/// Residual intersection of the line PQ with c (P, Q on c). Coincident P, Q
/// use the tangent line at P.
RayVector third_point(const TernaryCubic& c, const RayVector& p, const RayVector& q);

RayVector group_add(const GroupLawContext& ctx, const RayVector& p1, const RayVector& p2, const Tolerances& tol = {});

/// Real points T != zero whose tangent passes through zero.
std::vector<RayVector> two_torsion(const GroupLawContext& ctx, const Tolerances& tol = {});

/// e_i = k_i / (k_i - 1) over the siblings of k', ascending.
std::array<double, 3> e_levels(double k_prime);

struct TangencyResidual
{
  double on_line = 0.0;   // |l(alpha(U))| with l and alpha(U) unit
  double tangency = 0.0;  // sine of the angle between l and grad H at alpha(U)
};

TangencyResidual verify_steinian_tangency(double k, const RayVector& u, const Tolerances& tol = {});

/// For k > 1: alpha(U) = U + T for n random Hessian samples, T the real
/// 2-torsion point with zero B3.
bool translation_check(double k, std::size_t n_samples, SplitMix64& rng, const Tolerances& tol = {});

/// Random points of the Hessian taken from its traced branches.
std::vector<RayVector> hessian_samples(double k, std::size_t n, SplitMix64& rng, const Tolerances& tol = {});

} // namespace cubiclab
