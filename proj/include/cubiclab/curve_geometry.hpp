#pragma once

#include "cubiclab/forms.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cubiclab {

enum class CurveKind { F, H };

std::string to_string(CurveKind c);

/// Which special regime of the Hesse family a parameter falls into.
enum class Regime { TWO_F_COMPONENTS, ONE_F_COMPONENT, FERMAT, KM2 };

Regime regime_of(double k, const Tolerances& tol = {});

enum class HessianShape { SMOOTH, LINE_TRIPLE, LINE_PLUS_POINT };

struct CurveTopology
{
  double k = 0.0;
  int f_components = 0;
  /// Number of real components when shape is SMOOTH, 0 otherwise.
  int h_components = 0;
  HessianShape h_shape = HessianShape::SMOOTH;
  std::array<RayVector, 3> inflexions;
  std::array<LinearForm3, 3> asymptotes;
};

/// A sampled branch of F = 0 or H = 0.
///
/// Samples are affine (z = 1) rays ordered along the branch. For unbounded
/// branches the endpoints are the oriented inflexion rays on z = 0 that the
/// branch runs into; for sub-arcs they may be affine points (which are then
/// also the first/last samples). Closed ovals have closed = true.
struct Arc
{
  CurveKind curve = CurveKind::F;
  std::string branch_id;
  std::vector<RayVector> samples;
  std::pair<RayVector, RayVector> endpoints;
  bool closed = false;
};

struct TraceOptions
{
  double max_step = 0.01;   // radians on the unit sphere
  double min_step = 1e-9;
  double cutoff = 1e3;      // stop once (|x|+|y|)/z exceeds this
  int max_samples = 100000;
};

CurveTopology curve_topology(double k, const Tolerances& tol = {});
std::array<RayVector, 3> inflexion_points(double k, const Tolerances& tol = {});
std::array<LinearForm3, 3> asymptotes(double k, const Tolerances& tol = {});

/// The curve F_k (CurveKind::F) or its Hessian (CurveKind::H).
TernaryCubic curve_form(double k, CurveKind curve, const Tolerances& tol = {});

/// Branch labels valid for k:
///   F: C1 (the B1B2 branch), F_B1B3, F_B2B3, and BOUNDED when k > 1.
///   H: C2 (the B1B2 branch), H_B1B3, H_B2B3, H_BOUNDED when k < 1 (the
///      triangle when k = 0); for k > 1 also the sub-arcs B1R, RB2 of C2 and
///      Q1B3, B3Q2; for k = -2 only C3 (the segment at infinity from B1 to B2)
///      and its images H_B1B3, H_B2B3.
std::vector<std::string> branch_ids(double k, CurveKind curve, const Tolerances& tol = {});

Arc trace_branch(double k, CurveKind curve, const std::string& branch_id, const Tolerances& tol = {},
                 const TraceOptions& opts = {});

/// Every branch of the curve (one arc per connected affine branch or oval).
std::vector<Arc> all_branches(double k, CurveKind curve, const Tolerances& tol = {}, const TraceOptions& opts = {});

/// Trace the branch of c through the point nearest `seed`. Unbounded branches
/// are followed to the cutoff in both directions and snapped to the nearest
/// ray among `ends`; bounded ones are closed up.
Arc trace_through(const TernaryCubic& c, const RayVector& seed, const std::vector<RayVector>& ends,
                  const TraceOptions& opts = {});

struct LineIntersection
{
  RayVector point;
  int multiplicity = 1;
};

/// Real points of C on the line through p1 and p2 (sign-canonical rays).
std::vector<LineIntersection> line_cubic_intersections(const TernaryCubic& c, const RayVector& p1,
                                                       const RayVector& p2);

/// Linear symmetries of every F_k (and hence of H_k): x <-> y, y <-> z-x-y,
/// x <-> z-x-y. S_yw maps the B1B2 branches to the B1B3 ones and S_xw maps
/// them to the B2B3 ones.
Mat3 swap_xy();
Mat3 swap_yw();
Mat3 swap_xw();

/// Apply a linear map to an arc, keeping samples affine.
Arc transform_arc(const Arc& arc, const Mat3& m, const std::string& new_id);
Arc reversed(Arc arc);

/// Split an open arc at the sample nearest `point` (which is inserted exactly).
std::pair<Arc, Arc> split_arc(const Arc& arc, const RayVector& point);

/// Move w onto {c = 0} along the gradient projected to the unit sphere.
Vec3 project_to_curve(const TernaryCubic& c, Vec3 w);

/// Largest |form| over the sup-normalized samples.
double max_residual(const Arc& arc, const TernaryCubic& form);

} // namespace cubiclab
