#pragma once

#include "cubiclab/cone_atlas.hpp"

#include <map>

namespace cubiclab {

/// Where a ray sits on the boundary of a component.
struct BoundaryLocation
{
  std::size_t piece = 0;  // index into comp.boundary
  bool corner = false;
  double distance = 0.0;  // to the sampled boundary polyline
};

std::optional<BoundaryLocation> locate_on_boundary(const ConeComponent& comp, const RayVector& d,
                                                   const Tolerances& tol = {});

/// True when no point of the segment from a to d0 (d0 excluded) is interior
/// to comp. Uniform samples plus a geometric cluster towards d0.
bool segment_avoids_interior(const ConeComponent& comp, const Vec3& a, const Vec3& d0);

struct VisibilityReport
{
  bool visible = false;
  /// D0 was on the boundary of -comp; the test then ran for (-A, -D0) on comp.
  bool negated = false;
  bool smooth = false;
  /// Tangent-plane verdict at smooth points, unset when A is (nearly) in the
  /// tangent plane or D0 is a corner.
  std::optional<bool> tangent_visible;
  /// Cosine between A and the outward normal at D0.
  double tangent_cos = 0.0;
};

/// D0 may lie on the boundary of comp or of -comp. In the second case the
/// question is asked about -comp, which is how points of an arc of the
/// Hessian are seen from an affine point.
VisibilityReport visibility_report(const ConeComponent& comp, const RayVector& a, const RayVector& d0,
                                   const Tolerances& tol = {});
bool visible(const ConeComponent& comp, const RayVector& a, const RayVector& d0, const Tolerances& tol = {});

/// Tangent-plane test alone at a smooth boundary point of comp (or of -comp).
std::optional<bool> tangent_visible(const ConeComponent& comp, const RayVector& a, const RayVector& d0,
                                    const Tolerances& tol = {});

struct ExtremityPoint
{
  RayVector ray;
  std::size_t piece = 0;
  bool corner = false;
};

/// Boundary rays of comp visible from both A and -A.
std::vector<ExtremityPoint> visible_extremity(const ConeComponent& comp, const RayVector& a,
                                              const Tolerances& tol = {});

/// A zero of a function along a sampled arc; position is in sample-index units.
struct ArcZero
{
  double position = 0.0;
  int multiplicity = 1;
};

/// Zeros of q along the curve c through the unit samples pts, counting sign
/// changes, sample zeros and dips of |q| refined along the curve.
std::vector<ArcZero> arc_zeros(const TernaryCubic& c, const QuadraticForm3& q, const std::vector<Vec3>& pts);

struct ZeroCountReport
{
  double k = 0.0;
  RayVector a;
  /// Keys for k > 1: C1 (closed), B1R, R, RB2 (open arcs of C2 and R itself).
  /// Otherwise one key per traced branch of the B1B2 boundary (C1 with C2 or C3).
  std::map<std::string, int> sampled;
  std::optional<std::map<std::string, int>> analytic;
  std::string region;
  bool line_pair = false;
  std::optional<RayVector> singular_point;
  bool agree = true;
  int total = 0;
  std::vector<std::string> notes;
};

ZeroCountReport ga_zero_count(double k, const RayVector& a, const Tolerances& tol = {});

/// The analytic table alone (k > 1, A affine).
std::map<std::string, int> ga_zero_table(double k, const RayVector& a, std::string* region = nullptr,
                                         const Tolerances& tol = {});

/// Labels of the zero-count table (k > 1) in a fixed order: the open regions,
/// then the rows on the line a+b=s and on the Hessian arcs Q1B3 and B3Q2.
std::vector<std::string> zero_table_rows();

/// n random affine points of one table row: rejection sampling from a box
/// for open regions, points of the line a+b=s, or samples of the traced arc.
std::vector<RayVector> sample_zero_table_row(double k, const std::string& row, std::size_t n, SplitMix64& rng,
                                             const Tolerances& tol = {});

struct Prop23Component
{
  std::pair<RayVector, RayVector> span;     // first and last sample of C2 in the component
  std::pair<RayVector, RayVector> witness;  // sub-arc with the required verdict
  bool found = false;
  bool witness_visible = false;             // segment test at the witness midpoint
};

struct Prop23Result
{
  double h_value = 0.0;  // H at the sup-normalized A
  int sign_class = 1;    // +1: components of {G_A > 0}, -1: of {G_A < 0}
  bool mirrored = false;
  std::vector<Prop23Component> components;
  bool consistent = false;
};

Prop23Result prop23_classify(double k, const RayVector& a, const Tolerances& tol = {});

} // namespace cubiclab
