#pragma once

#include "cubiclab/curve_geometry.hpp"
#include "cubiclab/rng.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>

namespace cubiclab {

enum class ComponentKind { BOUNDED_POSITIVE, HYBRID, NEG_BOUNDED_HESSIAN, KM2_SPECIAL };

std::string to_string(ComponentKind k);

/// A boundary arc of a component. sign = +1 when the component's boundary
/// rays are the arc's samples themselves, -1 when they are their negatives.
struct BoundaryPiece
{
  Arc arc;
  int sign = 1;
};

using Vec2 = Eigen::Vector2d;

/// Central projection of a pointed cone onto the plane axis . D = 1.
struct Chart
{
  Vec3 axis = Vec3::UnitZ();
  Vec3 u1 = Vec3::UnitX();
  Vec3 u2 = Vec3::UnitY();

  /// Requires axis . d > 0.
  Vec2 project(const Vec3& d) const;
  Vec3 lift(const Vec2& p) const { return axis + p.x() * u1 + p.y() * u2; }
};

class ConeComponent
{
public:
  ComponentKind kind = ComponentKind::HYBRID;
  std::string id;
  double k = 0.0;
  std::vector<BoundaryPiece> boundary;  // consecutive pieces form a closed loop
  std::vector<RayVector> corners;
  RayVector witness;

  /// Build the chart and boundary polygon; call once the fields above are set.
  void finalize();

  /// Boundary rays in loop order (unit length, orientation included).
  const std::vector<Vec3>& boundary_loop() const { return loop_; }
  const Chart& chart() const { return chart_; }
  const std::vector<Vec2>& polygon() const { return polygon_; }
  /// Bounding box of the polygon: (xmin, xmax, ymin, ymax).
  const std::array<double, 4>& bbox() const { return bbox_; }

  /// Inside the inscribed boundary polygon (strictly in front of the chart).
  bool in_polygon(const Vec3& d) const;
  /// Positive-index ray lying in this component.
  bool contains(const RayVector& d, const Tolerances& tol = {}) const;

  /// Uniform samples of the interior in chart coordinates.
  std::vector<RayVector> interior_samples(std::size_t n, SplitMix64& rng, const Tolerances& tol = {}) const;

private:
  TernaryCubic f_;
  std::vector<Vec3> loop_;
  Chart chart_;
  std::vector<Vec2> polygon_;
  std::array<double, 4> bbox_{};
};

/// F(D) > 0 and the polar quadric at D has signature (1, 2, 0).
bool positive_index_membership(const TernaryCubic& f, const RayVector& d, const Tolerances& tol = {});
bool positive_index_membership(double k, const RayVector& d, const Tolerances& tol = {});

/// Components of the positive index cone. Candidates from the sign
/// classification whose witness fails the index test are dropped, with a note
/// appended to `warnings`.
std::vector<ConeComponent> enumerate_components(double k, const Tolerances& tol = {}, const TraceOptions& opts = {},
                                                std::vector<std::string>* warnings = nullptr);

/// Index into `components` of the component containing d, if any.
std::optional<std::size_t> component_of(const std::vector<ConeComponent>& components, const RayVector& d,
                                        const Tolerances& tol = {});
std::optional<std::string> component_of(double k, const RayVector& d, const Tolerances& tol = {});

/// Anything with interior samples and a membership test, for convexity checks.
struct SampledRegion
{
  std::vector<RayVector> interior_samples;
  std::function<bool(const RayVector&)> contains;
};

/// One connected component of {D in comp : T(E, D, D) > 0}.
struct QRegion
{
  RayVector witness;
  std::vector<RayVector> interior_samples;
  std::vector<RayVector> parent_boundary;  // boundary rays of comp with G_E >= 0
  std::vector<RayVector> conic_boundary;   // points of G_E = 0 inside comp
  std::vector<std::pair<int, int>> cells;  // grid cells (column, row) of the chart
};

struct SubconeQ
{
  std::shared_ptr<const ConeComponent> parent;
  RayVector e_class;
  QuadraticForm3 g_e;
  std::vector<QRegion> regions;
  // Grid geometry in chart coordinates.
  Vec2 grid_origin = Vec2::Zero();
  double grid_step = 0.0;
  int grid_size = 0;

  /// True when d is in comp, G_E(d) > 0 and d is joined to the region's
  /// witness inside {G_E > 0}.
  bool region_contains(std::size_t i, const RayVector& d, const Tolerances& tol = {}) const;
  /// Index of the region containing d, if any.
  std::optional<std::size_t> region_of(const RayVector& d, const Tolerances& tol = {}) const;

  SampledRegion region(std::size_t i, const Tolerances& tol = {}) const;
  /// Union of all regions (fails the convexity test when there are two).
  SampledRegion all_regions(const Tolerances& tol = {}) const;
};

SubconeQ q_subcone(double k, const ConeComponent& comp, const RayVector& e, int grid = 200,
                   const Tolerances& tol = {});

SampledRegion component_region(const ConeComponent& comp, std::size_t n, SplitMix64& rng,
                               const Tolerances& tol = {});

/// Midpoint test on n random pairs of interior samples.
bool convexity_check(const SampledRegion& region, std::size_t n_samples, SplitMix64& rng);

} // namespace cubiclab
