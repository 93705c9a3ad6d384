#pragma once

#include <variant>
#include <vector>

#include "crv/expr.hpp"

namespace crv {

// Tolerance for endpoint matching of path segments and closedness flags.
inline constexpr double kJoinTol = 1e-12;

struct LineSeg {
  Complex from, to;
};

/// Circular arc, oriented from angle0 to angle1 (radians, either direction).
struct ArcSeg {
  Complex center;
  double radius;
  double angle0, angle1;
};

/// Curve (x(t), y(t)) with x, y expressions in the single parameter t.
/// t0 > t1 is allowed and traverses the curve backwards.
struct CurveSeg {
  Expr x, y;
  double t0, t1;
};

using Segment = std::variant<LineSeg, ArcSeg, CurveSeg>;

Complex segment_start(const Segment& s);
Complex segment_end(const Segment& s);

/// Piecewise-smooth oriented curve. The global parameter runs over [0,1],
/// each segment taking an equal share. Immutable once built; consecutive
/// segments must join within kJoinTol.
class Path {
 public:
  explicit Path(std::vector<Segment> segments);

  Complex point_at(double t) const;

  /// Derivative of point_at with respect to the global parameter. At a
  /// segment boundary the right-hand segment's tangent is returned.
  Complex tangent_at(double t) const;

  bool closed() const { return closed_; }
  Complex start() const;
  Complex end() const;
  std::size_t segment_count() const { return segments_.size(); }
  const Segment& segment(std::size_t i) const { return segments_[i]; }
  const std::vector<Segment>& segments() const { return segments_; }

  Path reversed() const;

  /// Minimum distance from a to the path (exact for lines and arcs,
  /// sampled for expression curves).
  double distance_to(Complex a) const;

  static Path line(Complex a, Complex b);
  static Path polyline(const std::vector<Complex>& points);
  static Path circle(Complex center, double radius, int turns = 1);
  static Path arc(Complex center, double radius, double angle0, double angle1);

 private:
  std::vector<Segment> segments_;
  bool closed_;
};

/// Joins two paths end-to-start.
Path concat(const Path& a, const Path& b);

/// Linear-blend family gamma(t) + eps * (target(t) - gamma(t)) with the
/// endpoints of the two paths pinned together.
class Homotopy {
 public:
  Homotopy(Path base, Path target);

  Complex at(double t, double eps) const;
  Complex deviation_at(double t) const;           // W(t) = target(t) - base(t)
  Complex deviation_tangent_at(double t) const;   // W'(t)

  const Path& base() const { return base_; }
  const Path& target() const { return target_; }

  /// Global parameter values where either path switches segment; quadrature
  /// splits at these points.
  std::vector<double> breakpoints() const;

 private:
  Path base_, target_;
};

struct RectRegion {
  double x0, x1, y0, y1;
};

struct DiskRegion {
  Complex center;
  double radius;
};

/// Simple polygon, vertices counterclockwise.
struct PolygonRegion {
  std::vector<Complex> vertices;
};

/// Region a <= y <= b, x_left(y) <= x <= x_right(y); the boundary graphs are
/// expressions in the single variable y.
struct XConvexRegion {
  double y0, y1;
  Expr x_left, x_right;
};

using Region2D = std::variant<RectRegion, DiskRegion, PolygonRegion, XConvexRegion>;

void validate_region(const Region2D& r);

/// Closed counterclockwise boundary; the region stays on the left.
Path boundary_of(const Region2D& r);

bool region_contains(const Region2D& r, Complex p);

/// Axis-aligned bounding box helpers for grid sampling.
RectRegion bounding_box(const Region2D& r);

struct BoxSolid {
  double x0, x1, y0, y1, z0, z1;
};

using BaseRegion = std::variant<RectRegion, DiskRegion>;

/// Solid bounded below and above by graphs z_bottom <= z_top over a planar
/// base, with vertical side walls.
struct GraphSolid {
  BaseRegion base;
  Expr z_top, z_bottom;  // planar expressions of (x, y)
};

using Solid3D = std::variant<BoxSolid, GraphSolid>;

void validate_solid(const Solid3D& s);

/// Short human-readable labels for report echoes.
std::string describe(const Region2D& r);
std::string describe(const Solid3D& s);

/// Axis-aligned planar face of a box. axis: 0 = x, 1 = y, 2 = z; the face
/// lies at coordinate `level` on that axis, spanning [u0,u1]x[v0,v1] in the
/// remaining two axes (cyclic order); outward normal = sign * e_axis.
struct PlanarFace {
  int axis;
  double level;
  double u0, u1, v0, v1;
  int sign;
};

/// Graph face z = height(x, y) over a base region. orientation +1 means the
/// outward normal has positive z-component (-h_x, -h_y, 1)/norm, -1 the
/// reflected normal.
struct GraphFace {
  BaseRegion base;
  Expr height;
  int orientation;
};

/// Vertical wall over one counterclockwise boundary piece of the base; the
/// outward normal is the right-hand normal of the curve. z runs between the
/// two graphs evaluated along the curve.
struct WallFace {
  std::variant<LineSeg, ArcSeg> curve;
  Expr z_bottom, z_top;
};

using Face = std::variant<PlanarFace, GraphFace, WallFace>;

/// Oriented faces with outward normals covering the boundary of the solid.
/// Degenerate walls (graphs meeting on the base boundary) are omitted.
std::vector<Face> faces_of(const Solid3D& s);

}  // namespace crv
