#include "crv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace crv {

namespace {

constexpr double kPi = std::numbers::pi;

Mode t_mode() { return Mode::param(VarId::T); }

double curve_param(const CurveSeg& c, double s) { return c.t0 + (c.t1 - c.t0) * s; }

Complex curve_point(const CurveSeg& c, double s) {
  EvalEnv env = EvalEnv::param(VarId::T, curve_param(c, s));
  return Complex(eval(c.x, env).real(), eval(c.y, env).real());
}

}  // namespace

Complex segment_start(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Complex {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) return seg.from;
        else if constexpr (std::is_same_v<T, ArcSeg>)
          return seg.center + seg.radius * std::polar(1.0, seg.angle0);
        else return curve_point(seg, 0.0);
      },
      s);
}

Complex segment_end(const Segment& s) {
  return std::visit(
      [](const auto& seg) -> Complex {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) return seg.to;
        else if constexpr (std::is_same_v<T, ArcSeg>)
          return seg.center + seg.radius * std::polar(1.0, seg.angle1);
        else return curve_point(seg, 1.0);
      },
      s);
}

Path::Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty())
    throw Error(ErrKind::InvalidArgument, "path needs at least one segment");
  for (const auto& s : segments_) {
    if (const auto* arc = std::get_if<ArcSeg>(&s)) {
      if (!(arc->radius > 0))
        throw Error(ErrKind::InvalidArgument, "arc radius must be positive");
    }
    if (const auto* cur = std::get_if<CurveSeg>(&s)) {
      if (!(cur->x.mode() == t_mode()) || !(cur->y.mode() == t_mode()))
        throw Error(ErrKind::InvalidArgument,
                    "curve segment expressions must be in the parameter t");
      if (cur->t0 == cur->t1)
        throw Error(ErrKind::InvalidArgument, "degenerate curve parameter range");
    }
  }
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    if (std::abs(segment_end(segments_[k]) - segment_start(segments_[k + 1])) > kJoinTol)
      throw Error(ErrKind::InvalidArgument,
                  "path segments " + std::to_string(k) + " and " +
                      std::to_string(k + 1) + " do not join");
  }
  closed_ = std::abs(end() - start()) <= kJoinTol;
}

Complex Path::start() const { return segment_start(segments_.front()); }
Complex Path::end() const { return segment_end(segments_.back()); }

Complex Path::point_at(double t) const {
  if (t < 0.0 || t > 1.0)
    throw Error(ErrKind::InvalidArgument,
                "path parameter " + std::to_string(t) + " outside [0,1]");
  const double m = static_cast<double>(segments_.size());
  std::size_t k = std::min(static_cast<std::size_t>(t * m), segments_.size() - 1);
  double local = t * m - static_cast<double>(k);
  const Segment& s = segments_[k];
  return std::visit(
      [&](const auto& seg) -> Complex {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>)
          return seg.from + local * (seg.to - seg.from);
        else if constexpr (std::is_same_v<T, ArcSeg>)
          return seg.center +
                 seg.radius *
                     std::polar(1.0, seg.angle0 + local * (seg.angle1 - seg.angle0));
        else return curve_point(seg, local);
      },
      s);
}

Complex Path::tangent_at(double t) const {
  if (t < 0.0 || t > 1.0)
    throw Error(ErrKind::InvalidArgument,
                "path parameter " + std::to_string(t) + " outside [0,1]");
  const double m = static_cast<double>(segments_.size());
  std::size_t k = std::min(static_cast<std::size_t>(t * m), segments_.size() - 1);
  double local = t * m - static_cast<double>(k);
  const Segment& s = segments_[k];
  return std::visit(
      [&](const auto& seg) -> Complex {
        using T = std::decay_t<decltype(seg)>;
        if constexpr (std::is_same_v<T, LineSeg>) {
          return (seg.to - seg.from) * m;
        } else if constexpr (std::is_same_v<T, ArcSeg>) {
          double sweep = seg.angle1 - seg.angle0;
          Complex pos = std::polar(1.0, seg.angle0 + local * sweep);
          return Complex(0, 1) * seg.radius * sweep * pos * m;
        } else {
          double u = curve_param(seg, local);
          EvalEnv env = EvalEnv::param(VarId::T, u);
          double dx = eval(symbolic_diff(seg.x, VarId::T), env).real();
          double dy = eval(symbolic_diff(seg.y, VarId::T), env).real();
          return Complex(dx, dy) * (seg.t1 - seg.t0) * m;
        }
      },
      s);
}

Path Path::reversed() const {
  std::vector<Segment> out;
  out.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    out.push_back(std::visit(
        [](const auto& seg) -> Segment {
          using T = std::decay_t<decltype(seg)>;
          if constexpr (std::is_same_v<T, LineSeg>) return LineSeg{seg.to, seg.from};
          else if constexpr (std::is_same_v<T, ArcSeg>)
            return ArcSeg{seg.center, seg.radius, seg.angle1, seg.angle0};
          else return CurveSeg{seg.x, seg.y, seg.t1, seg.t0};
        },
        *it));
  }
  return Path(std::move(out));
}

double Path::distance_to(Complex a) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_) {
    double d = std::visit(
        [&](const auto& seg) -> double {
          using T = std::decay_t<decltype(seg)>;
          if constexpr (std::is_same_v<T, LineSeg>) {
            Complex d0 = seg.to - seg.from;
            double len2 = std::norm(d0);
            double u = len2 > 0 ? std::clamp(
                                      ((a - seg.from) * std::conj(d0)).real() / len2,
                                      0.0, 1.0)
                                : 0.0;
            return std::abs(a - (seg.from + u * d0));
          } else if constexpr (std::is_same_v<T, ArcSeg>) {
            double lo = std::min(seg.angle0, seg.angle1);
            double hi = std::max(seg.angle0, seg.angle1);
            Complex rel = a - seg.center;
            double r = std::abs(rel);
            double th = std::atan2(rel.imag(), rel.real());
            // candidate angles congruent to th inside [lo, hi]
            double d = std::numeric_limits<double>::infinity();
            double k0 = std::ceil((lo - th) / (2 * kPi));
            double k1 = std::floor((hi - th) / (2 * kPi));
            if (k0 <= k1) {
              d = std::abs(r - seg.radius);
            } else {
              for (double ang : {lo, hi}) {
                Complex p = seg.center + seg.radius * std::polar(1.0, ang);
                d = std::min(d, std::abs(a - p));
              }
            }
            return d;
          } else {
            double d = std::numeric_limits<double>::infinity();
            const int n = 512;
            for (int i = 0; i <= n; ++i)
              d = std::min(d, std::abs(a - curve_point(seg, double(i) / n)));
            return d;
          }
        },
        s);
    best = std::min(best, d);
  }
  return best;
}

Path Path::line(Complex a, Complex b) { return Path({LineSeg{a, b}}); }

Path Path::polyline(const std::vector<Complex>& points) {
  if (points.size() < 2)
    throw Error(ErrKind::InvalidArgument, "polyline needs at least two points");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    segs.push_back(LineSeg{points[i], points[i + 1]});
  return Path(std::move(segs));
}

Path Path::circle(Complex center, double radius, int turns) {
  if (turns == 0) throw Error(ErrKind::InvalidArgument, "circle needs turns != 0");
  std::vector<Segment> segs;
  double step = 2 * kPi * (turns > 0 ? 1.0 : -1.0);
  for (int k = 0; k < std::abs(turns); ++k)
    segs.push_back(ArcSeg{center, radius, k * step, (k + 1) * step});
  return Path(std::move(segs));
}

Path Path::arc(Complex center, double radius, double angle0, double angle1) {
  return Path({ArcSeg{center, radius, angle0, angle1}});
}

Path concat(const Path& a, const Path& b) {
  if (std::abs(a.end() - b.start()) > kJoinTol)
    throw Error(ErrKind::InvalidArgument, "paths do not join end-to-start");
  std::vector<Segment> segs = a.segments();
  segs.insert(segs.end(), b.segments().begin(), b.segments().end());
  return Path(std::move(segs));
}

Homotopy::Homotopy(Path base, Path target)
    : base_(std::move(base)), target_(std::move(target)) {
  if (std::abs(base_.start() - target_.start()) > kJoinTol ||
      std::abs(base_.end() - target_.end()) > kJoinTol)
    throw Error(ErrKind::InvalidArgument, "homotopy endpoints are not pinned");
}

Complex Homotopy::at(double t, double eps) const {
  if (eps < 0.0 || eps > 1.0)
    throw Error(ErrKind::InvalidArgument, "homotopy parameter eps outside [0,1]");
  Complex g = base_.point_at(t);
  return g + eps * (target_.point_at(t) - g);
}

Complex Homotopy::deviation_at(double t) const {
  return target_.point_at(t) - base_.point_at(t);
}

Complex Homotopy::deviation_tangent_at(double t) const {
  return target_.tangent_at(t) - base_.tangent_at(t);
}

std::vector<double> Homotopy::breakpoints() const {
  std::vector<double> pts{0.0, 1.0};
  for (std::size_t k = 1; k < base_.segment_count(); ++k)
    pts.push_back(double(k) / double(base_.segment_count()));
  for (std::size_t k = 1; k < target_.segment_count(); ++k)
    pts.push_back(double(k) / double(target_.segment_count()));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-15; }),
            pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

namespace {

double polygon_signed_area(const std::vector<Complex>& v) {
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex& p = v[i];
    const Complex& q = v[(i + 1) % v.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return a / 2;
}

bool segments_properly_intersect(Complex a, Complex b, Complex c, Complex d) {
  auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
  double d1 = cross(b - a, c - a);
  double d2 = cross(b - a, d - a);
  double d3 = cross(d - c, a - c);
  double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

Mode y_mode() { return Mode::param(VarId::Y); }

double eval_graph(const Expr& g, double y) {
  return eval(g, EvalEnv::param(VarId::Y, y)).real();
}

}  // namespace

void validate_region(const Region2D& r) {
  std::visit(
      [](const auto& reg) {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) {
          if (!(reg.x0 < reg.x1 && reg.y0 < reg.y1))
            throw Error(ErrKind::InvalidArgument, "rectangle has non-positive area");
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          if (!(reg.radius > 0))
            throw Error(ErrKind::InvalidArgument, "disk radius must be positive");
        } else if constexpr (std::is_same_v<T, PolygonRegion>) {
          if (reg.vertices.size() < 3)
            throw Error(ErrKind::InvalidArgument, "polygon needs at least 3 vertices");
          if (polygon_signed_area(reg.vertices) <= 0)
            throw Error(ErrKind::InvalidArgument,
                        "polygon must be counterclockwise with positive area");
          const auto& v = reg.vertices;
          for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) {
              if (i == j || (i + 1) % v.size() == j || (j + 1) % v.size() == i) continue;
              if (segments_properly_intersect(v[i], v[(i + 1) % v.size()], v[j],
                                              v[(j + 1) % v.size()]))
                throw Error(ErrKind::InvalidArgument, "polygon is self-intersecting");
            }
        } else {
          if (!(reg.y0 < reg.y1))
            throw Error(ErrKind::InvalidArgument, "x-convex region has empty y-range");
          if (!(reg.x_left.mode() == y_mode()) || !(reg.x_right.mode() == y_mode()))
            throw Error(ErrKind::InvalidArgument,
                        "x-convex boundary graphs must be expressions in y");
          const int n = 64;
          for (int i = 0; i <= n; ++i) {
            double y = reg.y0 + (reg.y1 - reg.y0) * i / n;
            if (eval_graph(reg.x_left, y) > eval_graph(reg.x_right, y) + kJoinTol)
              throw Error(ErrKind::InvalidArgument,
                          "x-convex region has x_left > x_right at y = " +
                              std::to_string(y));
          }
        }
      },
      r);
}

Path boundary_of(const Region2D& r) {
  validate_region(r);
  return std::visit(
      [](const auto& reg) -> Path {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) {
          return Path::polyline({Complex(reg.x0, reg.y0), Complex(reg.x1, reg.y0),
                                 Complex(reg.x1, reg.y1), Complex(reg.x0, reg.y1),
                                 Complex(reg.x0, reg.y0)});
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          return Path::circle(reg.center, reg.radius);
        } else if constexpr (std::is_same_v<T, PolygonRegion>) {
          std::vector<Complex> pts = reg.vertices;
          pts.push_back(pts.front());
          return Path::polyline(pts);
        } else {
          // bottom edge, right graph upward, top edge, left graph downward
          double xl0 = eval_graph(reg.x_left, reg.y0);
          double xr0 = eval_graph(reg.x_right, reg.y0);
          double xl1 = eval_graph(reg.x_left, reg.y1);
          double xr1 = eval_graph(reg.x_right, reg.y1);
          Mode tm = Mode::param(VarId::T);
          Expr tvar = Expr::variable(VarId::T, tm);
          Expr xr = substitute(reg.x_right, VarId::Y, tvar, tm);
          Expr xl = substitute(reg.x_left, VarId::Y, tvar, tm);
          std::vector<Segment> segs;
          if (std::abs(xr0 - xl0) > kJoinTol)
            segs.push_back(LineSeg{Complex(xl0, reg.y0), Complex(xr0, reg.y0)});
          segs.push_back(CurveSeg{xr, tvar, reg.y0, reg.y1});
          if (std::abs(xr1 - xl1) > kJoinTol)
            segs.push_back(LineSeg{Complex(xr1, reg.y1), Complex(xl1, reg.y1)});
          segs.push_back(CurveSeg{xl, tvar, reg.y1, reg.y0});
          return Path(std::move(segs));
        }
      },
      r);
}

bool region_contains(const Region2D& r, Complex p) {
  return std::visit(
      [&](const auto& reg) -> bool {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) {
          return p.real() >= reg.x0 && p.real() <= reg.x1 && p.imag() >= reg.y0 &&
                 p.imag() <= reg.y1;
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          return std::abs(p - reg.center) <= reg.radius;
        } else if constexpr (std::is_same_v<T, PolygonRegion>) {
          // crossing parity
          bool inside = false;
          const auto& v = reg.vertices;
          for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
            double yi = v[i].imag(), yj = v[j].imag();
            double xi = v[i].real(), xj = v[j].real();
            if ((yi > p.imag()) != (yj > p.imag())) {
              double xc = xi + (p.imag() - yi) / (yj - yi) * (xj - xi);
              if (p.real() < xc) inside = !inside;
            }
          }
          return inside;
        } else {
          if (p.imag() < reg.y0 || p.imag() > reg.y1) return false;
          double xl = eval_graph(reg.x_left, p.imag());
          double xr = eval_graph(reg.x_right, p.imag());
          return p.real() >= xl && p.real() <= xr;
        }
      },
      r);
}

RectRegion bounding_box(const Region2D& r) {
  return std::visit(
      [](const auto& reg) -> RectRegion {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) {
          return reg;
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          return RectRegion{reg.center.real() - reg.radius, reg.center.real() + reg.radius,
                            reg.center.imag() - reg.radius, reg.center.imag() + reg.radius};
        } else if constexpr (std::is_same_v<T, PolygonRegion>) {
          double x0 = reg.vertices[0].real(), x1 = x0;
          double y0 = reg.vertices[0].imag(), y1 = y0;
          for (const auto& v : reg.vertices) {
            x0 = std::min(x0, v.real());
            x1 = std::max(x1, v.real());
            y0 = std::min(y0, v.imag());
            y1 = std::max(y1, v.imag());
          }
          return RectRegion{x0, x1, y0, y1};
        } else {
          double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
          const int n = 256;
          for (int i = 0; i <= n; ++i) {
            double y = reg.y0 + (reg.y1 - reg.y0) * i / n;
            x0 = std::min(x0, eval_graph(reg.x_left, y));
            x1 = std::max(x1, eval_graph(reg.x_right, y));
          }
          return RectRegion{x0, x1, reg.y0, reg.y1};
        }
      },
      r);
}

// ---------------------------------------------------------------------------
// solids and faces
// ---------------------------------------------------------------------------

namespace {

Mode planar_mode() { return Mode::planar(); }

double eval_height(const Expr& h, double x, double y) {
  return eval(h, EvalEnv::planar(x, y)).real();
}

std::vector<std::variant<LineSeg, ArcSeg>> base_boundary_pieces(const BaseRegion& b) {
  std::vector<std::variant<LineSeg, ArcSeg>> out;
  if (const auto* rect = std::get_if<RectRegion>(&b)) {
    Complex a(rect->x0, rect->y0), c(rect->x1, rect->y0);
    Complex d(rect->x1, rect->y1), e(rect->x0, rect->y1);
    out.push_back(LineSeg{a, c});
    out.push_back(LineSeg{c, d});
    out.push_back(LineSeg{d, e});
    out.push_back(LineSeg{e, a});
  } else {
    const auto& disk = std::get<DiskRegion>(b);
    out.push_back(ArcSeg{disk.center, disk.radius, 0.0, 2 * kPi});
  }
  return out;
}

}  // namespace

void validate_solid(const Solid3D& s) {
  std::visit(
      [](const auto& sol) {
        using T = std::decay_t<decltype(sol)>;
        if constexpr (std::is_same_v<T, BoxSolid>) {
          if (!(sol.x0 < sol.x1 && sol.y0 < sol.y1 && sol.z0 < sol.z1))
            throw Error(ErrKind::InvalidArgument, "box has non-positive volume");
        } else {
          if (!(sol.z_top.mode() == planar_mode()) ||
              !(sol.z_bottom.mode() == planar_mode()))
            throw Error(ErrKind::InvalidArgument,
                        "graph solid bounds must be planar expressions of (x, y)");
          RectRegion bb = std::visit(
              [](const auto& b) { return bounding_box(Region2D(b)); }, sol.base);
          const int n = 16;
          for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
              double x = bb.x0 + (bb.x1 - bb.x0) * i / n;
              double y = bb.y0 + (bb.y1 - bb.y0) * j / n;
              bool inside = std::visit(
                  [&](const auto& b) { return region_contains(Region2D(b), {x, y}); },
                  sol.base);
              if (!inside) continue;
              if (eval_height(sol.z_top, x, y) < eval_height(sol.z_bottom, x, y) - kJoinTol)
                throw Error(ErrKind::InvalidArgument,
                            "graph solid has z_top < z_bottom inside the base");
            }
        }
      },
      s);
}

namespace {

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string describe(const Region2D& r) {
  return std::visit(
      [](const auto& reg) -> std::string {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) {
          return "rect [" + brief(reg.x0) + "," + brief(reg.x1) + "]x[" +
                 brief(reg.y0) + "," + brief(reg.y1) + "]";
        } else if constexpr (std::is_same_v<T, DiskRegion>) {
          return "disk center (" + brief(reg.center.real()) + "," +
                 brief(reg.center.imag()) + ") radius " + brief(reg.radius);
        } else if constexpr (std::is_same_v<T, PolygonRegion>) {
          return "polygon with " + std::to_string(reg.vertices.size()) + " vertices";
        } else {
          return "xconvex y in [" + brief(reg.y0) + "," + brief(reg.y1) + "], x in [" +
                 to_string(reg.x_left) + ", " + to_string(reg.x_right) + "]";
        }
      },
      r);
}

std::string describe(const Solid3D& s) {
  return std::visit(
      [](const auto& sol) -> std::string {
        using T = std::decay_t<decltype(sol)>;
        if constexpr (std::is_same_v<T, BoxSolid>) {
          return "box [" + brief(sol.x0) + "," + brief(sol.x1) + "]x[" + brief(sol.y0) +
                 "," + brief(sol.y1) + "]x[" + brief(sol.z0) + "," + brief(sol.z1) + "]";
        } else {
          std::string base = std::visit(
              [](const auto& b) { return describe(Region2D(b)); }, sol.base);
          return "graph solid over " + base + ", z in [" + to_string(sol.z_bottom) +
                 ", " + to_string(sol.z_top) + "]";
        }
      },
      s);
}

std::vector<Face> faces_of(const Solid3D& s) {
  validate_solid(s);
  std::vector<Face> faces;
  if (const auto* box = std::get_if<BoxSolid>(&s)) {
    faces.push_back(PlanarFace{0, box->x1, box->y0, box->y1, box->z0, box->z1, +1});
    faces.push_back(PlanarFace{0, box->x0, box->y0, box->y1, box->z0, box->z1, -1});
    faces.push_back(PlanarFace{1, box->y1, box->z0, box->z1, box->x0, box->x1, +1});
    faces.push_back(PlanarFace{1, box->y0, box->z0, box->z1, box->x0, box->x1, -1});
    faces.push_back(PlanarFace{2, box->z1, box->x0, box->x1, box->y0, box->y1, +1});
    faces.push_back(PlanarFace{2, box->z0, box->x0, box->x1, box->y0, box->y1, -1});
    return faces;
  }
  const auto& g = std::get<GraphSolid>(s);
  faces.push_back(GraphFace{g.base, g.z_top, +1});
  faces.push_back(GraphFace{g.base, g.z_bottom, -1});
  for (const auto& piece : base_boundary_pieces(g.base)) {
    // omit walls where the two graphs meet along the boundary piece
    double max_gap = 0;
    const int n = 32;
    for (int i = 0; i <= n; ++i) {
      double u = double(i) / n;
      Complex p = std::visit(
          [&](const auto& seg) -> Complex {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, LineSeg>)
              return seg.from + u * (seg.to - seg.from);
            else
              return seg.center +
                     seg.radius * std::polar(1.0, seg.angle0 + u * (seg.angle1 - seg.angle0));
          },
          piece);
      max_gap = std::max(max_gap, eval_height(g.z_top, p.real(), p.imag()) -
                                      eval_height(g.z_bottom, p.real(), p.imag()));
    }
    if (max_gap > kJoinTol) faces.push_back(WallFace{piece, g.z_bottom, g.z_top});
  }
  return faces;
}

}  // namespace crv
