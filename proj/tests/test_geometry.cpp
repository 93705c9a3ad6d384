#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crv/quad.hpp"
#include "support/helpers.hpp"

using namespace crv;

namespace {
constexpr double kPi = std::numbers::pi;

Path unit_circle_as_curve() {
  Mode tm = Mode::param(VarId::T);
  return Path({CurveSeg{parse("cos(2*pi*t)", tm), parse("sin(2*pi*t)", tm), 0.0, 1.0}});
}
}  // namespace

TEST_CASE("points and tangents") {
  Path circle = Path::circle(0, 1);
  CHECK(std::abs(circle.point_at(0.25) - Complex(0, 1)) <= 1e-15);
  CHECK(circle.closed());

  Path seg = Path::line(0, Complex(1, 1));
  for (double t : {0.1, 0.5, 0.9})
    CHECK(seg.tangent_at(t) == Complex(1, 1));
  CHECK_FALSE(seg.closed());

  CHECK_THROWS_AS(seg.point_at(1.5), Error);
  CHECK_THROWS_AS(seg.point_at(-0.1), Error);

  SUBCASE("declared endpoints are hit exactly") {
    Path poly = Path::polyline({Complex(0, 0), Complex(1, 2), Complex(3, -1)});
    CHECK(poly.point_at(0.0) == Complex(0, 0));
    CHECK(poly.point_at(1.0) == Complex(3, -1));
    CHECK(poly.start() == Complex(0, 0));
    CHECK(poly.end() == Complex(3, -1));
  }

  SUBCASE("segments must join") {
    CHECK_THROWS_AS(Path({LineSeg{0, 1}, LineSeg{Complex(2, 0), Complex(3, 0)}}), Error);
  }
}

TEST_CASE("tangent agrees with central differences of point_at") {
  std::vector<Path> paths;
  paths.push_back(Path::circle(Complex(0.5, -1), 2));
  paths.push_back(Path::polyline({Complex(0, 0), Complex(1, 0), Complex(1, 1)}));
  paths.push_back(unit_circle_as_curve());
  paths.push_back(Path::arc(0, 1.5, kPi / 3, -kPi / 2));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  for (const Path& p : paths) {
    for (int i = 0; i < 100; ++i) {
      double t = unif(rng);
      // keep away from segment breakpoints where the tangent jumps
      double m = double(p.segment_count());
      if (std::abs(t * m - std::round(t * m)) < 0.02 * m) continue;
      double h = 1e-7;
      Complex fd = (p.point_at(t + h) - p.point_at(t - h)) / (2 * h);
      Complex exact = p.tangent_at(t);
      CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    }
  }
}

TEST_CASE("homotopy blends and pins endpoints") {
  Path base = Path::line(0, 1);
  Path target = Path::polyline({Complex(0, 0), Complex(0, 1), Complex(1, 0)});
  Homotopy H(base, target);

  SUBCASE("identity homotopy") {
    Homotopy I(base, base);
    for (double t : {0.0, 0.3, 1.0})
      for (double eps : {0.0, 0.5, 1.0})
        CHECK(std::abs(I.at(t, eps) - base.point_at(t)) == 0.0);
  }

  SUBCASE("eps endpoints reproduce the two paths") {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(std::abs(H.at(t, 0.0) - base.point_at(t)) == 0.0);
      CHECK(std::abs(H.at(t, 1.0) - target.point_at(t)) <= 1e-15);
    }
  }

  SUBCASE("linear blend midpoint") {
    Complex mid = H.at(0.5, 0.5);
    CHECK(std::abs(mid - (base.point_at(0.5) + target.point_at(0.5)) / 2.0) <= 1e-15);
  }

  SUBCASE("endpoint pinning is eps-independent") {
    for (double eps : {0.0, 0.1, 0.7, 1.0}) {
      CHECK(std::abs(H.at(0.0, eps) - base.start()) <= 1e-12);
      CHECK(std::abs(H.at(1.0, eps) - base.end()) <= 1e-12);
    }
  }

  SUBCASE("unpinned endpoints are rejected") {
    CHECK_THROWS_AS(Homotopy(Path::line(0, 1), Path::line(0, Complex(1, 1))), Error);
  }

  SUBCASE("eps out of range") { CHECK_THROWS_AS(H.at(0.5, 1.5), Error); }
}

TEST_CASE("boundaries are closed, counterclockwise, and enclose the region") {
  QuadSpec q;

  SUBCASE("rectangle") {
    Path b = boundary_of(RectRegion{0, 1, 0, 1});
    CHECK(b.closed());
    CHECK(b.segment_count() == 4);
    CHECK(std::abs(b.point_at(0.0) - Complex(0, 0)) == 0.0);
    CHECK(std::abs(path_signed_area(b, q) - 1.0) <= 1e-12);
  }

  SUBCASE("disk") {
    Path b = boundary_of(DiskRegion{Complex(2, -1), 1.5});
    CHECK(b.closed());
    CHECK(std::abs(path_signed_area(b, q) - kPi * 1.5 * 1.5) <= 1e-9);
  }

  SUBCASE("triangle") {
    Path b = boundary_of(PolygonRegion{{Complex(0, 0), Complex(1, 0), Complex(0, 1)}});
    CHECK(b.closed());
    CHECK(std::abs(path_signed_area(b, q) - 0.5) <= 1e-12);
  }

  SUBCASE("x-convex region: bottom edge, right graph up, top edge, left graph down") {
    Mode ym = Mode::param(VarId::Y);
    XConvexRegion r{0.0, 1.0, parse("y^2-1", ym), parse("1-y^2", ym)};
    Path b = boundary_of(Region2D(r));
    CHECK(b.closed());
    CHECK(b.segment_count() == 3);  // degenerate top edge is skipped
    double area = area_integral(parse("1", Mode::planar()), Region2D(r), q).real();
    CHECK(std::abs(path_signed_area(b, q) - area) <= 1e-9);
  }

  SUBCASE("x-convex disk") {
    // the boundary graphs have vertical tangents at y = +-1, so the area
    // form picks up an integrable 1/sqrt singularity; orientation and
    // magnitude are still decisive
    Mode ym = Mode::param(VarId::Y);
    XConvexRegion disk{-1.0, 1.0, parse("-sqrt(1-y^2)", ym), parse("sqrt(1-y^2)", ym)};
    Path b = boundary_of(Region2D(disk));
    CHECK(b.closed());
    double signed_area = path_signed_area(b, q);
    CHECK(signed_area > 0);
    CHECK(std::abs(signed_area - kPi) <= 0.05);
  }

  SUBCASE("clockwise polygons are rejected") {
    CHECK_THROWS_AS(
        validate_region(PolygonRegion{{Complex(0, 0), Complex(0, 1), Complex(1, 0)}}),
        Error);
  }

  SUBCASE("self-intersecting polygons are rejected") {
    CHECK_THROWS_AS(validate_region(PolygonRegion{{Complex(0, 0), Complex(1, 1),
                                                   Complex(1, 0), Complex(0, 1)}}),
                    Error);
  }
}

TEST_CASE("faces of solids") {
  QuadSpec q;
  Mode pm = Mode::planar();
  Mode sm = Mode::spatial();
  Expr one = parse("1", sm);
  Expr zero = parse("0", sm);

  SUBCASE("unit box has six faces with outward normals") {
    auto faces = faces_of(BoxSolid{0, 1, 0, 1, 0, 1});
    CHECK(faces.size() == 6);
    // flux of a constant field through a closed surface vanishes
    double net = 0;
    for (const Face& f : faces) net += flux_integral(one, zero, zero, f, q);
    CHECK(std::abs(net) <= 1e-12);
    // total area
    double area = 0;
    for (const Face& f : faces) area += surface_integral(one, f, q);
    CHECK(std::abs(area - 6.0) <= 1e-12);
  }

  SUBCASE("flat graph has upward top normal") {
    GraphSolid s{RectRegion{0, 1, 0, 1}, parse("1", pm), parse("0", pm)};
    auto faces = faces_of(Solid3D(s));
    // top, bottom, four walls
    CHECK(faces.size() == 6);
    CHECK(std::abs(flux_integral(zero, zero, one, faces[0], q) - 1.0) <= 1e-12);
    CHECK(std::abs(flux_integral(zero, zero, one, faces[1], q) + 1.0) <= 1e-12);
  }

  SUBCASE("paraboloid cap: top normal proportional to (2x, 2y, 1)") {
    GraphSolid s{DiskRegion{0, 1}, parse("1-x^2-y^2", pm), parse("0", pm)};
    auto faces = faces_of(Solid3D(s));
    CHECK(faces.size() == 2);  // graphs meet on the rim, no wall
    // vertical unit flux through the top graph equals the projected area
    CHECK(std::abs(flux_integral(zero, zero, one, faces[0], q) - kPi) <= 1e-10);
    // horizontal flux of (1,0,0) through the top graph is the x-slope term
    double fx = flux_integral(one, zero, zero, faces[0], q);
    double expect = area_integral(parse("2*x", pm), DiskRegion{0, 1}, q).real();
    CHECK(std::abs(fx - expect) <= 1e-10);
  }

  SUBCASE("graph solid with z_top < z_bottom is rejected") {
    GraphSolid bad{RectRegion{0, 1, 0, 1}, parse("0", pm), parse("1", pm)};
    CHECK_THROWS_AS(validate_solid(Solid3D(bad)), Error);
  }
}

TEST_CASE("reversal and concatenation") {
  Path upper = Path::arc(0, 1, 0, kPi);
  Path rev = upper.reversed();
  CHECK(std::abs(rev.start() - upper.end()) <= 1e-15);
  CHECK(std::abs(rev.point_at(0.25) - upper.point_at(0.75)) <= 1e-15);

  Path lower = Path::arc(0, 1, kPi, 2 * kPi);
  Path full = concat(upper, lower);
  CHECK(full.closed());
  CHECK(full.segment_count() == 2);
  CHECK_THROWS_AS(concat(upper, Path::line(5, 6)), Error);
}

TEST_CASE("distance to a path") {
  Path circle = Path::circle(0, 1);
  CHECK(std::abs(circle.distance_to(0) - 1.0) <= 1e-12);
  CHECK(std::abs(circle.distance_to(Complex(3, 0)) - 2.0) <= 1e-12);
  Path seg = Path::line(0, 1);
  CHECK(std::abs(seg.distance_to(Complex(0.5, 2)) - 2.0) <= 1e-12);
  CHECK(std::abs(seg.distance_to(Complex(-3, 0)) - 3.0) <= 1e-12);
}
