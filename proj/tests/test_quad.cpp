#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crv/quad.hpp"
#include "support/helpers.hpp"

using namespace crv;
using crv::testing::oracle_contour_sum;

namespace {
constexpr double kPi = std::numbers::pi;
const Mode kZ = Mode::z();
const Mode kP = Mode::planar();
const Mode kS = Mode::spatial();
}  // namespace

TEST_CASE("Riemann sums telescope for constant integrands") {
  Path zig = Path::polyline({Complex(0, 0), Complex(0.3, 0.8), Complex(1, 1)});
  Expr c = parse("2-3*i", kZ);
  for (long n : {1L, 7L, 100L}) {
    Complex s = riemann_sum_integral(c, zig, n);
    Complex expect = Complex(2, -3) * (zig.end() - zig.start());
    CHECK(std::abs(s - expect) <= 1e-13);
  }
}

TEST_CASE("Riemann sums converge at first order for exp along a segment") {
  Path seg = Path::line(0, Complex(1, 1));
  Expr f = parse("exp(z)", kZ);
  const Complex exact = std::exp(Complex(1, 1)) - 1.0;  // antiderivative at endpoints

  std::vector<double> errs;
  for (int k = 7; k <= 12; ++k)
    errs.push_back(std::abs(riemann_sum_integral(f, seg, 1L << k) - exact));

  double order_sum = 0;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    double ratio = errs[i] / errs[i + 1];
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
    order_sum += std::log2(ratio);
  }
  double order = order_sum / double(errs.size() - 1);
  CHECK(order >= 0.9);
  CHECK(order <= 1.1);
}

TEST_CASE("Riemann sum hits a pole sitting on the path") {
  Path through_zero = Path::line(-1, 1);
  Expr f = parse("1/z", kZ);
  CHECK_THROWS_AS(riemann_sum_integral(f, through_zero, 10), Error);
}

TEST_CASE("contour integration") {
  QuadSpec q;

  SUBCASE("polynomial exactness") {
    CHECK(std::abs(contour_integral(parse("z", kZ), Path::line(0, 2), q) - 2.0) <= 1e-14);
  }

  SUBCASE("dz/z over the unit circle") {
    Complex v = contour_integral(parse("1/z", kZ), Path::circle(0, 1), q);
    CHECK(std::abs(v - Complex(0, 2 * kPi)) <= 1e-12);
    // slow independent oracle before trusting the fast engine
    Complex oracle = oracle_contour_sum(
        [](double t) { return std::polar(1.0, 2 * kPi * t); },
        [](Complex z) { return 1.0 / z; }, 1000000);
    CHECK(std::abs(v - oracle) <= 1e-4);
    Complex riemann = riemann_sum_integral(parse("1/z", kZ), Path::circle(0, 1), 1000000);
    CHECK(std::abs(v - riemann) <= 1e-4);
  }

  SUBCASE("conjugate over the unit circle picks up twice the area") {
    Complex v = contour_integral(parse("conj(z)", kZ), Path::circle(0, 1), q);
    CHECK(std::abs(v - Complex(0, 2 * kPi)) <= 1e-12);  // 2i * area, area = pi
    Complex oracle = oracle_contour_sum(
        [](double t) { return std::polar(1.0, 2 * kPi * t); },
        [](Complex z) { return std::conj(z); }, 1000000);
    CHECK(std::abs(v - oracle) <= 1e-4);
  }

  SUBCASE("singularity detection is by non-finite samples") {
    // essential singularity on the path overflows nearby samples to inf
    CHECK_THROWS_AS(
        contour_integral(parse("exp(1/(z-1)^2)", kZ), Path::line(0, 2), q), Error);
  }
}

TEST_CASE("plane integrals") {
  QuadSpec q;
  CHECK(std::abs(area_integral(parse("1", kP), DiskRegion{0, 1}, q).real() - kPi) <= 1e-10);
  CHECK(std::abs(area_integral(parse("3*(x^2+y^2)", kP), DiskRegion{0, 1}, q).real() -
                 3 * kPi / 2) <= 1e-9);
  PolygonRegion tri{{Complex(0, 0), Complex(1, 0), Complex(0, 1)}};
  CHECK(std::abs(area_integral(parse("1", kP), tri, q).real() - 0.5) <= 1e-12);
  // quadratic moment over the triangle: integral of x*y = 1/24
  CHECK(std::abs(area_integral(parse("x*y", kP), tri, q).real() - 1.0 / 24) <= 1e-12);
  CHECK(std::abs(area_integral(parse("x*y", kP), RectRegion{0, 1, 0, 1}, q).real() - 0.25) <=
        1e-13);

  SUBCASE("singularity inside the region") {
    CHECK_THROWS_AS(area_integral(parse("exp(1/(x^2+y^2))", kP), RectRegion{-1, 1, -1, 1},
                                  QuadSpec{16, 8, 64}),
                    Error);
  }
}

TEST_CASE("strip reduction of the x-partial") {
  QuadSpec q;
  Mode ym = Mode::param(VarId::Y);

  SUBCASE("unit square") {
    XConvexRegion sq{0, 1, parse("0", ym), parse("1", ym)};
    CHECK(std::abs(strip_area_integral(parse("x", kP), sq, q) - 1.0) <= 1e-13);
    CHECK(std::abs(strip_area_integral(parse("x^2/2", kP), sq, q) - 0.5) <= 1e-13);
    // matches the plane integral of the symbolic x-partial
    double area_route = area_integral(parse("1", kP), Region2D(sq), q).real();
    CHECK(std::abs(strip_area_integral(parse("x", kP), sq, q) - area_route) <= 1e-12);
  }

  SUBCASE("disk, transcendental integrand") {
    XConvexRegion disk{-1, 1, parse("-sqrt(1-y^2)", ym), parse("sqrt(1-y^2)", ym)};
    Expr X = parse("sin(x)*y", kP);
    double strip = strip_area_integral(X, disk, q);
    double area_route =
        area_integral(symbolic_diff(X, VarId::X), Region2D(disk), q).real();
    CHECK(std::abs(strip - area_route) <= 1e-8);
  }

  SUBCASE("strip equals plane integral of the x-partial on a family") {
    for (const char* text : {"x^2*y", "sin(x+y)", "exp(x)*y^2", "x^3-x*y"}) {
      Expr X = parse(text, kP);
      XConvexRegion r{0, 2, parse("y/4", ym), parse("1+y^2/4", ym)};
      double strip = strip_area_integral(X, r, q);
      double area_route = area_integral(symbolic_diff(X, VarId::X), Region2D(r), q).real();
      CAPTURE(text);
      CHECK(std::abs(strip - area_route) <= 1e-8);
    }
  }
}

TEST_CASE("surface integrals") {
  QuadSpec q;
  Mode pm = kP;

  SUBCASE("flat unit-square face") {
    PlanarFace f{2, 0.0, 0, 1, 0, 1, +1};
    CHECK(std::abs(surface_integral(parse("1", kS), f, q) - 1.0) <= 1e-13);
  }

  SUBCASE("slanted graph z = x has area sqrt(2)") {
    GraphFace f{RectRegion{0, 1, 0, 1}, parse("x", pm), +1};
    CHECK(std::abs(surface_integral(parse("1", kS), f, q) - std::sqrt(2.0)) <= 1e-12);
  }

  SUBCASE("box top face weights z by the z-normal") {
    PlanarFace top{2, 1.0, 0, 1, 0, 1, +1};
    Expr zero = parse("0", kS);
    CHECK(std::abs(flux_integral(zero, zero, parse("z", kS), top, q) - 1.0) <= 1e-13);
  }
}

TEST_CASE("volume integrals") {
  QuadSpec q;
  BoxSolid box{0, 1, 0, 1, 0, 1};
  CHECK(std::abs(volume_integral(parse("1", kS), box, q) - 1.0) <= 1e-12);

  SUBCASE("paraboloid cap") {
    GraphSolid cap{DiskRegion{0, 1}, parse("1-x^2-y^2", kP), parse("0", kP)};
    CHECK(std::abs(volume_integral(parse("1", kS), cap, q) - kPi / 2) <= 1e-8);
  }

  SUBCASE("slab identity over the box") {
    // d/dz of z is 1; its volume integral equals the z-weighted flux
    Expr zero = parse("0", kS);
    double vol = volume_integral(parse("1", kS), box, q);
    double flux = 0;
    for (const Face& f : faces_of(Solid3D(box)))
      flux += flux_integral(zero, zero, parse("z", kS), f, q);
    CHECK(std::abs(vol - flux) <= 1e-12);
    CHECK(std::abs(vol - 1.0) <= 1e-12);
  }
}

TEST_CASE("engine linearity") {
  QuadSpec q;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    double a = unif(rng), b = unif(rng);
    char abuf[64], bbuf[64];
    std::snprintf(abuf, sizeof abuf, "(%.17g)", a);
    std::snprintf(bbuf, sizeof bbuf, "(%.17g)", b);

    SUBCASE("") {}
    {
      Expr f = parse("exp(z)", kZ), g = parse("z^2", kZ);
      Expr combo = parse((std::string(abuf) + "*exp(z)+" + bbuf + "*z^2").c_str(), kZ);
      Path p = Path::line(Complex(-1, 0.5), Complex(1, -0.25));
      Complex lhs = contour_integral(combo, p, q);
      Complex rhs = a * contour_integral(f, p, q) + b * contour_integral(g, p, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }
    {
      Expr f = parse("sin(x)*y", kP), g = parse("x^2", kP);
      Expr combo = parse((std::string(abuf) + "*sin(x)*y+" + bbuf + "*x^2").c_str(), kP);
      DiskRegion disk{Complex(0.5, 0.5), 1.5};
      Complex lhs = area_integral(combo, disk, q);
      Complex rhs = a * area_integral(f, disk, q) + b * area_integral(g, disk, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }
    {
      Mode ym = Mode::param(VarId::Y);
      XConvexRegion r{0, 1, parse("0", ym), parse("1+y", ym)};
      Expr f = parse("x^2", kP), g = parse("cos(x)*y", kP);
      Expr combo = parse((std::string(abuf) + "*x^2+" + bbuf + "*cos(x)*y").c_str(), kP);
      double lhs = strip_area_integral(combo, r, q);
      double rhs = a * strip_area_integral(f, r, q) + b * strip_area_integral(g, r, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }
    {
      GraphFace face{RectRegion{0, 1, 0, 1}, parse("x*y", kP), +1};
      Expr f = parse("z", kS), g = parse("x^2+y", kS);
      Expr combo = parse((std::string(abuf) + "*z+" + bbuf + "*(x^2+y)").c_str(), kS);
      double lhs = surface_integral(combo, face, q);
      double rhs = a * surface_integral(f, face, q) + b * surface_integral(g, face, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }
    {
      BoxSolid box{0, 1, 0, 1, 0, 1};
      Expr f = parse("x*z", kS), g = parse("sin(y)", kS);
      Expr combo = parse((std::string(abuf) + "*x*z+" + bbuf + "*sin(y)").c_str(), kS);
      double lhs = volume_integral(combo, box, q);
      double rhs = a * volume_integral(f, box, q) + b * volume_integral(g, box, q);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1 + std::abs(rhs)));
    }
  }
}

TEST_CASE("orientation reversal negates contour integrals") {
  QuadSpec q;
  std::vector<Path> paths;
  paths.push_back(Path::line(0, Complex(1, 2)));
  paths.push_back(Path::arc(Complex(0.5, 0), 2, 0.3, 2.1));
  paths.push_back(Path::polyline({Complex(0, 0), Complex(1, 1), Complex(2, 0)}));
  for (const Path& p : paths) {
    for (const char* text : {"exp(z)", "z^3", "sin(z)"}) {
      Complex fwd = contour_integral(parse(text, kZ), p, q);
      Complex bwd = contour_integral(parse(text, kZ), p.reversed(), q);
      CHECK(std::abs(fwd + bwd) <= 1e-13 * (1 + std::abs(fwd)));
    }
  }
}

TEST_CASE("additivity over concatenation") {
  QuadSpec q;
  Path a = Path::line(0, Complex(1, 1));
  Path b = Path::polyline({Complex(1, 1), Complex(2, 0), Complex(2, -1)});
  Path joined = concat(a, b);
  for (const char* text : {"exp(z)", "z^2-z", "cos(z)"}) {
    Expr f = parse(text, kZ);
    Complex whole = contour_integral(f, joined, q);
    Complex parts = contour_integral(f, a, q) + contour_integral(f, b, q);
    CHECK(std::abs(whole - parts) <= 1e-13 * (1 + std::abs(whole)));
  }
}

TEST_CASE("Gauss-Legendre error collapses under node doubling") {
  // meromorphic integrand with the pole at distance 1; closed form -log 2
  Expr f = parse("1/(z-2)", kZ);
  Path seg = Path::line(0, 1);
  const double exact = -std::log(2.0);
  double prev_err = -1;
  int decays = 0;
  for (int nodes : {2, 4, 8, 16}) {
    QuadSpec q{nodes, 1, 64};
    double err = std::abs(contour_integral(f, seg, q).real() - exact);
    if (prev_err > 0 && err > 1e-16) {
      CHECK(prev_err / err >= 1e2);
      ++decays;
    }
    prev_err = err;
  }
  CHECK(decays >= 2);  // at least two doublings observed above the roundoff floor
}

TEST_CASE("Gauss-Legendre rules are sane") {
  for (int n : {1, 2, 5, 16, 40}) {
    const GaussRule& r = gauss_legendre(n);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) <= 1e-14);
    // exactness on x^(2n-1) (odd, integrates to zero) and x^2
    double odd = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      odd += r.weights[i] * std::pow(r.nodes[i], 2 * n - 1);
      sq += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(std::abs(odd) <= 1e-14);
    if (n >= 2) CHECK(std::abs(sq - 2.0 / 3.0) <= 1e-13);
  }
  CHECK_THROWS_AS(validate(QuadSpec{0, 1, 1}), Error);
}
