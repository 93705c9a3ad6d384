#include "crv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace crv {

namespace {
constexpr double kPi = std::numbers::pi;

void append_grid_axis(std::vector<double>& out, double a, double b, int n) {
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? (a + b) / 2 : a + (b - a) * i / (n - 1));
}

double finite_sample(double v) {
  if (!std::isfinite(v))
    throw Error(ErrKind::Evaluation, "non-finite sample at a non-excluded point");
  return v;
}

bool excluded(const std::vector<ExclusionDisk>& ex, Complex p) {
  for (const auto& d : ex)
    if (std::abs(p - d.center) < d.radius) return true;
  return false;
}

}  // namespace

std::vector<Complex> sample_points(const GridSampling& g) {
  if (g.resolution < 2)
    throw Error(ErrKind::InvalidArgument, "grid resolution must be >= 2");
  validate_region(g.region);
  std::vector<Complex> pts;

  if (const auto* xc = std::get_if<XConvexRegion>(&g.region)) {
    std::vector<double> ys;
    append_grid_axis(ys, xc->y0, xc->y1, g.resolution);
    for (double y : ys) {
      double xl = eval(xc->x_left, EvalEnv::param(VarId::Y, y)).real();
      double xr = eval(xc->x_right, EvalEnv::param(VarId::Y, y)).real();
      if (xr - xl <= 0) continue;
      std::vector<double> xs;
      append_grid_axis(xs, xl, xr, g.resolution);
      for (double x : xs) {
        Complex p(x, y);
        if (!excluded(g.exclusions, p)) pts.push_back(p);
      }
    }
  } else {
    RectRegion bb = bounding_box(g.region);
    std::vector<double> xs, ys;
    append_grid_axis(xs, bb.x0, bb.x1, g.resolution);
    append_grid_axis(ys, bb.y0, bb.y1, g.resolution);
    for (double y : ys)
      for (double x : xs) {
        Complex p(x, y);
        if (region_contains(g.region, p) && !excluded(g.exclusions, p)) pts.push_back(p);
      }
  }
  if (pts.empty())
    throw Error(ErrKind::InvalidArgument, "grid sampling retains no points");
  return pts;
}

ResidualField make_residual_field(std::vector<Complex> points,
                                  std::vector<double> residuals) {
  ResidualField f;
  f.points = std::move(points);
  f.residuals = std::move(residuals);
  double sum = 0;
  for (double r : f.residuals) {
    double a = std::abs(r);
    f.max_abs = std::max(f.max_abs, a);
    sum += a;
  }
  f.mean_abs = f.residuals.empty() ? 0 : sum / double(f.residuals.size());
  return f;
}

namespace {
void csv_value(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}
}  // namespace

void write_csv(std::ostream& os, const ResidualField& f) {
  os << "x,y,r\n";
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    csv_value(os, f.points[i].real());
    os << ',';
    csv_value(os, f.points[i].imag());
    os << ',';
    csv_value(os, f.residuals[i]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const ResidualField& r1, const ResidualField& r2) {
  os << "x,y,r1,r2\n";
  for (std::size_t i = 0; i < r1.points.size(); ++i) {
    csv_value(os, r1.points[i].real());
    os << ',';
    csv_value(os, r1.points[i].imag());
    os << ',';
    csv_value(os, r1.residuals[i]);
    os << ',';
    csv_value(os, r2.residuals[i]);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// scalar fields with symbolic or finite-difference partials
// ---------------------------------------------------------------------------

ScalarField2::ScalarField2(Expr expr, VarId v1, VarId v2)
    : expr_(std::move(expr)), v1_(v1), v2_(v2) {
  symbolic_ = !contains_func(expr_, FuncId::Abs);
  if (symbolic_) {
    dx_ = symbolic_diff(expr_, v1_);
    dy_ = symbolic_diff(expr_, v2_);
  }
}

EvalEnv ScalarField2::env(double a, double b) const {
  return EvalEnv().bind(v1_, a).bind(v2_, b);
}

double ScalarField2::value(double a, double b) const {
  return eval(expr_, env(a, b)).real();
}

double ScalarField2::d1(double a, double b) const {
  if (symbolic_) return eval(dx_, env(a, b)).real();
  double h = 1e-6 * (1.0 + std::hypot(a, b));
  return (value(a + h, b) - value(a - h, b)) / (2 * h);
}

double ScalarField2::d2(double a, double b) const {
  if (symbolic_) return eval(dy_, env(a, b)).real();
  double h = 1e-6 * (1.0 + std::hypot(a, b));
  return (value(a, b + h) - value(a, b - h)) / (2 * h);
}

// ---------------------------------------------------------------------------
// residual checks
// ---------------------------------------------------------------------------

namespace {

// Deduce the coordinate pair of a component expression: planar (x, y) or
// meridional (x, z).
std::pair<VarId, VarId> coordinate_pair(const Expr& e) {
  switch (e.mode().kind()) {
    case Mode::Kind::Planar: return {VarId::X, VarId::Y};
    case Mode::Kind::Spatial: return {VarId::X, VarId::Z};
    default:
      throw Error(ErrKind::InvalidArgument,
                  "component expressions must be planar or meridional");
  }
}

CrResiduals cr_of_fields(const ScalarField2& u, const ScalarField2& v,
                         const GridSampling& g) {
  std::vector<Complex> pts = sample_points(g);
  std::vector<double> r1(pts.size()), r2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double a = pts[i].real(), b = pts[i].imag();
    r1[i] = finite_sample(u.d1(a, b) - v.d2(a, b));
    r2[i] = finite_sample(u.d2(a, b) + v.d1(a, b));
  }
  return {make_residual_field(pts, std::move(r1)),
          make_residual_field(std::vector<Complex>(pts), std::move(r2))};
}

}  // namespace

CrResiduals cr_residual(const Expr& f, const GridSampling& g) {
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "cr_residual expects a z-mode expression");
  ComponentPair c = split_components(f, VarId::X, VarId::Y, Mode::planar());
  return cr_of_fields(ScalarField2(c.u, VarId::X, VarId::Y),
                      ScalarField2(c.v, VarId::X, VarId::Y), g);
}

CrResiduals cr_residual(const Expr& u, const Expr& v, const GridSampling& g) {
  auto [a1, a2] = coordinate_pair(u);
  return cr_of_fields(ScalarField2(u, a1, a2), ScalarField2(v, a1, a2), g);
}

ResidualField exactness_residual(const Expr& P, const Expr& Q, const GridSampling& g) {
  auto [a1, a2] = coordinate_pair(P);
  ScalarField2 p(P, a1, a2), q(Q, a1, a2);
  std::vector<Complex> pts = sample_points(g);
  std::vector<double> res(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    res[i] = finite_sample(p.d2(pts[i].real(), pts[i].imag()) -
                           q.d1(pts[i].real(), pts[i].imag()));
  return make_residual_field(std::move(pts), std::move(res));
}

const char* to_string(ExactnessVerdict v) {
  switch (v) {
    case ExactnessVerdict::ExactConsistent: return "exact-consistent";
    case ExactnessVerdict::NonExactDespiteClosedness: return "non-exact despite closedness";
    case ExactnessVerdict::NotClosed: return "not closed";
  }
  return "?";
}

LoopExactness loop_exactness_test(const Expr& P, const Expr& Q, const Path& loop,
                                  const QuadSpec& q, double tol) {
  if (!loop.closed())
    throw Error(ErrKind::InvalidArgument, "loop exactness test needs a closed path");
  ScalarField2 p(P, VarId::X, VarId::Y), qq(Q, VarId::X, VarId::Y);

  double clairaut_max = 0;
  const int samples = 256;
  for (int i = 0; i < samples; ++i) {
    Complex zp = loop.point_at(double(i) / samples);
    clairaut_max = std::max(
        clairaut_max, std::abs(p.d2(zp.real(), zp.imag()) - qq.d1(zp.real(), zp.imag())));
  }
  Complex integral = line_integral_pq(P, Q, loop, q);

  ExactnessVerdict verdict;
  if (clairaut_max > tol)
    verdict = ExactnessVerdict::NotClosed;
  else if (std::abs(integral) > tol)
    verdict = ExactnessVerdict::NonExactDespiteClosedness;
  else
    verdict = ExactnessVerdict::ExactConsistent;
  return {clairaut_max, integral, verdict};
}

WindingResult winding_number(const Path& p, Complex a, const QuadSpec& q) {
  if (!p.closed())
    throw Error(ErrKind::InvalidArgument, "winding number needs a closed path");
  double dist = p.distance_to(a);
  if (dist < 1e-9)
    throw Error(ErrKind::InvalidArgument, "winding point lies on the path");
  validate(q);

  // (1/2 pi i) * contour integral of dz/(z - a), assembled directly
  std::vector<Complex> seg_terms;
  const double m = double(p.segment_count());
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    auto rule = detail::composite_rule(k / m, (k + 1) / m, q.panels, q.nodes);
    std::vector<Complex> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      double t = rule.points[i];
      terms[i] = p.tangent_at(t) / (p.point_at(t) - a) * rule.weights[i];
    }
    seg_terms.push_back(pairwise_sum(std::span<const Complex>(terms)));
  }
  Complex raw = pairwise_sum(std::span<const Complex>(seg_terms)) / Complex(0, 2 * kPi);
  long nearest = std::lround(raw.real());
  bool ok = std::abs(raw - Complex(double(nearest), 0)) <= 1e-6;
  return {ok ? nearest : 0, raw, ok};
}

ConformalityResult conformality_check(const Expr& f, Complex a, Complex dir1,
                                      Complex dir2) {
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "conformality check expects a z-mode expression");
  if (std::abs(dir1) < 1e-12 || std::abs(dir2) < 1e-12)
    throw Error(ErrKind::InvalidArgument, "directions must be nonzero");

  Complex img1, img2;
  if (is_analytic_syntax(f)) {
    Complex deriv = eval(symbolic_diff(f, VarId::Z), EvalEnv::for_z(a));
    if (std::abs(deriv) < 1e-9)
      throw Error(ErrKind::DomainError,
                  "derivative vanishes at the base point; angles are not defined");
    img1 = deriv * dir1;
    img2 = deriv * dir2;
  } else {
    double h = 1e-6 * (1.0 + std::abs(a));
    auto dd = [&](Complex d) {
      Complex u = d / std::abs(d);
      return (eval(f, EvalEnv::for_z(a + h * u)) - eval(f, EvalEnv::for_z(a - h * u))) /
             (2 * h);
    };
    img1 = dd(dir1);
    img2 = dd(dir2);
    if (std::abs(img1) < 1e-9 || std::abs(img2) < 1e-9)
      throw Error(ErrKind::DomainError,
                  "directional derivative vanishes at the base point");
  }

  double angle_in = std::arg(dir2 / dir1);
  double angle_out = std::arg(img2 / img1);
  double diff = std::remainder(angle_out - angle_in, 2 * kPi);
  bool orient = (angle_in == 0.0) ? (angle_out == 0.0)
                                  : ((angle_in > 0) == (angle_out > 0));
  return {angle_in, angle_out, std::abs(diff), orient};
}

CrResiduals primitive_cr_check(const Expr& F, const GridSampling& g) {
  if (F.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "primitive check expects a z-mode expression");
  Expr f = symbolic_diff(F, VarId::Z);
  return cr_residual(f, g);
}

}  // namespace crv
