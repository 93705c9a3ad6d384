#include "crv/quad.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace crv {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate(const QuadSpec& q) {
  if (q.nodes < 1 || q.panels < 1 || q.grid < 1)
    throw Error(ErrKind::InvalidArgument, "quadrature spec fields must be positive");
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrKind::InvalidArgument, "Gauss-Legendre order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on the Legendre polynomial, symmetric pairs
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one more polish step, then done
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        x -= p1 / dp;
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // ascending order
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  return pos->second;
}

namespace {

template <typename T>
T pairwise_impl(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return v[0] + v[1];
  std::size_t half = v.size() / 2;
  return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }
Complex pairwise_sum(std::span<const Complex> values) { return pairwise_impl(values); }

namespace detail {

Panels1D composite_rule(double a, double b, int panels, int nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  Panels1D out;
  out.points.reserve(static_cast<std::size_t>(panels) * nodes);
  out.weights.reserve(static_cast<std::size_t>(panels) * nodes);
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double mid = lo + h / 2;
    for (int i = 0; i < nodes; ++i) {
      out.points.push_back(mid + rule.nodes[i] * h / 2);
      out.weights.push_back(rule.weights[i] * h / 2);
    }
  }
  return out;
}

Panels1D axis_rule(double a, double b, const QuadSpec& q) {
  int panels = std::max(1, q.grid / q.nodes);
  return composite_rule(a, b, panels, q.nodes);
}

double finite_or_throw(double v, const char* what) {
  if (!std::isfinite(v))
    throw Error(ErrKind::Evaluation, std::string("non-finite sample in ") + what);
  return v;
}

}  // namespace detail

namespace {

Complex finite_or_throw_c(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrKind::Evaluation, std::string("non-finite sample in ") + what);
  return v;
}

Complex eval_at_point(const Expr& f, Complex zval) {
  return eval(f, EvalEnv::for_z(zval));
}

// Composite rule applied to one path, accumulating fn(point, tangent, weight)
// contributions per segment with pairwise reduction.
template <typename Fn>
Complex integrate_path(const Path& p, const QuadSpec& q, Fn&& fn) {
  validate(q);
  std::vector<Complex> seg_sums;
  seg_sums.reserve(p.segment_count());
  const double m = static_cast<double>(p.segment_count());
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    double a = double(k) / m, b = double(k + 1) / m;
    auto rule = detail::composite_rule(a, b, q.panels, q.nodes);
    std::vector<Complex> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      double t = rule.points[i];
      terms[i] = fn(p.point_at(t), p.tangent_at(t)) * rule.weights[i];
    }
    seg_sums.push_back(pairwise_sum(std::span<const Complex>(terms)));
  }
  return pairwise_sum(std::span<const Complex>(seg_sums));
}

}  // namespace

Complex riemann_sum_integral(const Expr& f, const Path& p, long n) {
  if (n < 1) throw Error(ErrKind::InvalidArgument, "Riemann sum needs n >= 1");
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "contour integrand must be in z-mode");
  std::vector<Complex> terms;
  terms.reserve(n);
  Complex prev = p.point_at(0.0);
  for (long k = 0; k < n; ++k) {
    Complex next = p.point_at(double(k + 1) / double(n));
    Complex fv = finite_or_throw_c(eval_at_point(f, prev), "Riemann sum");
    terms.push_back(fv * (next - prev));
    prev = next;
  }
  return pairwise_sum(std::span<const Complex>(terms));
}

Complex contour_integral(const Expr& f, const Path& p, const QuadSpec& q) {
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "contour integrand must be in z-mode");
  return integrate_path(p, q, [&](Complex z, Complex dz) {
    return finite_or_throw_c(eval_at_point(f, z), "contour integral") * dz;
  });
}

Complex line_integral_pq(const Expr& P, const Expr& Q, const Path& p, const QuadSpec& q) {
  return integrate_path(p, q, [&](Complex z, Complex dz) {
    EvalEnv env = EvalEnv::planar(z.real(), z.imag());
    Complex pv = finite_or_throw_c(eval(P, env), "line integral");
    Complex qv = finite_or_throw_c(eval(Q, env), "line integral");
    return pv * dz.real() + qv * dz.imag();
  });
}

double path_signed_area(const Path& p, const QuadSpec& q) {
  Complex v = integrate_path(p, q, [](Complex z, Complex dz) {
    return Complex(z.real() * dz.imag() - z.imag() * dz.real(), 0.0);
  });
  return v.real() / 2;
}

// ---------------------------------------------------------------------------
// area integrals
// ---------------------------------------------------------------------------

namespace {

using AreaFn = std::function<Complex(double, double)>;

Complex area_rect(const AreaFn& g, const RectRegion& r, const QuadSpec& q) {
  auto rx = detail::axis_rule(r.x0, r.x1, q);
  auto ry = detail::axis_rule(r.y0, r.y1, q);
  std::vector<Complex> rows(ry.points.size());
  std::vector<Complex> terms(rx.points.size());
  for (std::size_t j = 0; j < ry.points.size(); ++j) {
    for (std::size_t i = 0; i < rx.points.size(); ++i) {
      Complex v = finite_or_throw_c(g(rx.points[i], ry.points[j]), "area integral");
      terms[i] = v * rx.weights[i];
    }
    rows[j] = pairwise_sum(std::span<const Complex>(terms)) * ry.weights[j];
  }
  return pairwise_sum(std::span<const Complex>(rows));
}

Complex area_disk(const AreaFn& g, const DiskRegion& d, const QuadSpec& q) {
  auto rr = detail::axis_rule(0.0, d.radius, q);
  auto rt = detail::axis_rule(0.0, 2 * kPi, q);
  std::vector<Complex> rows(rr.points.size());
  std::vector<Complex> terms(rt.points.size());
  for (std::size_t i = 0; i < rr.points.size(); ++i) {
    double rad = rr.points[i];
    for (std::size_t j = 0; j < rt.points.size(); ++j) {
      double x = d.center.real() + rad * std::cos(rt.points[j]);
      double y = d.center.imag() + rad * std::sin(rt.points[j]);
      Complex v = finite_or_throw_c(g(x, y), "area integral");
      terms[j] = v * rt.weights[j];
    }
    rows[i] = pairwise_sum(std::span<const Complex>(terms)) * (rr.weights[i] * rad);
  }
  return pairwise_sum(std::span<const Complex>(rows));
}

// Duffy map of the unit square onto triangle (v0, v1, v2); Jacobian 2*area*u.
Complex area_triangle(const AreaFn& g, Complex v0, Complex v1, Complex v2,
                      const QuadSpec& q) {
  double twice_area = (v1 - v0).real() * (v2 - v0).imag() -
                      (v1 - v0).imag() * (v2 - v0).real();
  auto ru = detail::axis_rule(0.0, 1.0, q);
  std::vector<Complex> rows(ru.points.size());
  std::vector<Complex> terms(ru.points.size());
  for (std::size_t i = 0; i < ru.points.size(); ++i) {
    double u = ru.points[i];
    for (std::size_t j = 0; j < ru.points.size(); ++j) {
      double v = ru.points[j];
      Complex p = v0 + u * (v1 - v0) + u * v * (v2 - v1);
      Complex fv = finite_or_throw_c(g(p.real(), p.imag()), "area integral");
      terms[j] = fv * ru.weights[j];
    }
    rows[i] = pairwise_sum(std::span<const Complex>(terms)) * (ru.weights[i] * u * twice_area);
  }
  return pairwise_sum(std::span<const Complex>(rows));
}

Complex area_polygon(const AreaFn& g, const PolygonRegion& poly, const QuadSpec& q) {
  Complex centroid = 0;
  for (const auto& v : poly.vertices) centroid += v;
  centroid /= double(poly.vertices.size());
  std::vector<Complex> parts;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i)
    parts.push_back(area_triangle(g, centroid, poly.vertices[i],
                                  poly.vertices[(i + 1) % poly.vertices.size()], q));
  return pairwise_sum(std::span<const Complex>(parts));
}

Complex area_xconvex(const AreaFn& g, const XConvexRegion& r, const QuadSpec& q) {
  // outer rule in y matches strip_area_integral so the two routes share
  // their outer discretization
  auto ry = detail::composite_rule(r.y0, r.y1, q.panels, q.nodes);
  int inner_panels = std::max(1, q.grid / q.nodes);
  std::vector<Complex> rows(ry.points.size());
  for (std::size_t j = 0; j < ry.points.size(); ++j) {
    double y = ry.points[j];
    double xl = eval(r.x_left, EvalEnv::param(VarId::Y, y)).real();
    double xr = eval(r.x_right, EvalEnv::param(VarId::Y, y)).real();
    auto rx = detail::composite_rule(xl, xr, inner_panels, q.nodes);
    std::vector<Complex> terms(rx.points.size());
    for (std::size_t i = 0; i < rx.points.size(); ++i) {
      Complex v = finite_or_throw_c(g(rx.points[i], y), "area integral");
      terms[i] = v * rx.weights[i];
    }
    rows[j] = pairwise_sum(std::span<const Complex>(terms)) * ry.weights[j];
  }
  return pairwise_sum(std::span<const Complex>(rows));
}

Complex area_dispatch(const AreaFn& g, const Region2D& r, const QuadSpec& q) {
  validate(q);
  validate_region(r);
  return std::visit(
      [&](const auto& reg) -> Complex {
        using T = std::decay_t<decltype(reg)>;
        if constexpr (std::is_same_v<T, RectRegion>) return area_rect(g, reg, q);
        else if constexpr (std::is_same_v<T, DiskRegion>) return area_disk(g, reg, q);
        else if constexpr (std::is_same_v<T, PolygonRegion>) return area_polygon(g, reg, q);
        else return area_xconvex(g, reg, q);
      },
      r);
}

}  // namespace

Complex area_integral(const Expr& g, const Region2D& r, const QuadSpec& q) {
  return area_dispatch(
      [&](double x, double y) { return eval(g, EvalEnv::planar(x, y)); }, r, q);
}

Complex area_integral_fn(const std::function<Complex(double, double)>& g,
                         const Region2D& r, const QuadSpec& q) {
  return area_dispatch(g, r, q);
}

double strip_area_integral(const Expr& X, const XConvexRegion& r, const QuadSpec& q) {
  validate(q);
  validate_region(Region2D(r));
  auto ry = detail::composite_rule(r.y0, r.y1, q.panels, q.nodes);
  std::vector<double> terms(ry.points.size());
  for (std::size_t j = 0; j < ry.points.size(); ++j) {
    double y = ry.points[j];
    double xl = eval(r.x_left, EvalEnv::param(VarId::Y, y)).real();
    double xr = eval(r.x_right, EvalEnv::param(VarId::Y, y)).real();
    double right = detail::finite_or_throw(
        eval(X, EvalEnv::planar(xr, y)).real(), "strip integral");
    double left = detail::finite_or_throw(
        eval(X, EvalEnv::planar(xl, y)).real(), "strip integral");
    terms[j] = (right - left) * ry.weights[j];
  }
  return pairwise_sum(std::span<const double>(terms));
}

// ---------------------------------------------------------------------------
// surface and volume integrals
// ---------------------------------------------------------------------------

namespace {

// fn(x, y, z, unit-normal, area-element weight) accumulated over the face
template <typename Fn>
double integrate_face(const Face& face, const QuadSpec& q, Fn&& fn) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PlanarFace>) {
          auto ru = detail::axis_rule(f.u0, f.u1, q);
          auto rv = detail::axis_rule(f.v0, f.v1, q);
          double n[3] = {0, 0, 0};
          n[f.axis] = f.sign;
          std::vector<double> rows(ru.points.size());
          std::vector<double> terms(rv.points.size());
          for (std::size_t i = 0; i < ru.points.size(); ++i) {
            for (std::size_t j = 0; j < rv.points.size(); ++j) {
              double c[3];
              c[f.axis] = f.level;
              c[(f.axis + 1) % 3] = ru.points[i];
              c[(f.axis + 2) % 3] = rv.points[j];
              terms[j] = fn(c[0], c[1], c[2], n) * rv.weights[j];
            }
            rows[i] = pairwise_sum(std::span<const double>(terms)) * ru.weights[i];
          }
          return pairwise_sum(std::span<const double>(rows));
        } else if constexpr (std::is_same_v<T, GraphFace>) {
          Expr hx = symbolic_diff(f.height, VarId::X);
          Expr hy = symbolic_diff(f.height, VarId::Y);
          Region2D base = std::visit([](const auto& b) { return Region2D(b); }, f.base);
          // reuse the planar tensor rules through a callback on base samples
          auto eval_sample = [&](double x, double y) -> double {
            EvalEnv env = EvalEnv::planar(x, y);
            double h = detail::finite_or_throw(eval(f.height, env).real(), "surface integral");
            double gx = detail::finite_or_throw(eval(hx, env).real(), "surface integral");
            double gy = detail::finite_or_throw(eval(hy, env).real(), "surface integral");
            double norm = std::sqrt(1.0 + gx * gx + gy * gy);
            double n[3];
            double s = f.orientation >= 0 ? 1.0 : -1.0;
            n[0] = -s * gx / norm;
            n[1] = -s * gy / norm;
            n[2] = s / norm;
            // dS = norm * dx dy
            return fn(x, y, h, n) * norm;
          };
          if (const auto* rect = std::get_if<RectRegion>(&f.base)) {
            auto rx = detail::axis_rule(rect->x0, rect->x1, q);
            auto ry = detail::axis_rule(rect->y0, rect->y1, q);
            std::vector<double> rows(ry.points.size());
            std::vector<double> terms(rx.points.size());
            for (std::size_t j = 0; j < ry.points.size(); ++j) {
              for (std::size_t i = 0; i < rx.points.size(); ++i)
                terms[i] = eval_sample(rx.points[i], ry.points[j]) * rx.weights[i];
              rows[j] = pairwise_sum(std::span<const double>(terms)) * ry.weights[j];
            }
            return pairwise_sum(std::span<const double>(rows));
          }
          const auto& disk = std::get<DiskRegion>(f.base);
          auto rr = detail::axis_rule(0.0, disk.radius, q);
          auto rt = detail::axis_rule(0.0, 2 * kPi, q);
          std::vector<double> rows(rr.points.size());
          std::vector<double> terms(rt.points.size());
          for (std::size_t i = 0; i < rr.points.size(); ++i) {
            double rad = rr.points[i];
            for (std::size_t j = 0; j < rt.points.size(); ++j) {
              double x = disk.center.real() + rad * std::cos(rt.points[j]);
              double y = disk.center.imag() + rad * std::sin(rt.points[j]);
              terms[j] = eval_sample(x, y) * rt.weights[j];
            }
            rows[i] = pairwise_sum(std::span<const double>(terms)) * (rr.weights[i] * rad);
          }
          return pairwise_sum(std::span<const double>(rows));
        } else {
          // vertical wall over a counterclockwise boundary piece: the
          // parameterization (u, zeta) has area element |curve'(u)| du dzeta
          // and outward normal (y', -x', 0)/|curve'|
          auto curve_point = [&](double u) -> Complex {
            if (const auto* line = std::get_if<LineSeg>(&f.curve))
              return line->from + u * (line->to - line->from);
            const auto& arc = std::get<ArcSeg>(f.curve);
            return arc.center +
                   arc.radius * std::polar(1.0, arc.angle0 + u * (arc.angle1 - arc.angle0));
          };
          auto curve_tangent = [&](double u) -> Complex {
            if (const auto* line = std::get_if<LineSeg>(&f.curve))
              return line->to - line->from;
            const auto& arc = std::get<ArcSeg>(f.curve);
            double sweep = arc.angle1 - arc.angle0;
            return Complex(0, 1) * arc.radius * sweep *
                   std::polar(1.0, arc.angle0 + u * sweep);
          };
          auto ru = detail::axis_rule(0.0, 1.0, q);
          std::vector<double> rows(ru.points.size());
          for (std::size_t i = 0; i < ru.points.size(); ++i) {
            Complex pxy = curve_point(ru.points[i]);
            Complex tan = curve_tangent(ru.points[i]);
            double speed = std::abs(tan);
            EvalEnv benv = EvalEnv::planar(pxy.real(), pxy.imag());
            double zb = detail::finite_or_throw(eval(f.z_bottom, benv).real(),
                                                "surface integral");
            double zt = detail::finite_or_throw(eval(f.z_top, benv).real(),
                                                "surface integral");
            double n[3] = {tan.imag() / speed, -tan.real() / speed, 0.0};
            auto rz = detail::axis_rule(zb, zt, q);
            std::vector<double> terms(rz.points.size());
            for (std::size_t k = 0; k < rz.points.size(); ++k)
              terms[k] = fn(pxy.real(), pxy.imag(), rz.points[k], n) * rz.weights[k];
            rows[i] = pairwise_sum(std::span<const double>(terms)) * (ru.weights[i] * speed);
          }
          return pairwise_sum(std::span<const double>(rows));
        }
      },
      face);
}

}  // namespace

double surface_integral(const Expr& g, const Face& face, const QuadSpec& q) {
  validate(q);
  return integrate_face(face, q, [&](double x, double y, double z, const double*) {
    return detail::finite_or_throw(eval(g, EvalEnv::spatial(x, y, z)).real(),
                                   "surface integral");
  });
}

double flux_integral(const Expr& P, const Expr& Q, const Expr& R, const Face& face,
                     const QuadSpec& q) {
  validate(q);
  return integrate_face(face, q, [&](double x, double y, double z, const double* n) {
    EvalEnv env = EvalEnv::spatial(x, y, z);
    double p = detail::finite_or_throw(eval(P, env).real(), "flux integral");
    double qv = detail::finite_or_throw(eval(Q, env).real(), "flux integral");
    double r = detail::finite_or_throw(eval(R, env).real(), "flux integral");
    return p * n[0] + qv * n[1] + r * n[2];
  });
}

double volume_integral(const Expr& g, const Solid3D& s, const QuadSpec& q) {
  validate(q);
  validate_solid(s);
  if (const auto* box = std::get_if<BoxSolid>(&s)) {
    auto rx = detail::axis_rule(box->x0, box->x1, q);
    auto ry = detail::axis_rule(box->y0, box->y1, q);
    auto rz = detail::axis_rule(box->z0, box->z1, q);
    std::vector<double> planes(rz.points.size());
    std::vector<double> rows(ry.points.size());
    std::vector<double> terms(rx.points.size());
    for (std::size_t k = 0; k < rz.points.size(); ++k) {
      for (std::size_t j = 0; j < ry.points.size(); ++j) {
        for (std::size_t i = 0; i < rx.points.size(); ++i) {
          double v = detail::finite_or_throw(
              eval(g, EvalEnv::spatial(rx.points[i], ry.points[j], rz.points[k])).real(),
              "volume integral");
          terms[i] = v * rx.weights[i];
        }
        rows[j] = pairwise_sum(std::span<const double>(terms)) * ry.weights[j];
      }
      planes[k] = pairwise_sum(std::span<const double>(rows)) * rz.weights[k];
    }
    return pairwise_sum(std::span<const double>(planes));
  }

  const auto& gs = std::get<GraphSolid>(s);
  const GaussRule& zrule = gauss_legendre(q.nodes);
  // inner z integration between the graphs at each base sample
  auto column = [&](double x, double y) -> double {
    EvalEnv benv = EvalEnv::planar(x, y);
    double zb = detail::finite_or_throw(eval(gs.z_bottom, benv).real(), "volume integral");
    double zt = detail::finite_or_throw(eval(gs.z_top, benv).real(), "volume integral");
    double mid = (zb + zt) / 2, half = (zt - zb) / 2;
    std::vector<double> terms(zrule.nodes.size());
    for (std::size_t i = 0; i < zrule.nodes.size(); ++i) {
      double z = mid + half * zrule.nodes[i];
      terms[i] = detail::finite_or_throw(eval(g, EvalEnv::spatial(x, y, z)).real(),
                                         "volume integral") *
                 (zrule.weights[i] * half);
    }
    return pairwise_sum(std::span<const double>(terms));
  };

  if (const auto* rect = std::get_if<RectRegion>(&gs.base)) {
    auto rx = detail::axis_rule(rect->x0, rect->x1, q);
    auto ry = detail::axis_rule(rect->y0, rect->y1, q);
    std::vector<double> rows(ry.points.size());
    std::vector<double> terms(rx.points.size());
    for (std::size_t j = 0; j < ry.points.size(); ++j) {
      for (std::size_t i = 0; i < rx.points.size(); ++i)
        terms[i] = column(rx.points[i], ry.points[j]) * rx.weights[i];
      rows[j] = pairwise_sum(std::span<const double>(terms)) * ry.weights[j];
    }
    return pairwise_sum(std::span<const double>(rows));
  }
  const auto& disk = std::get<DiskRegion>(gs.base);
  auto rr = detail::axis_rule(0.0, disk.radius, q);
  auto rt = detail::axis_rule(0.0, 2 * kPi, q);
  std::vector<double> rows(rr.points.size());
  std::vector<double> terms(rt.points.size());
  for (std::size_t i = 0; i < rr.points.size(); ++i) {
    double rad = rr.points[i];
    for (std::size_t j = 0; j < rt.points.size(); ++j) {
      double x = disk.center.real() + rad * std::cos(rt.points[j]);
      double y = disk.center.imag() + rad * std::sin(rt.points[j]);
      terms[j] = column(x, y) * rt.weights[j];
    }
    rows[i] = pairwise_sum(std::span<const double>(terms)) * (rr.weights[i] * rad);
  }
  return pairwise_sum(std::span<const double>(rows));
}

}  // namespace crv
