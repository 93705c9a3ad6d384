#include "crv/fluids.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace crv {

namespace {

Mode spatial() { return Mode::spatial(); }

Expr sp_num(double v) { return Expr::number(v, spatial()); }
Expr sp_var(VarId v) { return Expr::variable(v, spatial()); }

void check_meridional(const Expr& e, const char* what) {
  if (!(e.mode() == spatial()))
    throw Error(ErrKind::InvalidArgument,
                std::string(what) + " must be a spatial-mode expression of (x, z)");
  if (contains_var(e, VarId::Y))
    throw Error(ErrKind::InvalidArgument,
                std::string(what) + " must not depend on y in the meridional plane");
}

EvalEnv meridional_env(Complex point) {
  // grid points are (x, z); y is unused in the plane
  return EvalEnv::spatial(point.real(), 0.0, point.imag());
}

double eval_m(const Expr& e, Complex point) {
  double v = eval(e, meridional_env(point)).real();
  if (!std::isfinite(v))
    throw Error(ErrKind::Evaluation, "non-finite velocity sample off the exclusion zones");
  return v;
}

}  // namespace

PotentialVelocity potential_velocity(const Expr& psi, const GridSampling& g) {
  if (psi.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "potential must be a z-mode expression");
  if (!is_analytic_syntax(psi))
    throw Error(ErrKind::InvalidArgument, "potential must be analytic syntax");

  // M - iN = psi evaluated at x + i z, so M = re psi and N = -im psi
  ComponentPair c = split_components(psi, VarId::X, VarId::Z, spatial());
  Expr m = c.u;
  Expr n = Expr::negate(c.v);

  Expr m_x = symbolic_diff(m, VarId::X);
  Expr m_z = symbolic_diff(m, VarId::Z);
  Expr n_x = symbolic_diff(n, VarId::X);
  Expr n_z = symbolic_diff(n, VarId::Z);

  std::vector<Complex> pts = sample_points(g);
  std::vector<double> c1(pts.size()), c2(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // closedness of M dx + N dz and of N dx - M dz
    c1[i] = eval_m(m_z, pts[i]) - eval_m(n_x, pts[i]);
    c2[i] = eval_m(n_z, pts[i]) + eval_m(m_x, pts[i]);
  }
  PotentialVelocity out{PlanarVelocity{m, n},
                        make_residual_field(pts, std::move(c1)),
                        make_residual_field(std::move(pts), std::move(c2))};
  return out;
}

ResidualField planar_incompressibility(const PlanarVelocity& v, const GridSampling& g) {
  check_meridional(v.q, "velocity component q");
  check_meridional(v.p, "velocity component p");
  Expr qx = symbolic_diff(v.q, VarId::X);
  Expr pz = symbolic_diff(v.p, VarId::Z);
  std::vector<Complex> pts = sample_points(g);
  std::vector<double> res(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    res[i] = eval_m(qx, pts[i]) + eval_m(pz, pts[i]);
  return make_residual_field(std::move(pts), std::move(res));
}

AxisymDivergence axisym_divergence(const PlanarVelocity& v, const GridSampling& g,
                                   double axis_band) {
  check_meridional(v.q, "velocity component q");
  check_meridional(v.p, "velocity component p");
  if (!(axis_band > 0))
    throw Error(ErrKind::InvalidArgument, "axis guard band must be positive");

  Expr qx = symbolic_diff(v.q, VarId::X);
  Expr pz = symbolic_diff(v.p, VarId::Z);

  std::vector<Complex> pts;
  for (Complex p : sample_points(g))
    if (p.imag() >= axis_band) pts.push_back(p);
  if (pts.empty())
    throw Error(ErrKind::InvalidArgument,
                "no samples outside the axis guard band z >= " + std::to_string(axis_band));

  std::vector<double> res(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    res[i] = eval_m(qx, pts[i]) + eval_m(pz, pts[i]) +
             eval_m(v.p, pts[i]) / pts[i].imag();

  // Rotate the meridional pair into space: components along (x, z, y) are
  // (q, p z / rho, p y / rho) with rho = sqrt(y^2 + z^2); the symbolic
  // divergence must reduce to q_x + p_z z/rho + p/rho at every point.
  Expr rho = Expr::apply(FuncId::Sqrt,
                         Expr::add(Expr::pow(sp_var(VarId::Y), sp_num(2.0)),
                                   Expr::pow(sp_var(VarId::Z), sp_num(2.0))));
  Expr comp_z = Expr::div(Expr::mul(v.p, sp_var(VarId::Z)), rho);
  Expr comp_y = Expr::div(Expr::mul(v.p, sp_var(VarId::Y)), rho);
  Expr div3 = Expr::add(Expr::add(symbolic_diff(v.q, VarId::X),
                                  symbolic_diff(comp_z, VarId::Z)),
                        symbolic_diff(comp_y, VarId::Y));

  double max_err = 0;
  const double offsets[] = {0.3, 0.7, -0.4};
  std::size_t stride = std::max<std::size_t>(1, pts.size() / 16);
  for (std::size_t i = 0; i < pts.size(); i += stride) {
    double x = pts[i].real(), z = pts[i].imag();
    for (double y : offsets) {
      double r = std::hypot(y, z);
      EvalEnv env = EvalEnv::spatial(x, y, z);
      double lhs = eval(div3, env).real();
      double rhs = eval_m(qx, pts[i]) + eval_m(pz, pts[i]) * z / r +
                   eval_m(v.p, pts[i]) / r;
      max_err = std::max(max_err, std::abs(lhs - rhs));
    }
  }

  return {make_residual_field(std::move(pts), std::move(res)), max_err};
}

std::pair<Expr, Expr> material_acceleration(const PlanarVelocity& v, double a_scale) {
  check_meridional(v.q, "velocity component q");
  check_meridional(v.p, "velocity component p");
  Expr a2 = sp_num(a_scale * a_scale);
  Expr qx = symbolic_diff(v.q, VarId::X);
  Expr qz = symbolic_diff(v.q, VarId::Z);
  Expr px = symbolic_diff(v.p, VarId::X);
  Expr pz = symbolic_diff(v.p, VarId::Z);
  Expr first = Expr::mul(a2, Expr::add(Expr::mul(v.q, qx), Expr::mul(v.p, qz)));
  Expr second = Expr::mul(a2, Expr::add(Expr::mul(v.q, px), Expr::mul(v.p, pz)));
  return {first, second};
}

// ---------------------------------------------------------------------------
// flow map Jacobian
// ---------------------------------------------------------------------------

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }

double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

VerificationReport flow_jacobian_check(const SpatialField& X,
                                       const std::vector<std::array<double, 3>>& points,
                                       double dt, int steps, double tol) {
  VerificationReport rep;
  rep.kind = "flow_jacobian";
  rep.job = rep.kind;
  rep.tolerance = tol;
  auto start = std::chrono::steady_clock::now();
  try {
    if (!(dt > 0) || steps < 1)
      throw Error(ErrKind::InvalidArgument, "need dt > 0 and steps >= 1");
    if (points.empty())
      throw Error(ErrKind::InvalidArgument, "need at least one sample point");

    rep.inputs["field"] =
        "(" + to_string(X.u) + ", " + to_string(X.v) + ", " + to_string(X.w) + ")";
    rep.inputs["dt"] = std::to_string(dt);
    Expr div = Expr::add(Expr::add(symbolic_diff(X.u, VarId::X),
                                   symbolic_diff(X.v, VarId::Y)),
                         symbolic_diff(X.w, VarId::Z));

    auto field = [&](Vec3 p) -> Vec3 {
      EvalEnv env = EvalEnv::spatial(p.x, p.y, p.z);
      Vec3 f{eval(X.u, env).real(), eval(X.v, env).real(), eval(X.w, env).real()};
      if (!std::isfinite(f.x) || !std::isfinite(f.y) || !std::isfinite(f.z))
        throw Error(ErrKind::Evaluation, "orbit escaped the evaluation domain");
      return f;
    };
    auto advance = [&](Vec3 p) {
      double h = dt / steps;
      for (int s = 0; s < steps; ++s) {
        Vec3 k1 = field(p);
        Vec3 k2 = field(p + (h / 2) * k1);
        Vec3 k3 = field(p + (h / 2) * k2);
        Vec3 k4 = field(p + h * k3);
        p = p + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      return p;
    };

    const double h = 1e-3;  // cube edge
    nlohmann::json per_point = nlohmann::json::array();
    for (const auto& pt : points) {
      Vec3 corners[8];
      Vec3 moved[8];
      for (int c = 0; c < 8; ++c) {
        corners[c] = {pt[0] + ((c & 1) ? h / 2 : -h / 2),
                      pt[1] + ((c & 2) ? h / 2 : -h / 2),
                      pt[2] + ((c & 4) ? h / 2 : -h / 2)};
        moved[c] = advance(corners[c]);
      }
      // deformation gradient by averaged central differences over the
      // corner pairs of each axis
      double grad[3][3] = {};
      const int axis_bit[3] = {1, 2, 4};
      for (int j = 0; j < 3; ++j) {
        for (int c = 0; c < 8; ++c) {
          if (!(c & axis_bit[j])) continue;
          const Vec3& hi = moved[c];
          const Vec3& lo = moved[c ^ axis_bit[j]];
          grad[0][j] += (hi.x - lo.x) / h / 4.0;
          grad[1][j] += (hi.y - lo.y) / h / 4.0;
          grad[2][j] += (hi.z - lo.z) / h / 4.0;
        }
      }
      double jac = det3(grad);
      double slope = (jac - 1.0) / dt;
      double divergence = eval(div, EvalEnv::spatial(pt[0], pt[1], pt[2])).real();
      rep.left.push_back(slope);
      rep.right.push_back(divergence);
      rep.residuals.push_back(std::abs(slope - divergence));
      nlohmann::json entry;
      entry["point"] = {pt[0], pt[1], pt[2]};
      entry["jacobian"] = jac;
      entry["dJ_dt"] = slope;
      entry["div"] = divergence;
      per_point.push_back(entry);
    }
    rep.diagnostics["points"] = per_point;
    rep.diagnostics["dt"] = dt;
    rep.diagnostics["steps"] = steps;
    rep.settle();
  } catch (const Error& e) {
    rep.status = CheckStatus::Error;
    rep.diagnostics["error"] = e.what();
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

VerificationReport bernoulli_check(const Expr& v_of_s, double s_max, const QuadSpec& q,
                                   double tol) {
  VerificationReport rep;
  rep.kind = "bernoulli";
  rep.job = rep.kind;
  rep.tolerance = tol;
  auto start = std::chrono::steady_clock::now();
  try {
    validate(q);
    if (!(v_of_s.mode() == Mode::param(VarId::S)))
      throw Error(ErrKind::InvalidArgument, "speed must be an expression in s");
    if (!(s_max > 0)) throw Error(ErrKind::InvalidArgument, "s_max must be positive");
    rep.inputs["v"] = to_string(v_of_s);
    rep.inputs["s_max"] = std::to_string(s_max);

    auto speed = [&](double sv) { return eval(v_of_s, EvalEnv::param(VarId::S, sv)).real(); };
    for (int i = 0; i <= 512; ++i) {
      double sv = s_max * i / 512.0;
      if (!(speed(sv) > 0))
        throw Error(ErrKind::DomainError,
                    "flow stagnates at s = " + std::to_string(sv));
    }

    Expr dv = symbolic_diff(v_of_s, VarId::S);
    auto rule = detail::composite_rule(0.0, s_max, q.panels, q.nodes);
    std::vector<double> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      double sv = rule.points[i];
      EvalEnv env = EvalEnv::param(VarId::S, sv);
      // along a streamline dv/dt = v dv/ds, so the pressure integrand is -v v'
      terms[i] = -eval(v_of_s, env).real() * eval(dv, env).real() * rule.weights[i];
    }
    double lhs = pairwise_sum(std::span<const double>(terms));
    double v0 = speed(0.0), v1 = speed(s_max);
    double rhs = (v0 * v0 - v1 * v1) / 2;
    rep.left = {lhs};
    rep.right = {rhs};
    rep.residuals = {std::abs(lhs - rhs)};
    rep.diagnostics["v_start"] = v0;
    rep.diagnostics["v_end"] = v1;
    rep.settle();
  } catch (const Error& e) {
    rep.status = CheckStatus::Error;
    rep.diagnostics["error"] = e.what();
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

void write_velocity_csv(std::ostream& os, const PlanarVelocity& v,
                        const ResidualField& residual) {
  auto put = [&](double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << buf;
  };
  os << "x,z,q,p,residual\n";
  for (std::size_t i = 0; i < residual.points.size(); ++i) {
    Complex pt = residual.points[i];
    put(pt.real());
    os << ',';
    put(pt.imag());
    os << ',';
    put(eval_m(v.q, pt));
    os << ',';
    put(eval_m(v.p, pt));
    os << ',';
    put(residual.residuals[i]);
    os << '\n';
  }
}

}  // namespace crv
