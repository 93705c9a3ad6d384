#include "crv/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace crv {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs the body, converting evaluation failures into error-status reports;
// a finite nonzero residual is a violation, never an exception.
template <typename Fn>
VerificationReport run_check(const char* kind, double tol, Fn&& body) {
  VerificationReport rep;
  rep.kind = kind;
  rep.job = kind;
  rep.tolerance = tol;
  auto start = Clock::now();
  try {
    body(rep);
    rep.settle();
  } catch (const Error& e) {
    rep.status = CheckStatus::Error;
    rep.diagnostics["error"] = e.what();
  }
  rep.runtime_ms = ms_since(start);
  return rep;
}

Complex eval_z(const Expr& f, Complex z) { return eval(f, EvalEnv::for_z(z)); }

Complex finite_c(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw Error(ErrKind::Evaluation, std::string("non-finite sample in ") + what);
  return v;
}

// 1D composite Gauss-Legendre of a complex integrand over [a, b].
template <typename Fn>
Complex integrate_1d(double a, double b, const QuadSpec& q, Fn&& fn) {
  auto rule = detail::composite_rule(a, b, q.panels, q.nodes);
  std::vector<Complex> terms(rule.points.size());
  for (std::size_t i = 0; i < rule.points.size(); ++i)
    terms[i] = fn(rule.points[i]) * rule.weights[i];
  return pairwise_sum(std::span<const Complex>(terms));
}

void push_complex(std::vector<double>& v, Complex z) {
  v.push_back(z.real());
  v.push_back(z.imag());
}

}  // namespace

// ---------------------------------------------------------------------------
// rectangle identity
// ---------------------------------------------------------------------------

VerificationReport rectangle_identity(const Expr& f, const RectRegion& rect,
                                      const QuadSpec& q, double tol) {
  return run_check("rectangle_identity", tol, [&](VerificationReport& rep) {
    validate(q);
    validate_region(Region2D(rect));
    if (f.mode().kind() != Mode::Kind::Z)
      throw Error(ErrKind::InvalidArgument, "rectangle identity expects a z-mode expression");
    rep.inputs["f"] = to_string(f);
    rep.inputs["rect"] = describe(Region2D(rect));

    auto horizontal = [&](double y) {
      return integrate_1d(rect.x0, rect.x1, q, [&](double x) {
        return finite_c(eval_z(f, Complex(x, y)), "rectangle identity");
      });
    };
    auto vertical = [&](double x) {
      return integrate_1d(rect.y0, rect.y1, q, [&](double y) {
        return finite_c(eval_z(f, Complex(x, y)), "rectangle identity");
      });
    };

    Complex e_bottom = horizontal(rect.y0);
    Complex e_top = horizontal(rect.y1);
    Complex e_left = vertical(rect.x0);
    Complex e_right = vertical(rect.x1);

    Complex lhs = e_top - e_bottom;
    Complex rhs = Complex(0, 1) * (e_right - e_left);
    Complex loop = rhs - lhs;  // the boundary integral of f

    // component identities for S = re f, T = im f
    double comp1 = (e_right.real() - e_left.real()) - (e_top.imag() - e_bottom.imag());
    double comp2 = (e_top.real() - e_bottom.real()) + (e_right.imag() - e_left.imag());

    push_complex(rep.left, lhs);
    push_complex(rep.right, rhs);
    rep.residuals = {std::abs(rhs - lhs), std::abs(comp1), std::abs(comp2)};

    rep.diagnostics["loop_integral"] = {loop.real(), loop.imag()};
    Complex wind_raw = loop / Complex(0, 2 * kPi);
    rep.diagnostics["winding_raw"] = {wind_raw.real(), wind_raw.imag()};
    long nearest = std::lround(wind_raw.real());
    if (nearest != 0 && std::abs(wind_raw - Complex(double(nearest), 0)) <= 1e-6)
      rep.diagnostics["winding"] = nearest;
  });
}

// ---------------------------------------------------------------------------
// homotopy invariance
// ---------------------------------------------------------------------------

VerificationReport homotopy_invariance(const Expr& f, const Homotopy& H,
                                       const std::vector<double>& epsilons,
                                       const QuadSpec& q, double tol) {
  return run_check("homotopy_invariance", tol, [&](VerificationReport& rep) {
    validate(q);
    if (f.mode().kind() != Mode::Kind::Z)
      throw Error(ErrKind::InvalidArgument, "homotopy invariance expects a z-mode expression");
    if (epsilons.empty())
      throw Error(ErrKind::InvalidArgument, "need at least one epsilon value");
    rep.inputs["f"] = to_string(f);
    rep.inputs["sweep_size"] = std::to_string(epsilons.size());

    // Every intermediate curve must stay clear of singularities. The scan
    // uses a dyadic grid so blend midpoints are hit exactly; samples that
    // fail to evaluate, come out non-finite, or blow past 1e14 (the curve
    // passes within roundoff of a pole) count as crossings.
    const int scan = 1024;
    auto scan_curve = [&](double eps) {
      for (int j = 0; j <= scan; ++j) {
        double t = double(j) / scan;
        Complex zt = H.at(t, eps);
        bool bad = false;
        try {
          Complex fv = eval_z(f, zt);
          bad = !std::isfinite(fv.real()) || !std::isfinite(fv.imag()) ||
                std::abs(fv) > 1e14;
        } catch (const Error&) {
          bad = true;
        }
        if (bad)
          throw Error(ErrKind::Evaluation,
                      "homotopy crosses singularity at (t=" + std::to_string(t) +
                          ", eps=" + std::to_string(eps) + ")");
      }
    };

    bool analytic = is_analytic_syntax(f);
    Expr fprime = analytic ? symbolic_diff(f, VarId::Z) : Expr();

    std::vector<double> pts = H.breakpoints();
    auto integral_at = [&](double eps) {
      std::vector<Complex> pieces;
      for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        pieces.push_back(integrate_1d(pts[k], pts[k + 1], q, [&](double t) {
          Complex gamma_eps = H.at(t, eps);
          Complex dgamma = H.base().tangent_at(t) + eps * H.deviation_tangent_at(t);
          return finite_c(eval_z(f, gamma_eps), "homotopy sweep") * dgamma;
        }));
      return pairwise_sum(std::span<const Complex>(pieces));
    };
    auto derivative_identity_at = [&](double eps) {
      std::vector<Complex> pieces;
      for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        pieces.push_back(integrate_1d(pts[k], pts[k + 1], q, [&](double t) {
          Complex gamma_eps = H.at(t, eps);
          Complex dgamma = H.base().tangent_at(t) + eps * H.deviation_tangent_at(t);
          Complex w = H.deviation_at(t);
          Complex dw = H.deviation_tangent_at(t);
          return eval_z(fprime, gamma_eps) * w * dgamma + eval_z(f, gamma_eps) * dw;
        }));
      return pairwise_sum(std::span<const Complex>(pieces));
    };

    scan_curve(0.0);
    Complex i0 = integral_at(0.0);

    double max_dev = 0;
    Complex worst = i0;
    nlohmann::json sweep = nlohmann::json::array();
    std::vector<double> deriv_norms;
    for (double eps : epsilons) {
      scan_curve(eps);
      Complex ie = integral_at(eps);
      double dev = std::abs(ie - i0);
      if (dev >= max_dev) {
        max_dev = dev;
        worst = ie;
      }
      nlohmann::json entry;
      entry["eps"] = eps;
      entry["integral"] = {ie.real(), ie.imag()};
      if (analytic) {
        Complex d = derivative_identity_at(eps);
        entry["derivative_identity"] = {d.real(), d.imag()};
        deriv_norms.push_back(std::abs(d));
      }
      sweep.push_back(entry);
    }

    push_complex(rep.left, i0);
    push_complex(rep.right, worst);
    rep.residuals.push_back(max_dev);
    for (double d : deriv_norms) rep.residuals.push_back(d);
    rep.diagnostics["sweep"] = sweep;
    if (!analytic) rep.diagnostics["derivative_identity_skipped"] = "non-analytic syntax";
  });
}

// ---------------------------------------------------------------------------
// Green's formula and the contour reduction
// ---------------------------------------------------------------------------

VerificationReport green_check(const Expr& P, const Expr& Q, const Region2D& r,
                               const QuadSpec& q, double tol) {
  return run_check("green_check", tol, [&](VerificationReport& rep) {
    rep.inputs["P"] = to_string(P);
    rep.inputs["Q"] = to_string(Q);
    rep.inputs["region"] = describe(r);
    Complex boundary = line_integral_pq(P, Q, boundary_of(r), q);
    Expr integrand = Expr::sub(symbolic_diff(Q, VarId::X), symbolic_diff(P, VarId::Y));
    Complex area = area_integral(integrand, r, q);
    push_complex(rep.left, boundary);
    push_complex(rep.right, area);
    rep.residuals = {std::abs(boundary - area)};
  });
}

VerificationReport cauchy_via_green(const Expr& f, const Region2D& r, const QuadSpec& q,
                                    double tol) {
  return run_check("cauchy_via_green", tol, [&](VerificationReport& rep) {
    if (f.mode().kind() != Mode::Kind::Z)
      throw Error(ErrKind::InvalidArgument, "expects a z-mode expression");
    rep.inputs["f"] = to_string(f);
    rep.inputs["region"] = describe(r);
    Complex contour = contour_integral(f, boundary_of(r), q);

    ComponentPair c = split_components(f, VarId::X, VarId::Y, Mode::planar());
    ScalarField2 u(c.u, VarId::X, VarId::Y), v(c.v, VarId::X, VarId::Y);
    double a1 = area_integral_fn(
                    [&](double x, double y) {
                      return Complex(v.d1(x, y) + u.d2(x, y), 0.0);
                    },
                    r, q)
                    .real();
    double a2 = area_integral_fn(
                    [&](double x, double y) {
                      return Complex(u.d1(x, y) - v.d2(x, y), 0.0);
                    },
                    r, q)
                    .real();
    Complex reduced(-a1, a2);

    push_complex(rep.left, contour);
    push_complex(rep.right, reduced);
    rep.residuals = {std::abs(contour - reduced)};
    if (is_analytic_syntax(f)) {
      // both plane integrands vanish identically when the CR equations hold
      rep.residuals.push_back(std::abs(a1));
      rep.residuals.push_back(std::abs(a2));
    }
    rep.diagnostics["A1"] = a1;
    rep.diagnostics["A2"] = a2;
  });
}

// ---------------------------------------------------------------------------
// Goursat certification
// ---------------------------------------------------------------------------

namespace {

struct GoursatDriver {
  const Expr& f;
  const QuadSpec& q;
  double tol;
  int max_depth;
  double total_area;
  GoursatCertificate cert;

  Complex edge(Complex a, Complex b) {
    Complex dir = b - a;
    return integrate_1d(0.0, 1.0, q, [&](double s) {
      return finite_c(eval_z(f, a + s * dir), "goursat edge") * dir;
    });
  }

  void leaf(Complex center, Complex integral, int depth, bool failed) {
    cert.total_estimate += integral;
    cert.certified_bound += std::abs(integral);
    if (failed) {
      cert.depth_exceeded = true;
      if (std::abs(integral) >= cert.worst_magnitude) {
        cert.worst_magnitude = std::abs(integral);
        cert.worst_center = center;
      }
    }
    (void)depth;
  }

  void process(double x0, double y0, double w, double h, int depth, Complex integral) {
    ++cert.squares_examined;
    cert.max_depth_reached = std::max(cert.max_depth_reached, depth);
    double share = (w * h) / total_area;
    if (std::abs(integral) <= tol * share) {
      leaf(Complex(x0 + w / 2, y0 + h / 2), integral, depth, false);
      return;
    }
    if (depth >= max_depth) {
      leaf(Complex(x0 + w / 2, y0 + h / 2), integral, depth, true);
      return;
    }

    double xm = x0 + w / 2, ym = y0 + h / 2;
    double x1 = x0 + w, y1 = y0 + h;
    // half-edges at child scale; internal edges computed once and reused
    // with opposite sign so sibling contributions cancel exactly
    Complex b1 = edge({x0, y0}, {xm, y0});
    Complex b2 = edge({xm, y0}, {x1, y0});
    Complex r1 = edge({x1, y0}, {x1, ym});
    Complex r2 = edge({x1, ym}, {x1, y1});
    Complex t1 = edge({x1, y1}, {xm, y1});
    Complex t2 = edge({xm, y1}, {x0, y1});
    Complex l1 = edge({x0, y1}, {x0, ym});
    Complex l2 = edge({x0, ym}, {x0, y0});
    Complex mv1 = edge({xm, y0}, {xm, ym});
    Complex mv2 = edge({xm, ym}, {xm, y1});
    Complex mh1 = edge({x0, ym}, {xm, ym});
    Complex mh2 = edge({xm, ym}, {x1, ym});

    Complex i_sw = b1 + mv1 - mh1 + l2;
    Complex i_se = b2 + r1 - mh2 - mv1;
    Complex i_ne = mh2 + r2 + t1 - mv2;
    Complex i_nw = mh1 + mv2 + t2 + l1;

    Complex refined = b1 + b2 + r1 + r2 + t1 + t2 + l1 + l2;
    double defect = std::abs(refined - (i_sw + i_se + i_ne + i_nw));
    cert.telescoping_defect = std::max(cert.telescoping_defect, defect);

    process(x0, y0, w / 2, h / 2, depth + 1, i_sw);
    process(xm, y0, w / 2, h / 2, depth + 1, i_se);
    process(xm, ym, w / 2, h / 2, depth + 1, i_ne);
    process(x0, ym, w / 2, h / 2, depth + 1, i_nw);
  }
};

}  // namespace

GoursatCertificate goursat_certify(const Expr& f, const RectRegion& rect, double tol,
                                   int max_depth, const QuadSpec& q) {
  validate(q);
  validate_region(Region2D(rect));
  if (f.mode().kind() != Mode::Kind::Z)
    throw Error(ErrKind::InvalidArgument, "goursat certification expects a z-mode expression");
  if (tol <= 0) throw Error(ErrKind::InvalidArgument, "tolerance must be positive");
  if (max_depth < 0) throw Error(ErrKind::InvalidArgument, "max depth must be >= 0");

  double w = rect.x1 - rect.x0, h = rect.y1 - rect.y0;
  GoursatDriver drv{f, q, tol, max_depth, w * h, {}};
  drv.cert.rect = rect;
  drv.cert.tol = tol;
  drv.cert.max_depth = max_depth;

  Complex root = drv.edge({rect.x0, rect.y0}, {rect.x1, rect.y0}) +
                 drv.edge({rect.x1, rect.y0}, {rect.x1, rect.y1}) +
                 drv.edge({rect.x1, rect.y1}, {rect.x0, rect.y1}) +
                 drv.edge({rect.x0, rect.y1}, {rect.x0, rect.y0});
  drv.process(rect.x0, rect.y0, w, h, 0, root);
  drv.cert.certified = !drv.cert.depth_exceeded;
  return drv.cert;
}

VerificationReport goursat_check(const Expr& f, const RectRegion& rect, double tol,
                                 int max_depth, const QuadSpec& q) {
  return run_check("goursat_certify", tol, [&](VerificationReport& rep) {
    rep.inputs["f"] = to_string(f);
    rep.inputs["rect"] = describe(Region2D(rect));
    rep.inputs["max_depth"] = std::to_string(max_depth);
    GoursatCertificate c = goursat_certify(f, rect, tol, max_depth, q);
    rep.left = {c.certified_bound};
    rep.right = {0.0};
    rep.residuals = {c.certified_bound};
    rep.diagnostics["squares_examined"] = c.squares_examined;
    rep.diagnostics["max_depth_reached"] = c.max_depth_reached;
    rep.diagnostics["telescoping_defect"] = c.telescoping_defect;
    rep.diagnostics["total_estimate"] = {c.total_estimate.real(), c.total_estimate.imag()};
    if (c.depth_exceeded) {
      rep.diagnostics["max_depth_exceeded"] = true;
      rep.diagnostics["worst_square_center"] = {c.worst_center.real(),
                                                c.worst_center.imag()};
      rep.diagnostics["worst_square_magnitude"] = c.worst_magnitude;
    }
  });
}

// ---------------------------------------------------------------------------
// divergence theorem, Gauss volumes, Green identity
// ---------------------------------------------------------------------------

namespace {

Mode spatial() { return Mode::spatial(); }

Expr spatial_var(VarId v) { return Expr::variable(v, spatial()); }

double total_flux(const Expr& P, const Expr& Q, const Expr& R, const Solid3D& s,
                  const QuadSpec& q, nlohmann::json* per_face = nullptr) {
  std::vector<double> parts;
  for (const Face& face : faces_of(s)) {
    parts.push_back(flux_integral(P, Q, R, face, q));
    if (per_face) per_face->push_back(parts.back());
  }
  return pairwise_sum(std::span<const double>(parts));
}

// Detects the area-element blow-up of graph faces near the base boundary.
bool graph_area_element_blowup(const GraphSolid& g) {
  auto bad = [&](const Expr& height) {
    Expr hx = symbolic_diff(height, VarId::X);
    Expr hy = symbolic_diff(height, VarId::Y);
    auto probe = [&](double x, double y) {
      try {
        EvalEnv env = EvalEnv::planar(x, y);
        double gx = eval(hx, env).real();
        double gy = eval(hy, env).real();
        double factor = std::sqrt(1 + gx * gx + gy * gy);
        return !std::isfinite(factor) || factor > 1e3;
      } catch (const Error&) {
        return true;
      }
    };
    const double inset = 1e-9;
    if (const auto* rect = std::get_if<RectRegion>(&g.base)) {
      double dx = (rect->x1 - rect->x0) * inset, dy = (rect->y1 - rect->y0) * inset;
      for (int i = 0; i <= 16; ++i) {
        double x = rect->x0 + (rect->x1 - rect->x0) * i / 16.0;
        double y = rect->y0 + (rect->y1 - rect->y0) * i / 16.0;
        if (probe(x, rect->y0 + dy) || probe(x, rect->y1 - dy) ||
            probe(rect->x0 + dx, y) || probe(rect->x1 - dx, y))
          return true;
      }
    } else {
      const auto& disk = std::get<DiskRegion>(g.base);
      double r = disk.radius * (1.0 - inset);
      for (int i = 0; i < 64; ++i) {
        double th = 2 * kPi * i / 64.0;
        if (probe(disk.center.real() + r * std::cos(th),
                  disk.center.imag() + r * std::sin(th)))
          return true;
      }
    }
    return false;
  };
  return bad(g.z_top) || bad(g.z_bottom);
}

}  // namespace

VerificationReport divergence_check(const Expr& P, const Expr& Q, const Expr& R,
                                    const Solid3D& s, const QuadSpec& q, double tol) {
  return run_check("divergence_check", tol, [&](VerificationReport& rep) {
    rep.inputs["field"] = "(" + to_string(P) + ", " + to_string(Q) + ", " + to_string(R) + ")";
    rep.inputs["solid"] = describe(s);
    nlohmann::json faces = nlohmann::json::array();
    double flux = total_flux(P, Q, R, s, q, &faces);
    Expr div = Expr::add(Expr::add(symbolic_diff(P, VarId::X), symbolic_diff(Q, VarId::Y)),
                         symbolic_diff(R, VarId::Z));
    double volume = volume_integral(div, s, q);
    rep.left = {flux};
    rep.right = {volume};
    rep.residuals = {std::abs(flux - volume)};
    rep.diagnostics["face_fluxes"] = faces;
  });
}

VerificationReport gauss_volume(const Solid3D& s, const QuadSpec& q, double tol) {
  return run_check("gauss_volume", tol, [&](VerificationReport& rep) {
    rep.inputs["solid"] = describe(s);
    bool warn = false;
    if (const auto* g = std::get_if<GraphSolid>(&s)) warn = graph_area_element_blowup(*g);
    if (warn) {
      rep.tolerance = tol * 1e3;
      rep.diagnostics["warning"] = "area element blows up on the graph boundary";
    }

    Expr one = Expr::number(1.0, spatial());
    Expr zero = Expr::number(0.0, spatial());
    double direct = volume_integral(one, s, q);
    double via_z = total_flux(zero, zero, spatial_var(VarId::Z), s, q);
    rep.left = {direct};
    rep.right = {via_z};
    rep.residuals = {std::abs(direct - via_z)};
    rep.diagnostics["direct"] = direct;
    rep.diagnostics["surface_z"] = via_z;
    if (std::holds_alternative<BoxSolid>(s)) {
      double via_x = total_flux(spatial_var(VarId::X), zero, zero, s, q);
      double via_y = total_flux(zero, spatial_var(VarId::Y), zero, s, q);
      rep.right.push_back(via_x);
      rep.right.push_back(via_y);
      rep.residuals.push_back(std::abs(direct - via_x));
      rep.residuals.push_back(std::abs(direct - via_y));
      rep.diagnostics["surface_x"] = via_x;
      rep.diagnostics["surface_y"] = via_y;
    }
  });
}

VerificationReport green_identity_check(const Expr& U, const Expr& V, const Solid3D& s,
                                        const QuadSpec& q, double tol) {
  return run_check("green_identity", tol, [&](VerificationReport& rep) {
    rep.inputs["U"] = to_string(U);
    rep.inputs["V"] = to_string(V);
    rep.inputs["solid"] = describe(s);
    auto laplacian = [](const Expr& e) {
      return Expr::add(
          Expr::add(symbolic_diff(symbolic_diff(e, VarId::X), VarId::X),
                    symbolic_diff(symbolic_diff(e, VarId::Y), VarId::Y)),
          symbolic_diff(symbolic_diff(e, VarId::Z), VarId::Z));
    };
    // dX/dw is the derivative along the interior normal, so the boundary
    // term is minus the outward flux of U grad V
    auto side = [&](const Expr& a, const Expr& b) {
      double vol = volume_integral(Expr::mul(a, laplacian(b)), s, q);
      double flux = total_flux(Expr::mul(a, symbolic_diff(b, VarId::X)),
                               Expr::mul(a, symbolic_diff(b, VarId::Y)),
                               Expr::mul(a, symbolic_diff(b, VarId::Z)), s, q);
      return std::make_pair(vol, -flux);
    };
    auto [vol_uv, bnd_uv] = side(U, V);
    auto [vol_vu, bnd_vu] = side(V, U);
    double lhs = vol_uv + bnd_uv;
    double rhs = vol_vu + bnd_vu;
    rep.left = {lhs};
    rep.right = {rhs};
    rep.residuals = {std::abs(lhs - rhs)};
    rep.diagnostics["volume_term_UV"] = vol_uv;
    rep.diagnostics["boundary_term_UV"] = bnd_uv;
    rep.diagnostics["volume_term_VU"] = vol_vu;
    rep.diagnostics["boundary_term_VU"] = bnd_vu;
  });
}

}  // namespace crv
