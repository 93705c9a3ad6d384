#include "crv/jobs.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

namespace crv {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& msg) {
  throw Error(ErrKind::Config, "config error: " + msg);
}

double num_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) config_fail(std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::string str_at(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) config_fail(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

Complex point_at(const json& j) {
  if (!j.is_array() || j.size() != 2) config_fail("points are [x, y] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Expr parse_expr_checked(const std::string& text, Mode mode, const char* what) {
  try {
    return parse(text, mode);
  } catch (const Error& e) {
    config_fail(std::string(what) + ": " + e.what());
  }
}

}  // namespace

QuadSpec parse_quad_json(const json& j) {
  QuadSpec q;
  if (j.is_null()) return q;
  if (!j.is_object()) config_fail("quad must be an object");
  if (j.contains("nodes")) q.nodes = j["nodes"].get<int>();
  if (j.contains("panels")) q.panels = j["panels"].get<int>();
  if (j.contains("grid")) q.grid = j["grid"].get<int>();
  validate(q);
  return q;
}

Path parse_path_json(const json& j) {
  if (!j.is_object()) config_fail("path must be an object");
  if (j.contains("segments")) {
    std::vector<Segment> segs;
    for (const auto& s : j["segments"]) {
      std::string kind = str_at(s, "kind");
      if (kind == "line") {
        segs.push_back(LineSeg{point_at(s.at("from")), point_at(s.at("to"))});
      } else if (kind == "arc") {
        const auto& a = s.at("angles");
        segs.push_back(ArcSeg{point_at(s.at("center")), num_at(s, "radius"),
                              a.at(0).get<double>(), a.at(1).get<double>()});
      } else if (kind == "curve") {
        Mode tm = Mode::param(VarId::T);
        const auto& tr = s.at("t");
        segs.push_back(CurveSeg{parse_expr_checked(str_at(s, "x"), tm, "curve x"),
                                parse_expr_checked(str_at(s, "y"), tm, "curve y"),
                                tr.at(0).get<double>(), tr.at(1).get<double>()});
      } else {
        config_fail("unknown segment kind '" + kind + "'");
      }
    }
    return Path(std::move(segs));
  }
  std::string kind = str_at(j, "kind");
  if (kind == "line") return Path::line(point_at(j.at("from")), point_at(j.at("to")));
  if (kind == "circle")
    return Path::circle(point_at(j.at("center")), num_at(j, "radius"),
                        j.contains("turns") ? j["turns"].get<int>() : 1);
  if (kind == "polyline") {
    std::vector<Complex> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_at(p));
    return Path::polyline(pts);
  }
  config_fail("unknown path kind '" + kind + "'");
}

RectRegion parse_rect_json(const json& j) {
  if (j.is_array() && j.size() == 4)
    return RectRegion{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                      j[3].get<double>()};
  if (j.is_object() && j.contains("x") && j.contains("y"))
    return RectRegion{j["x"].at(0).get<double>(), j["x"].at(1).get<double>(),
                      j["y"].at(0).get<double>(), j["y"].at(1).get<double>()};
  config_fail("rect must be [x0, x1, y0, y1] or {x: [..], y: [..]}");
}

Region2D parse_region_json(const json& j) {
  if (!j.is_object()) config_fail("region must be an object");
  std::string kind = str_at(j, "kind");
  if (kind == "rect") return parse_rect_json(j);
  if (kind == "disk") return DiskRegion{point_at(j.at("center")), num_at(j, "radius")};
  if (kind == "polygon") {
    PolygonRegion poly;
    for (const auto& p : j.at("vertices")) poly.vertices.push_back(point_at(p));
    return poly;
  }
  if (kind == "xconvex") {
    Mode ym = Mode::param(VarId::Y);
    const auto& yr = j.at("y");
    return XConvexRegion{yr.at(0).get<double>(), yr.at(1).get<double>(),
                         parse_expr_checked(str_at(j, "x1"), ym, "x1"),
                         parse_expr_checked(str_at(j, "x2"), ym, "x2")};
  }
  config_fail("unknown region kind '" + kind + "'");
}

Solid3D parse_solid_json(const json& j) {
  if (!j.is_object()) config_fail("solid must be an object");
  std::string kind = str_at(j, "kind");
  if (kind == "box") {
    const auto& x = j.at("x");
    const auto& y = j.at("y");
    const auto& z = j.at("z");
    return BoxSolid{x.at(0).get<double>(), x.at(1).get<double>(),
                    y.at(0).get<double>(), y.at(1).get<double>(),
                    z.at(0).get<double>(), z.at(1).get<double>()};
  }
  if (kind == "graph") {
    Region2D base = parse_region_json(j.at("base"));
    BaseRegion br;
    if (auto* rect = std::get_if<RectRegion>(&base)) br = *rect;
    else if (auto* disk = std::get_if<DiskRegion>(&base)) br = *disk;
    else config_fail("graph solid base must be a rect or disk");
    Mode pm = Mode::planar();
    return GraphSolid{br, parse_expr_checked(str_at(j, "z1"), pm, "z1"),
                      parse_expr_checked(str_at(j, "z2"), pm, "z2")};
  }
  config_fail("unknown solid kind '" + kind + "'");
}

GridSampling parse_grid_json(const json& j) {
  if (!j.is_object()) config_fail("grid must be an object");
  GridSampling g{parse_region_json(j.at("region")),
                 j.contains("resolution") ? j["resolution"].get<int>() : 41,
                 {}};
  if (j.contains("exclude"))
    for (const auto& e : j["exclude"])
      g.exclusions.push_back(ExclusionDisk{point_at(e.at("center")), num_at(e, "radius")});
  return g;
}

// ---------------------------------------------------------------------------
// job construction
// ---------------------------------------------------------------------------

namespace {

struct JobContext {
  json spec;
  QuadSpec quad;
  double tol;
  bool has_tol;
  std::string csv_path;

  double tol_or(double fallback) const { return has_tol ? tol : fallback; }
};

void maybe_write_csv(const JobContext& ctx, const ResidualField& f) {
  if (ctx.csv_path.empty()) return;
  std::ofstream os(ctx.csv_path);
  if (!os) throw Error(ErrKind::Evaluation, "cannot open csv path " + ctx.csv_path);
  write_csv(os, f);
}

void maybe_write_csv(const JobContext& ctx, const ResidualField& r1,
                     const ResidualField& r2) {
  if (ctx.csv_path.empty()) return;
  std::ofstream os(ctx.csv_path);
  if (!os) throw Error(ErrKind::Evaluation, "cannot open csv path " + ctx.csv_path);
  write_csv(os, r1, r2);
}

void maybe_write_velocity_csv(const JobContext& ctx, const PlanarVelocity& v,
                              const ResidualField& f) {
  if (ctx.csv_path.empty()) return;
  std::ofstream os(ctx.csv_path);
  if (!os) throw Error(ErrKind::Evaluation, "cannot open csv path " + ctx.csv_path);
  write_velocity_csv(os, v, f);
}

// wraps residual-field style results as a report
VerificationReport field_report(const char* kind, double tol,
                                std::vector<std::pair<const char*, double>> maxima) {
  VerificationReport rep;
  rep.kind = kind;
  rep.job = kind;
  rep.tolerance = tol;
  for (auto& [label, value] : maxima) {
    rep.residuals.push_back(value);
    rep.diagnostics[label] = value;
  }
  rep.settle();
  return rep;
}

Expr spatial_velocity_component(const json& spec, const char* key) {
  Expr e = parse_expr_checked(spec.at(key).get<std::string>(), Mode::spatial(), key);
  if (contains_var(e, VarId::Y))
    config_fail(std::string(key) + " must be a meridional expression of (x, z)");
  return e;
}

std::function<VerificationReport()> build_job(const std::string& kind, JobContext ctx) {
  const json& spec = ctx.spec;
  Mode zm = Mode::z();
  Mode pm = Mode::planar();
  Mode sm = Mode::spatial();

  if (kind == "rectangle_identity") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    RectRegion rect = parse_rect_json(spec.at("rect"));
    return [=] { return rectangle_identity(f, rect, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "homotopy_invariance") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    Homotopy H(parse_path_json(spec.at("path")), parse_path_json(spec.at("path2")));
    std::vector<double> eps;
    if (spec.contains("epsilons"))
      for (const auto& e : spec["epsilons"]) eps.push_back(e.get<double>());
    else
      for (int i = 0; i <= 10; ++i) eps.push_back(i / 10.0);
    return [=] { return homotopy_invariance(f, H, eps, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "green_check") {
    Expr P = parse_expr_checked(str_at(spec, "p"), pm, "p");
    Expr Q = parse_expr_checked(str_at(spec, "q"), pm, "q");
    Region2D r = parse_region_json(spec.at("region"));
    return [=] { return green_check(P, Q, r, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "cauchy_via_green") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    Region2D r = parse_region_json(spec.at("region"));
    return [=] { return cauchy_via_green(f, r, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "goursat_certify") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    RectRegion rect = parse_rect_json(spec.at("rect"));
    int max_depth = spec.contains("max_depth") ? spec["max_depth"].get<int>() : 8;
    return [=] { return goursat_check(f, rect, ctx.tol_or(1e-8), max_depth, ctx.quad); };
  }
  if (kind == "divergence_check") {
    Expr P = parse_expr_checked(str_at(spec, "p"), sm, "p");
    Expr Q = parse_expr_checked(str_at(spec, "q"), sm, "q");
    Expr R = parse_expr_checked(str_at(spec, "r"), sm, "r");
    Solid3D s = parse_solid_json(spec.at("solid"));
    return [=] { return divergence_check(P, Q, R, s, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "gauss_volume") {
    Solid3D s = parse_solid_json(spec.at("solid"));
    return [=] { return gauss_volume(s, ctx.quad, ctx.tol_or(1e-6)); };
  }
  if (kind == "green_identity") {
    Expr U = parse_expr_checked(str_at(spec, "u"), sm, "u");
    Expr V = parse_expr_checked(str_at(spec, "v"), sm, "v");
    Solid3D s = parse_solid_json(spec.at("solid"));
    return [=] { return green_identity_check(U, V, s, ctx.quad, ctx.tol_or(1e-8)); };
  }
  if (kind == "contour_integral" || kind == "riemann_sum") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    Path p = parse_path_json(spec.at("path"));
    bool riemann = kind == "riemann_sum";
    long n = spec.contains("n") ? spec["n"].get<long>() : 100000;
    bool has_expect = spec.contains("expect");
    Complex expect;
    if (has_expect)
      expect = Complex(spec["expect"].at(0).get<double>(), spec["expect"].at(1).get<double>());
    std::string kindname(kind);
    return [=] {
      VerificationReport rep;
      rep.kind = kindname;
      rep.job = kindname;
      rep.tolerance = ctx.tol_or(1e-8);
      try {
        Complex v = riemann ? riemann_sum_integral(f, p, n) : contour_integral(f, p, ctx.quad);
        rep.left = {v.real(), v.imag()};
        if (has_expect) {
          rep.right = {expect.real(), expect.imag()};
          rep.residuals = {std::abs(v - expect)};
        }
        rep.settle();
      } catch (const Error& e) {
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "cr_residual" || kind == "primitive_cr") {
    GridSampling g = parse_grid_json(spec.at("grid"));
    bool primitive = kind == "primitive_cr";
    std::string kindname(kind);
    if (spec.contains("f")) {
      Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
      return [=] {
        VerificationReport rep;
        try {
          CrResiduals r = primitive ? primitive_cr_check(f, g) : cr_residual(f, g);
          maybe_write_csv(ctx, r.r1, r.r2);
          rep = field_report(kindname.c_str(), ctx.tol_or(1e-8),
                             {{"max_r1", r.r1.max_abs}, {"max_r2", r.r2.max_abs}});
          rep.diagnostics["mean_r1"] = r.r1.mean_abs;
          rep.diagnostics["mean_r2"] = r.r2.mean_abs;
        } catch (const Error& e) {
          rep.kind = kindname;
          rep.job = kindname;
          rep.tolerance = ctx.tol_or(1e-8);
          rep.status = CheckStatus::Error;
          rep.diagnostics["error"] = e.what();
        }
        return rep;
      };
    }
    if (primitive) config_fail("primitive_cr needs f");
    Expr u = parse_expr_checked(str_at(spec, "u"), pm, "u");
    Expr v = parse_expr_checked(str_at(spec, "v"), pm, "v");
    return [=] {
      VerificationReport rep;
      try {
        CrResiduals r = cr_residual(u, v, g);
        maybe_write_csv(ctx, r.r1, r.r2);
        rep = field_report("cr_residual", ctx.tol_or(1e-8),
                           {{"max_r1", r.r1.max_abs}, {"max_r2", r.r2.max_abs}});
      } catch (const Error& e) {
        rep.kind = "cr_residual";
        rep.job = rep.kind;
        rep.tolerance = ctx.tol_or(1e-8);
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "exactness_residual") {
    Expr P = parse_expr_checked(str_at(spec, "p"), pm, "p");
    Expr Q = parse_expr_checked(str_at(spec, "q"), pm, "q");
    GridSampling g = parse_grid_json(spec.at("grid"));
    return [=] {
      VerificationReport rep;
      try {
        ResidualField f = exactness_residual(P, Q, g);
        maybe_write_csv(ctx, f);
        rep = field_report("exactness_residual", ctx.tol_or(1e-8),
                           {{"max_abs", f.max_abs}});
        rep.diagnostics["mean_abs"] = f.mean_abs;
      } catch (const Error& e) {
        rep.kind = "exactness_residual";
        rep.job = rep.kind;
        rep.tolerance = ctx.tol_or(1e-8);
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "loop_exactness") {
    Expr P = parse_expr_checked(str_at(spec, "p"), pm, "p");
    Expr Q = parse_expr_checked(str_at(spec, "q"), pm, "q");
    Path loop = parse_path_json(spec.at("loop"));
    std::string expect = spec.contains("expect_verdict")
                             ? spec["expect_verdict"].get<std::string>()
                             : std::string();
    return [=] {
      VerificationReport rep;
      rep.kind = "loop_exactness";
      rep.job = rep.kind;
      rep.tolerance = ctx.tol_or(1e-8);
      try {
        LoopExactness r = loop_exactness_test(P, Q, loop, ctx.quad, rep.tolerance);
        rep.left = {r.clairaut_max};
        rep.right = {r.loop_integral.real(), r.loop_integral.imag()};
        rep.diagnostics["verdict"] = to_string(r.verdict);
        if (!expect.empty() && expect != to_string(r.verdict)) {
          rep.status = CheckStatus::Violation;
          rep.diagnostics["expected_verdict"] = expect;
        } else {
          rep.status = CheckStatus::Pass;
        }
      } catch (const Error& e) {
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "winding_number") {
    Path p = parse_path_json(spec.at("path"));
    Complex a = point_at(spec.at("point"));
    bool has_expect = spec.contains("expect");
    long expect = has_expect ? spec["expect"].get<long>() : 0;
    return [=] {
      VerificationReport rep;
      rep.kind = "winding_number";
      rep.job = rep.kind;
      rep.tolerance = 1e-6;  // integer snap tolerance
      try {
        WindingResult w = winding_number(p, a, ctx.quad);
        rep.left = {double(w.value)};
        rep.diagnostics["raw"] = {w.raw.real(), w.raw.imag()};
        rep.diagnostics["distance_ok"] = w.distance_ok;
        bool ok = w.distance_ok && (!has_expect || w.value == expect);
        if (has_expect) rep.right = {double(expect)};
        rep.status = ok ? CheckStatus::Pass : CheckStatus::Violation;
      } catch (const Error& e) {
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "conformality") {
    Expr f = parse_expr_checked(str_at(spec, "f"), zm, "f");
    Complex a = point_at(spec.at("point"));
    Complex d1 = point_at(spec.at("dir1"));
    Complex d2 = point_at(spec.at("dir2"));
    return [=] {
      VerificationReport rep;
      rep.kind = "conformality";
      rep.job = rep.kind;
      rep.tolerance = ctx.tol_or(1e-8);
      try {
        ConformalityResult r = conformality_check(f, a, d1, d2);
        rep.left = {r.angle_in};
        rep.right = {r.angle_out};
        rep.residuals = {r.residual};
        rep.diagnostics["orientation_preserved"] = r.orientation_preserved;
        rep.settle();
        if (!r.orientation_preserved) rep.status = CheckStatus::Violation;
      } catch (const Error& e) {
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "potential_velocity") {
    Expr psi = parse_expr_checked(str_at(spec, "psi"), zm, "psi");
    GridSampling g = parse_grid_json(spec.at("grid"));
    return [=] {
      VerificationReport rep;
      try {
        PotentialVelocity pv = potential_velocity(psi, g);
        maybe_write_velocity_csv(ctx, pv.velocity, pv.closed_mdx_ndz);
        rep = field_report("potential_velocity", ctx.tol_or(1e-8),
                           {{"max_closed_mdx_ndz", pv.closed_mdx_ndz.max_abs},
                            {"max_closed_ndx_mdz", pv.closed_ndx_mdz.max_abs}});
        rep.diagnostics["q"] = to_string(pv.velocity.q);
        rep.diagnostics["p"] = to_string(pv.velocity.p);
      } catch (const Error& e) {
        rep.kind = "potential_velocity";
        rep.job = rep.kind;
        rep.tolerance = ctx.tol_or(1e-8);
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "planar_incompressibility" || kind == "axisym_divergence") {
    PlanarVelocity v{spatial_velocity_component(spec, "q"),
                     spatial_velocity_component(spec, "p")};
    GridSampling g = parse_grid_json(spec.at("grid"));
    bool axisym = kind == "axisym_divergence";
    double band = spec.contains("axis_band") ? spec["axis_band"].get<double>() : 0.05;
    std::string kindname(kind);
    return [=] {
      VerificationReport rep;
      try {
        if (axisym) {
          AxisymDivergence r = axisym_divergence(v, g, band);
          maybe_write_velocity_csv(ctx, v, r.residual);
          rep = field_report(kindname.c_str(), ctx.tol_or(1e-8),
                             {{"max_abs", r.residual.max_abs},
                              {"reduction_max_error", r.reduction_max_error}});
        } else {
          ResidualField r = planar_incompressibility(v, g);
          maybe_write_velocity_csv(ctx, v, r);
          rep = field_report(kindname.c_str(), ctx.tol_or(1e-8), {{"max_abs", r.max_abs}});
        }
      } catch (const Error& e) {
        rep.kind = kindname;
        rep.job = kindname;
        rep.tolerance = ctx.tol_or(1e-8);
        rep.status = CheckStatus::Error;
        rep.diagnostics["error"] = e.what();
      }
      return rep;
    };
  }
  if (kind == "material_acceleration") {
    PlanarVelocity v{spatial_velocity_component(spec, "q"),
                     spatial_velocity_component(spec, "p")};
    double a = spec.contains("a") ? spec["a"].get<double>() : 1.0;
    return [=] {
      VerificationReport rep;
      rep.kind = "material_acceleration";
      rep.job = rep.kind;
      rep.tolerance = ctx.tol_or(1e-8);
      auto [ax, az] = material_acceleration(v, a);
      rep.diagnostics["accel_x"] = to_string(ax);
      rep.diagnostics["accel_z"] = to_string(az);
      rep.status = CheckStatus::Pass;
      return rep;
    };
  }
  if (kind == "flow_jacobian") {
    SpatialField X{parse_expr_checked(str_at(spec, "u"), sm, "u"),
                   parse_expr_checked(str_at(spec, "v"), sm, "v"),
                   parse_expr_checked(str_at(spec, "w"), sm, "w")};
    std::vector<std::array<double, 3>> pts;
    for (const auto& p : spec.at("points"))
      pts.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    double dt = spec.contains("dt") ? spec["dt"].get<double>() : 1e-3;
    int steps = spec.contains("steps") ? spec["steps"].get<int>() : 1;
    return [=] { return flow_jacobian_check(X, pts, dt, steps, ctx.tol_or(1e-4)); };
  }
  if (kind == "bernoulli") {
    Expr v = parse_expr_checked(str_at(spec, "v"), Mode::param(VarId::S), "v");
    double s_max = num_at(spec, "s_max");
    return [=] { return bernoulli_check(v, s_max, ctx.quad, ctx.tol_or(1e-10)); };
  }
  config_fail("unknown job kind '" + kind + "'");
}

}  // namespace

JobConfig parse_config(const json& j) {
  if (!j.is_object() || !j.contains("jobs") || !j["jobs"].is_array())
    config_fail("top level must be an object with a 'jobs' array");
  JobConfig config;
  int index = 0;
  for (const auto& job : j["jobs"]) {
    if (!job.is_object()) config_fail("each job must be an object");
    std::string kind = str_at(job, "kind");
    JobContext ctx;
    ctx.spec = job;
    ctx.quad = job.contains("quad") ? parse_quad_json(job["quad"]) : QuadSpec{};
    ctx.has_tol = job.contains("tol");
    ctx.tol = ctx.has_tol ? job["tol"].get<double>() : 0.0;
    if (job.contains("output") && job["output"].contains("csv"))
      ctx.csv_path = job["output"]["csv"].get<std::string>();
    std::string name = job.contains("name") ? job["name"].get<std::string>()
                                            : kind + "#" + std::to_string(index);
    try {
      config.jobs.push_back(PreparedJob{name, kind, build_job(kind, std::move(ctx))});
    } catch (const Error& e) {
      if (e.kind == ErrKind::Config) throw;
      config_fail("job '" + name + "': " + e.what());
    } catch (const json::exception& e) {
      config_fail("job '" + name + "': " + e.what());
    }
    ++index;
  }
  return config;
}

JobConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_fail(e.what());
  }
  return parse_config(j);
}

RunSummary run(const JobConfig& config) {
  RunSummary summary;
  auto start = std::chrono::steady_clock::now();
  for (const auto& job : config.jobs) {
    VerificationReport rep;
    try {
      rep = job.execute();
    } catch (const std::exception& e) {
      rep.kind = job.kind;
      rep.status = CheckStatus::Error;
      rep.diagnostics["error"] = e.what();
    }
    rep.job = job.name;
    if (rep.kind.empty()) rep.kind = job.kind;
    switch (rep.status) {
      case CheckStatus::Pass: ++summary.passes; break;
      case CheckStatus::Violation: ++summary.violations; break;
      case CheckStatus::Error: ++summary.errors; break;
    }
    summary.reports.push_back(std::move(rep));
  }
  summary.total_runtime_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
  return summary;
}

nlohmann::ordered_json summary_to_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : s.reports) j["reports"].push_back(report_to_json(r, false));
  j["counts"] = {{"pass", s.passes}, {"violation", s.violations}, {"error", s.errors}};
  nlohmann::ordered_json timing;
  timing["total_ms"] = s.total_runtime_ms;
  nlohmann::ordered_json per_job = nlohmann::ordered_json::array();
  for (const auto& r : s.reports) per_job.push_back(r.runtime_ms);
  timing["per_job_ms"] = per_job;
  j["timing"] = timing;
  return j;
}

int exit_code(const RunSummary& s) {
  if (s.errors > 0) return 2;
  if (s.violations > 0) return 1;
  return 0;
}

}  // namespace crv
