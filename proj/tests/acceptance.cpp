// Acceptance suite: every release criterion in one binary, one pass/fail
// line per criterion, nonzero exit on any failure. Tolerances are pinned
// here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "crv/jobs.hpp"
#include "support/helpers.hpp"

using namespace crv;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const Mode kZ = Mode::z();
const Mode kP = Mode::planar();
const Mode kS = Mode::spatial();

int g_failures = 0;

void record(int num, const char* name, bool ok, const std::string& detail = "") {
  std::printf("[%02d] %-46s %s%s%s\n", num, name, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Complex as_complex(const std::vector<double>& v) { return Complex(v.at(0), v.at(1)); }

// 1. Rectangle identity for z^2, exp(z), 1/(z-3) at 1e-10, under a second each.
void criterion_rectangle() {
  QuadSpec q;
  bool ok = true;
  double worst = 0, slowest = 0;
  for (const char* text : {"z^2", "exp(z)", "1/(z-3)"}) {
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep = rectangle_identity(parse(text, kZ), {0, 1, 0, 1}, q, 1e-10);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst = std::max(worst, rep.residual());
    slowest = std::max(slowest, secs);
    ok = ok && rep.status == CheckStatus::Pass && rep.residual() <= 1e-10 && secs < 1.0;
  }
  record(1, "rectangle identity (3 functions)", ok,
         "max residual " + fmt(worst) + ", max runtime " + fmt(slowest) + "s");
}

// 2. Enclosed pole: loop integral 2*pi*i to 1e-8 with winding diagnostic 1.
void criterion_enclosed_pole() {
  QuadSpec q;
  VerificationReport rep =
      rectangle_identity(parse("1/(z-(0.5+0.5*i))", kZ), {0, 1, 0, 1}, q);
  Complex loop(rep.diagnostics.at("loop_integral").at(0).get<double>(),
               rep.diagnostics.at("loop_integral").at(1).get<double>());
  double err = std::abs(loop - Complex(0, 2 * kPi));
  bool winding_one = rep.diagnostics.contains("winding") &&
                     rep.diagnostics["winding"].get<long>() == 1;
  record(2, "enclosed-pole detection", err <= 1e-8 && winding_one,
         "|loop - 2 pi i| = " + fmt(err));
}

// 3. The angular form: closed everywhere it is defined, yet not exact.
void criterion_counterexample() {
  QuadSpec q;
  Expr P = parse("y/(x^2+y^2)", kP);
  Expr Q = parse("-x/(x^2+y^2)", kP);
  GridSampling annulus{RectRegion{-2, 2, -2, 2}, 41, {{Complex(0, 0), 0.5}}};
  ResidualField clairaut = exactness_residual(P, Q, annulus);
  LoopExactness loop = loop_exactness_test(P, Q, Path::circle(0, 1), q);
  double circ_err = std::abs(loop.loop_integral - Complex(-2 * kPi, 0));
  bool ok = clairaut.max_abs <= 1e-10 && loop.clairaut_max <= 1e-10 &&
            circ_err <= 1e-10 &&
            loop.verdict == ExactnessVerdict::NonExactDespiteClosedness;
  record(3, "closed-but-not-exact counterexample", ok,
         "grid residual " + fmt(clairaut.max_abs) + ", |loop + 2 pi| = " + fmt(circ_err));
}

// 4. First-order convergence of the Riemann-sum construction.
void criterion_riemann_order() {
  Path seg = Path::line(0, Complex(1, 1));
  Expr f = parse("exp(z)", kZ);
  const Complex exact = std::exp(Complex(1, 1)) - 1.0;
  std::vector<double> errs;
  for (int k = 7; k <= 12; ++k)
    errs.push_back(std::abs(riemann_sum_integral(f, seg, 1L << k) - exact));
  double order = 0;
  bool ok = true;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    double ratio = errs[i] / errs[i + 1];
    ok = ok && ratio >= 1.8 && ratio <= 2.2;
    order += std::log2(ratio);
  }
  order /= double(errs.size() - 1);
  ok = ok && order >= 0.9 && order <= 1.1;
  record(4, "Riemann-sum convergence order", ok, "order " + fmt(order));
}

// 5. Homotopy sweep of z^3 with the derivative identity.
void criterion_homotopy() {
  QuadSpec q;
  std::vector<double> eps;
  for (int i = 0; i <= 10; ++i) eps.push_back(i / 10.0);
  Homotopy H(Path::line(0, 1), Path::polyline({Complex(0, 0), Complex(0, 1), Complex(1, 0)}));
  VerificationReport rep = homotopy_invariance(parse("z^3", kZ), H, eps, q, 1e-9);
  bool ok = rep.status == CheckStatus::Pass;
  double max_deriv = 0;
  for (const auto& entry : rep.diagnostics.at("sweep")) {
    Complex d(entry.at("derivative_identity").at(0).get<double>(),
              entry.at("derivative_identity").at(1).get<double>());
    max_deriv = std::max(max_deriv, std::abs(d));
  }
  ok = ok && rep.residuals.at(0) <= 1e-9 && max_deriv <= 1e-9;
  record(5, "homotopy invariance of z^3", ok,
         "sweep dev " + fmt(rep.residuals.at(0)) + ", derivative " + fmt(max_deriv));
}

// 6. Green's formula on the disk, linear and cubic pairs.
void criterion_green() {
  QuadSpec q;
  VerificationReport lin =
      green_check(parse("-y", kP), parse("x", kP), DiskRegion{0, 1}, q, 1e-9);
  bool ok = lin.status == CheckStatus::Pass &&
            std::abs(lin.left.at(0) - 2 * kPi) <= 1e-9 &&
            std::abs(lin.right.at(0) - 2 * kPi) <= 1e-9;
  VerificationReport cub =
      green_check(parse("-y^3", kP), parse("x^3", kP), DiskRegion{0, 1}, q, 1e-8);
  ok = ok && cub.status == CheckStatus::Pass &&
       std::abs(cub.left.at(0) - 3 * kPi / 2) <= 1e-8 &&
       std::abs(cub.right.at(0) - 3 * kPi / 2) <= 1e-8;
  record(6, "Green's formula on the disk", ok,
         "sides " + fmt(lin.left.at(0)) + " / " + fmt(cub.left.at(0)));
}

// 7. Contour-to-plane reduction for |z|^2 and exp(z).
void criterion_cauchy_green() {
  QuadSpec q;
  VerificationReport mod = cauchy_via_green(parse("abs(z)^2", kZ), RectRegion{0, 1, 0, 1}, q, 1e-9);
  double err = std::abs(as_complex(mod.left) - Complex(-1, 1));
  bool ok = err <= 1e-9 && mod.residuals.at(0) <= 1e-9;
  VerificationReport ent = cauchy_via_green(parse("exp(z)", kZ), RectRegion{0, 1, 0, 1}, q, 1e-10);
  ok = ok && ent.status == CheckStatus::Pass && ent.residual() <= 1e-10;
  record(7, "contour integral via plane reduction", ok,
         "| integral - (-1+i) | = " + fmt(err));
}

// 8. Quadrisection certificates: defect bound, certification, violation.
void criterion_goursat() {
  QuadSpec q;
  bool defect_ok = true;
  long max_squares = 0;
  struct Case { const char* text; int depth; } cases[] = {
      {"exp(z)", 8}, {"z^2", 8}, {"conj(z)", 5}, {"1/(z-(0.5+0.5*i))", 10}};
  for (const auto& [text, depth] : cases) {
    GoursatCertificate c = goursat_certify(parse(text, kZ), {0, 1, 0, 1}, 1e-10, depth, q);
    defect_ok = defect_ok && c.telescoping_defect <= 1e-12 * double(c.squares_examined);
    max_squares = std::max(max_squares, c.squares_examined);
  }
  GoursatCertificate exp_cert = goursat_certify(parse("exp(z)", kZ), {0, 1, 0, 1}, 1e-10, 8, q);
  GoursatCertificate conj_cert = goursat_certify(parse("conj(z)", kZ), {0, 1, 0, 1}, 1e-10, 5, q);
  bool ok = defect_ok && exp_cert.certified && exp_cert.certified_bound <= 1e-10 &&
            !conj_cert.certified && std::abs(conj_cert.certified_bound - 2.0) <= 1e-9;
  record(8, "quadrisection certificates", ok,
         "conj bound " + fmt(conj_cert.certified_bound) + ", squares up to " +
             std::to_string(max_squares));
}

// 9. Divergence theorem on the unit box.
void criterion_divergence() {
  QuadSpec q;
  VerificationReport lin = divergence_check(parse("x", kS), parse("y", kS),
                                            parse("z", kS), BoxSolid{0, 1, 0, 1, 0, 1}, q, 1e-10);
  VerificationReport quad = divergence_check(parse("x^2", kS), parse("x*y", kS),
                                             parse("y*z", kS), BoxSolid{0, 1, 0, 1, 0, 1}, q, 1e-9);
  bool ok = lin.status == CheckStatus::Pass &&
            std::abs(lin.left.at(0) - 3.0) <= 1e-10 &&
            std::abs(lin.right.at(0) - 3.0) <= 1e-10 &&
            quad.status == CheckStatus::Pass &&
            std::abs(quad.left.at(0) - 2.0) <= 1e-9 &&
            std::abs(quad.right.at(0) - 2.0) <= 1e-9;
  record(9, "divergence theorem on the box", ok,
         "flux " + fmt(lin.left.at(0)) + " and " + fmt(quad.left.at(0)));
}

// 10. Volume four ways, including the degraded-tolerance hemisphere.
void criterion_gauss_volume() {
  QuadSpec q;
  VerificationReport box = gauss_volume(BoxSolid{0, 1, 0, 1, 0, 1}, q);
  bool ok = box.status == CheckStatus::Pass && std::abs(box.left.at(0) - 1.0) <= 1e-12;
  for (double v : box.right) ok = ok && std::abs(v - 1.0) <= 1e-12;

  GraphSolid cap{DiskRegion{0, 1}, parse("1-x^2-y^2", kP), parse("0", kP)};
  VerificationReport par = gauss_volume(Solid3D(cap), q, 1e-6);
  ok = ok && par.status == CheckStatus::Pass &&
       std::abs(par.left.at(0) - kPi / 2) <= 1e-6 &&
       std::abs(par.right.at(0) - kPi / 2) <= 1e-6;

  GraphSolid hemi{DiskRegion{0, 1}, parse("sqrt(1-x^2-y^2)", kP), parse("0", kP)};
  VerificationReport hv = gauss_volume(Solid3D(hemi), q, 1e-6);
  ok = ok && hv.status == CheckStatus::Pass && hv.diagnostics.contains("warning") &&
       std::abs(hv.left.at(0) - 2 * kPi / 3) <= 1e-3 &&
       std::abs(hv.right.at(0) - 2 * kPi / 3) <= 1e-3;
  record(10, "volume by surface routes", ok,
         "hemisphere off by " + fmt(std::abs(hv.left.at(0) - 2 * kPi / 3)));
}

// 11. Symmetric Green identity with the 6 - 6 cancellation.
void criterion_green_identity() {
  QuadSpec q;
  VerificationReport rep = green_identity_check(parse("1", kS), parse("x^2+y^2+z^2", kS),
                                                BoxSolid{0, 1, 0, 1, 0, 1}, q, 1e-9);
  bool ok = rep.status == CheckStatus::Pass && std::abs(rep.left.at(0)) <= 1e-9 &&
            std::abs(rep.right.at(0)) <= 1e-9;
  record(11, "symmetric volume/boundary identity", ok,
         "sides " + fmt(rep.left.at(0)) + " / " + fmt(rep.right.at(0)));
}

// 12. Fluid checks: meridional source, flow-map rate, streamline pressure.
void criterion_fluids() {
  QuadSpec q;
  PlanarVelocity source{parse("x/(x^2+z^2)^1.5", kS), parse("z/(x^2+z^2)^1.5", kS)};
  GridSampling g{RectRegion{0.2, 2, 0.2, 2}, 21, {}};
  AxisymDivergence ax = axisym_divergence(source, g, 0.05);
  bool ok = ax.residual.max_abs <= 1e-10;

  SpatialField X{parse("x", kS), parse("y", kS), parse("z", kS)};
  std::vector<std::array<double, 3>> pts{{0.3, -0.2, 0.5}, {1, 1, 1}};
  VerificationReport jac = flow_jacobian_check(X, pts, 1e-5, 1, 1e-4);
  ok = ok && jac.status == CheckStatus::Pass;
  for (double slope : jac.left) ok = ok && std::abs(slope - 3.0) <= 1e-4;
  VerificationReport jac_half = flow_jacobian_check(X, {pts[0]}, 5e-6, 1, 1e-4);
  double ratio = jac.residuals.at(0) / jac_half.residuals.at(0);
  ok = ok && ratio >= 1.7 && ratio <= 2.3;

  VerificationReport bern = bernoulli_check(parse("1/(1+s)", Mode::param(VarId::S)), 1.0, q, 1e-10);
  ok = ok && bern.status == CheckStatus::Pass &&
       std::abs(bern.left.at(0) - 0.375) <= 1e-10 &&
       std::abs(bern.right.at(0) - 0.375) <= 1e-10;
  record(12, "fluid checks", ok,
         "axisym " + fmt(ax.residual.max_abs) + ", dJ/dt ratio " + fmt(ratio) +
             ", pressure " + fmt(bern.left.at(0)));
}

// 13. Four engines agree on five functions over three rectangles.
void criterion_cross_engine() {
  QuadSpec q;
  const char* functions[] = {"exp(z)", "z^3", "sin(z)", "z*exp(z)", "1/(z-3)"};
  const RectRegion regions[] = {{0, 1, 0, 1}, {-1, 0, -1, 0}, {-0.5, 0.5, -0.5, 0.5}};
  std::vector<double> eps;
  for (int i = 0; i <= 4; ++i) eps.push_back(i / 4.0);
  bool ok = true;
  int combos = 0;
  for (const char* text : functions) {
    Expr f = parse(text, kZ);
    for (const RectRegion& rect : regions) {
      ok = ok && rectangle_identity(f, rect, q, 1e-8).status == CheckStatus::Pass;
      ok = ok && cauchy_via_green(f, rect, q, 1e-8).status == CheckStatus::Pass;
      ok = ok && goursat_check(f, rect, 1e-8, 8, q).status == CheckStatus::Pass;
      Complex ll(rect.x0, rect.y0), lr(rect.x1, rect.y0);
      Complex ul(rect.x0, rect.y1), ur(rect.x1, rect.y1);
      Homotopy H(Path::polyline({ll, lr, ur}), Path::polyline({ll, ul, ur}));
      ok = ok && homotopy_invariance(f, H, eps, q, 1e-8).status == CheckStatus::Pass;
      ++combos;
    }
  }
  record(13, "cross-engine agreement", ok, std::to_string(combos * 4) + " engine runs");
}

// 14. Parser precedence, round-trip property, derivative consistency.
void criterion_parser() {
  bool ok = eval(parse("1+2*i^2", kZ), EvalEnv::for_z(0)) == Complex(-1, 0) &&
            eval(parse("2^3^2", kZ), EvalEnv::for_z(0)) == Complex(512, 0) &&
            eval(parse("-2^2", kZ), EvalEnv::for_z(0)) == Complex(-4, 0);

  int round_trips = 0;
  for (Mode mode : {kZ, kP, kS, Mode::param(VarId::T)}) {
    testing::ExprGen gen(mode, 0xACCE5 + round_trips);
    for (int i = 0; i < 250; ++i) {
      Expr e = gen.tree(1 + i % 5);
      if (!same_structure(e, parse(to_string(e), mode))) ok = false;
      ++round_trips;
    }
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-1, 1);
  struct Sample { const char* text; Complex pole; };
  const Sample samples[] = {{"z^3", {1e9, 0}},    {"exp(z)", {1e9, 0}},
                            {"sin(z)*z", {1e9, 0}}, {"1/(z-3)", {3, 0}},
                            {"sqrt(z+5)", {-5, 0}}};
  for (const auto& s : samples) {
    Expr f = parse(s.text, kZ);
    Expr df = symbolic_diff(f, VarId::Z);
    for (int i = 0; i < 25; ++i) {
      Complex z(coord(rng), coord(rng));
      if (std::abs(z - s.pole) < 0.5) continue;
      double h = 1e-6 * (1 + std::abs(z));
      Complex fd =
          (eval(f, EvalEnv::for_z(z + h)) - eval(f, EvalEnv::for_z(z - h))) / (2 * h);
      Complex exact = eval(df, EvalEnv::for_z(z));
      if (std::abs(fd - exact) > 1e-6 * (1 + std::abs(exact))) ok = false;
    }
  }
  record(14, "parser and derivatives", ok,
         std::to_string(round_trips) + " round-trips");
}

std::string locate_cli(const char* argv0) {
  if (const char* env = std::getenv("CRVERIFY_BIN")) return env;
  // default build layout: tests/crv_acceptance next to tools/crverify
  fs::path guess = fs::path(argv0).parent_path().parent_path() / "tools" / "crverify";
  std::error_code ec;
  if (fs::exists(guess, ec)) return guess.string();
  return "";
}

// 15. Command-line contract: exit codes and byte-stable reports.
void criterion_cli(const std::string& bin_path) {
  const char* bin = bin_path.c_str();
  if (bin_path.empty()) {
    record(15, "command-line contract", false, "crverify binary not found");
    return;
  }
  auto temp = [](const char* stem) {
    return fs::temp_directory_path() / (std::string("crv_accept_") + stem + "_" +
                                        std::to_string(::getpid()));
  };
  auto run_cli = [&](const std::string& config, const fs::path& out) {
    fs::path cfg = temp("cfg");
    std::ofstream(cfg) << config;
    int rc = std::system((std::string(bin) + " run --config " + cfg.string() +
                          " --format json --out " + out.string() + " >/dev/null 2>&1")
                             .c_str());
    fs::remove(cfg);
    return WEXITSTATUS(rc);
  };
  const std::string pass_cfg = R"raw({"jobs": [{"kind": "rectangle_identity",
    "f": "exp(z)", "rect": [0,1,0,1], "tol": 1e-10}]})raw";
  const std::string viol_cfg = R"raw({"jobs": [{"kind": "goursat_certify",
    "f": "conj(z)", "rect": [0,1,0,1], "tol": 1e-8, "max_depth": 4}]})raw";
  const std::string err_cfg = R"raw({"jobs": [{"kind": "contour_integral",
    "f": "exp(1/(z-1)^2)", "path": {"kind": "line", "from": [0,0], "to": [2,0]}}]})raw";

  fs::path out1 = temp("o1"), out2 = temp("o2");
  bool ok = run_cli(pass_cfg, out1) == 0 && run_cli(viol_cfg, out2) == 1 &&
            run_cli(err_cfg, out2) == 2;

  fs::path bad = temp("bad");
  std::ofstream(bad) << "{\"jobs\": [{\"kind\": \"rectangle_identity\", \"f\": \"exp(\"}]}";
  ok = ok && WEXITSTATUS(std::system((std::string(bin) + " run --config " +
                                      bad.string() + " >/dev/null 2>&1")
                                         .c_str())) == 2;
  fs::remove(bad);

  ok = ok && run_cli(pass_cfg, out1) == 0 && run_cli(pass_cfg, out2) == 0;
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream buf;
    buf << is.rdbuf();
    return buf.str();
  };
  auto j1 = nlohmann::json::parse(slurp(out1));
  auto j2 = nlohmann::json::parse(slurp(out2));
  j1.erase("timing");
  j2.erase("timing");
  ok = ok && j1.dump() == j2.dump();
  fs::remove(out1);
  fs::remove(out2);
  record(15, "command-line contract", ok);
}

}  // namespace

int main(int, char** argv) {
  criterion_rectangle();
  criterion_enclosed_pole();
  criterion_counterexample();
  criterion_riemann_order();
  criterion_homotopy();
  criterion_green();
  criterion_cauchy_green();
  criterion_goursat();
  criterion_divergence();
  criterion_gauss_volume();
  criterion_green_identity();
  criterion_fluids();
  criterion_cross_engine();
  criterion_parser();
  criterion_cli(locate_cli(argv[0]));

  if (g_failures == 0) {
    std::printf("all 15 criteria PASS\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
