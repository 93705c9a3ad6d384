// crverify: batch verification of classical complex-analysis and
// vector-calculus identities over user-supplied expressions, paths and
// regions. Subcommands mirror the library operations; `run` executes a
// JSON config of jobs.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crv/jobs.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  double tol = 0;
  bool has_tol = false;
  int nodes = 16, panels = 8, grid = 64;
  std::string format = "text";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--tol", o.tol, "residual tolerance")->each([&](std::string) {
    o.has_tol = true;
  });
  cmd->add_option("--nodes", o.nodes, "Gauss-Legendre nodes per panel");
  cmd->add_option("--panels", o.panels, "composite panels per segment");
  cmd->add_option("--grid", o.grid, "tensor resolution per axis");
  cmd->add_option("--format", o.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", o.out, "write the report to this file");
}

json parse_spec_arg(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw crv::Error(crv::ErrKind::Config,
                     std::string("config error: ") + what + ": " + e.what());
  }
}

void attach_common(json& job, const CommonOpts& o) {
  if (o.has_tol) job["tol"] = o.tol;
  job["quad"] = {{"nodes", o.nodes}, {"panels", o.panels}, {"grid", o.grid}};
}

int emit(const crv::RunSummary& summary, const CommonOpts& o, bool single) {
  std::ostringstream body;
  if (o.format == "json") {
    if (single)
      body << crv::report_to_json(summary.reports.at(0), true).dump(2) << "\n";
    else
      body << crv::summary_to_json(summary).dump(2) << "\n";
  } else {
    for (const auto& r : summary.reports) body << crv::explain(r);
    if (!single)
      body << summary.passes << " pass, " << summary.violations << " violation, "
           << summary.errors << " error\n";
  }
  if (!o.out.empty()) {
    std::ofstream os(o.out, std::ios::binary);
    if (!os) {
      std::cerr << "cannot open output file " << o.out << "\n";
      return 2;
    }
    os << body.str();
  } else {
    std::cout << body.str();
  }
  return crv::exit_code(summary);
}

int run_single_job(json job, const CommonOpts& o) {
  attach_common(job, o);
  json config;
  config["jobs"] = json::array({job});
  crv::RunSummary summary = crv::run(crv::parse_config(config));
  return emit(summary, o, true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of contour-integral, Green/divergence and potential-flow identities"};
  app.require_subcommand(1);

  // run --config FILE
  CommonOpts run_opts;
  std::string config_path;
  auto* cmd_run = app.add_subcommand("run", "execute a job config");
  cmd_run->add_option("--config", config_path, "JSON job config")->required();
  add_common(cmd_run, run_opts);

  struct SubSpec {
    CLI::App* cmd;
    CommonOpts opts;
    std::map<std::string, std::string> strings;
    std::map<std::string, double> numbers;
    std::map<std::string, long> integers;
  };
  std::vector<std::unique_ptr<SubSpec>> subs;

  auto add_sub = [&](const char* name, const char* help,
                     std::vector<std::pair<const char*, bool>> string_opts,
                     std::vector<std::pair<const char*, double>> number_opts = {},
                     std::vector<std::pair<const char*, long>> integer_opts = {}) {
    auto spec = std::make_unique<SubSpec>();
    spec->cmd = app.add_subcommand(name, help);
    for (auto& [opt, required] : string_opts) {
      auto* o = spec->cmd->add_option(std::string("--") + opt, spec->strings[opt]);
      if (required) o->required();
    }
    for (auto& [opt, dflt] : number_opts) {
      spec->numbers[opt] = dflt;
      spec->cmd->add_option(std::string("--") + opt, spec->numbers[opt]);
    }
    for (auto& [opt, dflt] : integer_opts) {
      spec->integers[opt] = dflt;
      spec->cmd->add_option(std::string("--") + opt, spec->integers[opt]);
    }
    add_common(spec->cmd, spec->opts);
    subs.push_back(std::move(spec));
    return subs.back().get();
  };

  auto* s_integrate = add_sub("integrate", "contour integral of f along a path",
                              {{"f", true}, {"path", true}, {"expect", false}},
                              {}, {{"riemann-n", 0}});
  auto* s_checkcr = add_sub("check-cr", "Cauchy-Riemann residuals on a grid",
                            {{"f", true}, {"region", true}, {"exclude", false}, {"csv", false}},
                            {}, {{"resolution", 41}});
  auto* s_green = add_sub("green", "boundary vs area side of the plane identity",
                          {{"p", true}, {"q", true}, {"region", true}});
  auto* s_goursat = add_sub("goursat", "recursive quadrisection certificate",
                            {{"f", true}, {"rect", true}}, {}, {{"max-depth", 8}});
  auto* s_div = add_sub("divergence", "flux vs volume integral of the divergence",
                        {{"p", true}, {"q", true}, {"r", true}, {"solid", true}});
  auto* s_gauss = add_sub("gauss-volume", "volume by direct and surface routes",
                          {{"solid", true}});
  auto* s_homotopy = add_sub("homotopy", "path-invariance sweep between two paths",
                             {{"f", true}, {"path", true}, {"path2", true}, {"epsilons", false}});
  auto* s_cvg = add_sub("cauchy-green", "contour integral vs its plane reduction",
                        {{"f", true}, {"region", true}});
  auto* s_rect = add_sub("rect-identity", "two 1D reductions over a rectangle boundary",
                         {{"f", true}, {"rect", true}});
  auto* s_gid = add_sub("green-identity", "symmetric volume/boundary identity",
                        {{"u", true}, {"v", true}, {"solid", true}});
  auto* s_wind = add_sub("winding", "winding number of a closed path",
                         {{"path", true}, {"point", true}}, {}, {{"expect", LONG_MIN}});
  auto* s_fpot = add_sub("fluid-potential", "velocity pair of an analytic potential",
                         {{"psi", true}, {"region", true}, {"exclude", false}, {"csv", false}},
                         {}, {{"resolution", 41}});
  auto* s_finc = add_sub("fluid-incompress", "plane incompressibility residual",
                         {{"q", true}, {"p", true}, {"region", true}, {"exclude", false}, {"csv", false}},
                         {}, {{"resolution", 41}});
  auto* s_faxi = add_sub("fluid-axisym", "meridional divergence residual",
                         {{"q", true}, {"p", true}, {"region", true}, {"exclude", false}, {"csv", false}},
                         {{"axis-band", 0.05}}, {{"resolution", 41}});
  auto* s_facc = add_sub("fluid-accel", "convective acceleration expressions",
                         {{"q", true}, {"p", true}}, {{"a", 1.0}});
  auto* s_fjac = add_sub("fluid-jacobian", "flow-map volume rate vs divergence",
                         {{"u", true}, {"v", true}, {"w", true}, {"points", true}},
                         {{"dt", 1e-3}}, {{"steps", 1}});
  auto* s_fber = add_sub("fluid-bernoulli", "streamline pressure identity",
                         {{"v", true}}, {{"s-max", 1.0}});

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      std::ifstream is(config_path);
      if (!is) {
        std::cerr << "cannot open config " << config_path << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << is.rdbuf();
      crv::JobConfig config = crv::parse_config_text(buf.str());
      crv::RunSummary summary = crv::run(config);
      return emit(summary, run_opts, false);
    }

    auto grid_from = [](SubSpec* s) {
      json grid;
      grid["region"] = parse_spec_arg(s->strings["region"], "region");
      grid["resolution"] = s->integers["resolution"];
      if (!s->strings["exclude"].empty())
        grid["exclude"] = parse_spec_arg(s->strings["exclude"], "exclude");
      return grid;
    };
    auto csv_output = [](SubSpec* s, json& job) {
      if (!s->strings["csv"].empty()) job["output"] = {{"csv", s->strings["csv"]}};
    };

    for (auto& sub : subs) {
      if (!sub->cmd->parsed()) continue;
      SubSpec* s = sub.get();
      json job;
      if (s == s_integrate) {
        job["kind"] = s->integers["riemann-n"] > 0 ? "riemann_sum" : "contour_integral";
        job["f"] = s->strings["f"];
        job["path"] = parse_spec_arg(s->strings["path"], "path");
        if (s->integers["riemann-n"] > 0) job["n"] = s->integers["riemann-n"];
        if (!s->strings["expect"].empty())
          job["expect"] = parse_spec_arg(s->strings["expect"], "expect");
      } else if (s == s_checkcr) {
        job["kind"] = "cr_residual";
        job["f"] = s->strings["f"];
        job["grid"] = grid_from(s);
        csv_output(s, job);
      } else if (s == s_green) {
        job["kind"] = "green_check";
        job["p"] = s->strings["p"];
        job["q"] = s->strings["q"];
        job["region"] = parse_spec_arg(s->strings["region"], "region");
      } else if (s == s_goursat) {
        job["kind"] = "goursat_certify";
        job["f"] = s->strings["f"];
        job["rect"] = parse_spec_arg(s->strings["rect"], "rect");
        job["max_depth"] = s->integers["max-depth"];
      } else if (s == s_div) {
        job["kind"] = "divergence_check";
        job["p"] = s->strings["p"];
        job["q"] = s->strings["q"];
        job["r"] = s->strings["r"];
        job["solid"] = parse_spec_arg(s->strings["solid"], "solid");
      } else if (s == s_gauss) {
        job["kind"] = "gauss_volume";
        job["solid"] = parse_spec_arg(s->strings["solid"], "solid");
      } else if (s == s_homotopy) {
        job["kind"] = "homotopy_invariance";
        job["f"] = s->strings["f"];
        job["path"] = parse_spec_arg(s->strings["path"], "path");
        job["path2"] = parse_spec_arg(s->strings["path2"], "path2");
        if (!s->strings["epsilons"].empty())
          job["epsilons"] = parse_spec_arg(s->strings["epsilons"], "epsilons");
      } else if (s == s_cvg) {
        job["kind"] = "cauchy_via_green";
        job["f"] = s->strings["f"];
        job["region"] = parse_spec_arg(s->strings["region"], "region");
      } else if (s == s_rect) {
        job["kind"] = "rectangle_identity";
        job["f"] = s->strings["f"];
        job["rect"] = parse_spec_arg(s->strings["rect"], "rect");
      } else if (s == s_gid) {
        job["kind"] = "green_identity";
        job["u"] = s->strings["u"];
        job["v"] = s->strings["v"];
        job["solid"] = parse_spec_arg(s->strings["solid"], "solid");
      } else if (s == s_wind) {
        job["kind"] = "winding_number";
        job["path"] = parse_spec_arg(s->strings["path"], "path");
        job["point"] = parse_spec_arg(s->strings["point"], "point");
        if (s->integers["expect"] != LONG_MIN) job["expect"] = s->integers["expect"];
      } else if (s == s_fpot) {
        job["kind"] = "potential_velocity";
        job["psi"] = s->strings["psi"];
        job["grid"] = grid_from(s);
        csv_output(s, job);
      } else if (s == s_finc || s == s_faxi) {
        job["kind"] = s == s_finc ? "planar_incompressibility" : "axisym_divergence";
        job["q"] = s->strings["q"];
        job["p"] = s->strings["p"];
        job["grid"] = grid_from(s);
        if (s == s_faxi) job["axis_band"] = s->numbers["axis-band"];
        csv_output(s, job);
      } else if (s == s_facc) {
        job["kind"] = "material_acceleration";
        job["q"] = s->strings["q"];
        job["p"] = s->strings["p"];
        job["a"] = s->numbers["a"];
      } else if (s == s_fjac) {
        job["kind"] = "flow_jacobian";
        job["u"] = s->strings["u"];
        job["v"] = s->strings["v"];
        job["w"] = s->strings["w"];
        job["points"] = parse_spec_arg(s->strings["points"], "points");
        job["dt"] = s->numbers["dt"];
        job["steps"] = s->integers["steps"];
      } else if (s == s_fber) {
        job["kind"] = "bernoulli";
        job["v"] = s->strings["v"];
        job["s_max"] = s->numbers["s-max"];
      }
      return run_single_job(std::move(job), s->opts);
    }
  } catch (const crv::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
