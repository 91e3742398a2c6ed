// Batch front end: reads a run configuration, executes one subcommand and
// writes CSV/JSON/VTK artifacts. Exit status: 0 when every check passes,
// 1 when a check fails, 2 on configuration or solver errors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fluidfluid/config.hpp"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/evolution.hpp"
#include "fluidfluid/io.hpp"
#include "fluidfluid/pressure_maps.hpp"
#include "fluidfluid/simd/kernels.hpp"
#include "fluidfluid/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fluidfluid;

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kTraceTol = 1e-14;
constexpr double kEocMin = 0.9;
constexpr double kExactTol = 1e-10;
constexpr double kContractionTol = 1e-12;
constexpr double kInfSupRatioMax = 2.0;

struct Context {
  RunConfig cfg;
  fs::path out;
  std::uint64_t seed = 1;
};

void write_json(const fs::path& path, const json& j) { io::write_text(path, j.dump(2) + "\n"); }

template <class Writer>
std::string render(Writer&& write) {
  std::ostringstream ss;
  write(ss);
  return ss.str();
}

json config_json(const RunConfig& c) {
  return {{"mesh", {{"nx", c.nx}, {"ny_half", c.ny_half}}},
          {"params", {{"lambda", c.params.lambda_res}, {"nu", c.params.nu}, {"lame_lambda", c.params.lame_lambda}}},
          {"flow", {{"preset", to_string(c.flow)}}},
          {"solve", {{"data", c.solve_data}}},
          {"mms", {{"case", to_string(c.mms_case)}, {"levels", c.mms_levels}}},
          {"time",
           {{"t", c.t}, {"n", c.n}, {"project_initial", c.project_initial}, {"initial", to_string(c.initial)},
            {"snapshots", c.snapshots}}},
          {"infsup", {{"levels", c.infsup_levels}}}};
}

json check(const std::string& name, bool pass, double value, double limit) {
  return {{"name", name}, {"pass", pass}, {"value", value}, {"limit", limit}};
}

bool all_pass(const json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("pass").get<bool>(); });
}

std::shared_ptr<const Mesh> make_mesh(int nx, int ny_half) {
  return std::make_shared<const Mesh>(build_two_domain_mesh(nx, ny_half));
}

int run_solve(const Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const auto mesh = make_mesh(c.nx, c.ny_half);
  const BackgroundFlow flow(c.flow);
  const CoupledSolver solver(mesh, c.params, flow);

  std::optional<MmsCase> mms;
  if (c.solve_data != "zero") mms.emplace(parse_mms_kind(c.solve_data), c.params, flow);
  const ResolventData data = mms ? solver.data_from_functions(mms->f_fn(), mms->g_fn(), mms->h_fn(), mms->jump_fn())
                                 : solver.data_from_functions({}, {}, {});
  SolveReport report;
  CoupledState x = solver.solve(data, &report);
  report.coercivity_sample = solver.coercivity_sample(8, ctx.seed);

  const HarmonicExtension ext(mesh);
  x.p_minus = mms ? reconstruct_p_minus(ext, x, c.params, mms->h_fn(), mms->jump_fn())
                  : reconstruct_p_minus(ext, x, c.params);

  json checks = json::array();
  checks.push_back(check("saddle_residual", report.saddle_residual <= kResidualTol, report.saddle_residual, kResidualTol));
  checks.push_back(check("upper_lifting_residual", report.lifting_residual_max <= kResidualTol,
                         report.lifting_residual_max, kResidualTol));
  checks.push_back(check("upper_particular_residual", report.particular_residual <= kResidualTol,
                         report.particular_residual, kResidualTol));
  checks.push_back(check("weak_divergence", report.divergence_residual <= kResidualTol, report.divergence_residual,
                         kResidualTol));
  checks.push_back(check("interface_trace", report.trace_mismatch <= kTraceTol, report.trace_mismatch, kTraceTol));

  json j;
  j["command"] = "solve";
  j["config"] = config_json(c);
  j["report"] = io::to_json(report);
  j["h_norm"] = x.h_norm;
  if (mms) {
    const MmsLevel e = mms_errors(x, *mms);
    j["errors"] = {{"err_um_h1", e.err_um_h1}, {"err_pm_l2", e.err_pm_l2}, {"err_up_h1", e.err_up_h1},
                   {"err_pp_l2", e.err_pp_l2}};
  }
  j["checks"] = checks;
  j["pass"] = all_pass(checks);

  io::write_text(ctx.out / "mesh.vtk", render([&](std::ostream& os) { io::write_vtk_mesh(os, *mesh); }));
  io::write_text(ctx.out / "solution.vtk", render([&](std::ostream& os) { io::write_vtk_state(os, x); }));
  write_json(ctx.out / "solve.json", j);
  return j["pass"].get<bool>() ? 0 : 1;
}

int run_evolve(const Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const auto mesh = make_mesh(c.nx, c.ny_half);
  const BackgroundFlow flow(c.flow);
  MaterialParams p = c.params;
  p.lambda_res = c.n / c.t;
  const CoupledSolver solver(mesh, p, flow);

  const MmsCase init(c.initial, p, flow);
  const CoupledState x0 = initial_state(
      solver, [&](const Point& q) { return init.u_plus(q).value; }, [&](const Point& q) { return init.p_plus(q).value[0]; },
      [&](const Point& q) { return init.u_minus(q).value; }, c.project_initial);

  const bool keep = c.snapshots > 0;
  const Trajectory tr = evolve(solver, x0, c.t, c.n, keep);

  double worst_growth = 0.0;
  bool contraction = true;
  for (std::size_t k = 1; k < tr.h_norms.size(); ++k) {
    const double growth = tr.h_norms[k] - tr.h_norms[k - 1];
    worst_growth = std::max(worst_growth, growth);
    if (growth > kContractionTol * std::max(1.0, tr.h_norms[k - 1])) contraction = false;
  }
  json checks = json::array();
  checks.push_back(check("contraction", contraction, worst_growth, kContractionTol));

  if (keep) {
    const int every = std::max(1, c.n / c.snapshots);
    for (std::size_t k = 0; k < tr.states.size(); k += static_cast<std::size_t>(every)) {
      std::ostringstream name;
      name << "snapshot_" << k << ".vtk";
      io::write_text(ctx.out / name.str(), render([&](std::ostream& os) { io::write_vtk_state(os, tr.states[k]); }));
    }
  }

  json j;
  j["command"] = "evolve";
  j["config"] = config_json(c);
  j["lambda"] = tr.lambda;
  j["steps"] = tr.n;
  j["initial_h_norm"] = tr.h_norms.front();
  j["final_h_norm"] = tr.h_norms.back();
  j["checks"] = checks;
  j["pass"] = all_pass(checks);
  io::write_text(ctx.out / "trajectory.csv", render([&](std::ostream& os) { io::write_trajectory_csv(os, tr); }));
  write_json(ctx.out / "evolve.json", j);
  return j["pass"].get<bool>() ? 0 : 1;
}

int run_mms(const Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const MmsTable t = run_mms(c.mms_case, c.mms_levels, c.params, BackgroundFlow(c.flow), ctx.seed);

  json checks = json::array();
  checks.push_back(check("case_invariants", t.invariant_violations.empty(),
                         static_cast<double>(t.invariant_violations.size()), 0.0));
  if (c.mms_case == MmsKind::InSpace) {
    // The exact solution lies in the discrete space: errors vanish and rates are meaningless.
    double worst = 0.0;
    for (const auto& l : t.levels) worst = std::max({worst, l.err_um_h1, l.err_pm_l2, l.err_up_h1, l.err_pp_l2});
    checks.push_back(check("reproduction_error", worst <= kExactTol, worst, kExactTol));
  } else {
    const double m = t.min_eoc();
    checks.push_back(check("min_eoc", m >= kEocMin, m, kEocMin));
  }
  double worst_res = 0.0;
  for (const auto& l : t.levels) worst_res = std::max(worst_res, l.report.saddle_residual);
  checks.push_back(check("saddle_residual", worst_res <= kResidualTol, worst_res, kResidualTol));

  json j;
  j["command"] = "mms";
  j["config"] = config_json(c);
  j["seed"] = ctx.seed;
  j["table"] = io::to_json(t);
  j["checks"] = checks;
  j["pass"] = all_pass(checks);
  io::write_text(ctx.out / "mms.csv", render([&](std::ostream& os) { io::write_mms_csv(os, t); }));
  write_json(ctx.out / "mms.json", j);
  return j["pass"].get<bool>() ? 0 : 1;
}

int run_infsup(const Context& ctx) {
  std::vector<InfSupResult> rows;
  for (int nx : ctx.cfg.infsup_levels) rows.push_back(infsup_probe(make_mesh(nx, std::max(1, nx / 2))));
  double lo = rows.front().beta, hi = rows.front().beta;
  for (const auto& r : rows) lo = std::min(lo, r.beta), hi = std::max(hi, r.beta);
  const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();

  json checks = json::array();
  checks.push_back(check("beta_positive", lo > 0.0, lo, 0.0));
  checks.push_back(check("beta_ratio", ratio <= kInfSupRatioMax, lo > 0.0 ? ratio : -1.0, kInfSupRatioMax));
  json rj = json::array();
  for (const auto& r : rows) rj.push_back(io::to_json(r));

  json j;
  j["command"] = "infsup";
  j["config"] = config_json(ctx.cfg);
  j["rows"] = rj;
  j["beta_min"] = lo;
  j["beta_max"] = hi;
  j["checks"] = checks;
  j["pass"] = all_pass(checks);
  io::write_text(ctx.out / "infsup.csv", render([&](std::ostream& os) { io::write_infsup_csv(os, rows); }));
  write_json(ctx.out / "infsup.json", j);
  return j["pass"].get<bool>() ? 0 : 1;
}

int run_report(const Context& ctx) {
  json runs = json::object();
  json missing = json::array();
  bool pass = true;
  for (const char* name : {"solve", "evolve", "mms", "infsup"}) {
    const fs::path p = ctx.out / (std::string(name) + ".json");
    if (!fs::exists(p)) {
      missing.push_back(name);
      continue;
    }
    const json r = io::read_json(p);
    if (!r.contains("pass") || !r["pass"].is_boolean()) throw ConfigError(p.string() + " has no boolean 'pass' field");
    runs[name] = {{"pass", r["pass"]}, {"checks", r.value("checks", json::array())}};
    pass = pass && r["pass"].get<bool>();
  }
  if (runs.empty()) pass = false;
  const json j = {{"command", "report"}, {"runs", runs}, {"missing", missing}, {"pass", pass}};
  write_json(ctx.out / "summary.json", j);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled compressible-flow / Stokes resolvent solver"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  app.add_option("--config", config_path, "TOML run configuration (defaults apply when omitted)");
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--seed", seed, "Seed for randomized spot checks");
  app.add_subcommand("solve", "Static resolvent solve with VTK/JSON output");
  app.add_subcommand("evolve", "Semigroup time stepping with a trajectory CSV");
  app.add_subcommand("mms", "Manufactured-solution convergence table");
  app.add_subcommand("infsup", "Discrete inf-sup constant table");
  app.add_subcommand("report", "Summarize prior JSON outputs");
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  fs::path out = out_dir.empty() ? fs::path() : fs::path(out_dir);
  try {
    Context ctx;
    ctx.cfg = config_path.empty() ? parse_config("") : load_config(config_path);
    if (out.empty()) out = ctx.cfg.output_dir;
    ctx.out = out;
    ctx.seed = seed;
    fs::create_directories(ctx.out);
    std::cerr << "ffsolve " << command << " (kernels: " << simd::isa_name(simd::active().isa) << ")\n";

    int status = 0;
    if (command == "solve") status = run_solve(ctx);
    else if (command == "evolve") status = run_evolve(ctx);
    else if (command == "mms") status = run_mms(ctx);
    else if (command == "infsup") status = run_infsup(ctx);
    else status = run_report(ctx);
    std::cerr << (status == 0 ? "checks passed" : "checks FAILED") << "\n";
    return status;
  } catch (const std::exception& e) {
    const auto* fe = dynamic_cast<const Error*>(&e);
    const json err = {{"command", command},
                      {"error", {{"kind", fe ? fe->kind() : "internal"}, {"message", e.what()}}},
                      {"pass", false}};
    std::cerr << "error: " << e.what() << "\n" << err.dump() << "\n";
    try {
      if (!out.empty()) {
        fs::create_directories(out);
        write_json(out / "error.json", err);
      }
    } catch (const std::exception&) {
    }
    return 2;
  }
}
