#include <sstream>

#include "doctest.h"
#include "fluidfluid/config.hpp"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/io.hpp"
#include "support.hpp"

using namespace fluidfluid;
using namespace fluidfluid::testing;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("empty configuration gives the defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.nx == 8);
  CHECK(c.ny_half == 4);
  CHECK(c.flow == FlowPreset::Zero);
  CHECK(c.mms_case == MmsKind::Mms1);
  CHECK(c.mms_levels == std::vector<int>{4, 8, 16, 32});
  CHECK(c.params.lambda_res == 1.0);
  CHECK(c.output_dir == "out");
}

TEST_CASE("full configuration") {
  const RunConfig c = parse_config(R"(
# comment line
[mesh]
nx = 12        # trailing comment
ny_half = 6
[params]
lambda = 2      # integers are accepted as floats
nu = 0.5
lame_lambda = 1.5e-1
[flow]
preset = "vortex"
[solve]
data = "mms2"
[mms]
case = "in_space"
levels = [2, 4, 8,]
[time]
t = 0.25
n = 10
project_initial = false
initial = "mms2"
snapshots = 2
[infsup]
levels = [4, 8]
[output]
dir = "results # not a comment"
)");
  CHECK(c.nx == 12);
  CHECK(c.ny_half == 6);
  CHECK(c.params.lambda_res == 2.0);
  CHECK(c.params.nu == 0.5);
  CHECK(c.params.lame_lambda == 0.15);
  CHECK(c.flow == FlowPreset::Vortex);
  CHECK(c.solve_data == "mms2");
  CHECK(c.mms_case == MmsKind::InSpace);
  CHECK(c.mms_levels == std::vector<int>{2, 4, 8});
  CHECK(c.t == 0.25);
  CHECK(c.n == 10);
  CHECK_FALSE(c.project_initial);
  CHECK(c.initial == MmsKind::Mms2);
  CHECK(c.snapshots == 2);
  CHECK(c.infsup_levels == std::vector<int>{4, 8});
  CHECK(c.output_dir == "results # not a comment");
}

TEST_CASE("configuration errors name the key") {
  CHECK(error_of("[mesh]\nfoo = 1\n").find("mesh.foo") != std::string::npos);
  CHECK(error_of("[bogus]\n").find("bogus") != std::string::npos);
  CHECK(error_of("nx = 3\n").find("nx") != std::string::npos);
  CHECK(error_of("[mesh]\nnx = \"eight\"\n").find("mesh.nx") != std::string::npos);
  CHECK(error_of("[mesh]\nnx = 2.5\n").find("mesh.nx") != std::string::npos);
  CHECK(error_of("[mesh]\nnx = 4\nnx = 5\n").find("duplicate") != std::string::npos);
  CHECK(error_of("[mesh\n").find("section") != std::string::npos);
  CHECK(error_of("[mesh]\nnx 4\n").find("key = value") != std::string::npos);
  CHECK(error_of("[flow]\npreset = \"swirl\"\n").find("swirl") != std::string::npos);
  CHECK(error_of("[time]\nproject_initial = 1\n").find("time.project_initial") != std::string::npos);
  CHECK_THROWS_AS(parse_config("[mesh]\nfoo = 1\n"), ConfigError);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(parse_config("[mesh]\nnx = -2\n"), ValidationError);
  CHECK(error_of("[mesh]\nnx = -2\n").find("nx") != std::string::npos);
  CHECK_THROWS_AS(parse_config("[params]\nnu = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[mms]\nlevels = [3, 6]\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[mms]\nlevels = [4]\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[time]\nn = 0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("[solve]\ndata = \"mystery\"\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.toml"), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("convergence table CSV") {
  MmsTable t;
  for (int k = 0; k < 2; ++k) {
    MmsLevel l;
    l.h = 0.5 / (k + 1);
    l.err_um_h1 = 1.0 / (k + 1);
    l.err_pm_l2 = l.err_up_h1 = l.err_pp_l2 = 0.25 / ((k + 1) * (k + 1));
    t.levels.push_back(l);
  }
  t.eoc_um_h1 = {1.0};
  t.eoc_pm_l2 = t.eoc_up_h1 = t.eoc_pp_l2 = {2.0};
  std::ostringstream os;
  io::write_mms_csv(os, t);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "h,err_um_h1,err_pm_l2,err_up_h1,err_pp_l2,eoc_um_h1,eoc_pm_l2,eoc_up_h1,eoc_pp_l2\r");
  CHECK(l[1] == "0.5,1,0.25,0.25,0.25,,,,\r");
  CHECK(l[2] == "0.25,0.5,0.0625,0.0625,0.0625,1,2,2,2\r");

  const auto j = io::to_json(t);
  CHECK(j["levels"].size() == 2);
  CHECK(j["eoc"]["pm_l2"][0] == 2.0);
  CHECK(j["case"] == "mms1");
}

TEST_CASE("VTK output structure") {
  const auto m = mesh(2, 1);
  std::ostringstream os;
  io::write_vtk_mesh(os, *m);
  const auto l = lines(os.str());
  CHECK(l[0] == "# vtk DataFile Version 3.0");
  CHECK(l[2] == "ASCII");
  CHECK(l[4] == "POINTS 9 double");
  CHECK(os.str().find("CELLS 8 32") != std::string::npos);
  CHECK(os.str().find("CELL_TYPES 8") != std::string::npos);

  const CoupledSolver s(m, MaterialParams{}, BackgroundFlow{});
  auto x = s.zero_state();
  x.p_plus = interpolate(s.p_plus_space(), ScalarFunction([](const Point&) { return 1.0; }));
  std::ostringstream st;
  io::write_vtk_state(st, x);
  // Interface points are duplicated so the pressure jump is visible.
  CHECK(st.str().find("POINTS 12 double") != std::string::npos);
  CHECK(st.str().find("POINT_DATA 12") != std::string::npos);
  CHECK(st.str().find("VECTORS velocity double") != std::string::npos);
  CHECK(st.str().find("SCALARS pressure double 1") != std::string::npos);

  std::ostringstream sf;
  io::write_vtk_field(sf, x.p_plus, "p");
  CHECK(sf.str().find("POINTS 6 double") != std::string::npos);
  CHECK(sf.str().find("SCALARS p double 1") != std::string::npos);
}

TEST_CASE("solve report JSON keys") {
  const CoupledSolver s(mesh(2, 1), MaterialParams{}, BackgroundFlow{});
  SolveReport r;
  (void)s.solve(s.data_from_functions({}, {}, {}), &r);
  const auto j = io::to_json(r);
  for (const char* k : {"residuals", "h_norm", "n_dofs", "factorization", "coercivity_sample"}) CHECK(j.contains(k));
  CHECK(j["coercivity_sample"].is_null());
  CHECK(j["h_norm"] == 0.0);
}
