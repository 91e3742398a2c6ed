#include "fluidfluid/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fluidfluid/errors.hpp"

namespace fluidfluid::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_vtk_mesh(std::ostream& os, const Mesh& mesh) {
  os << "# vtk DataFile Version 3.0\ntwo-domain mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.vertices().size() << " double\n";
  for (const auto& p : mesh.vertices()) os << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
  const auto nt = mesh.triangles().size();
  os << "CELLS " << nt << ' ' << 4 * nt << '\n';
  for (const auto& t : mesh.triangles()) os << "3 " << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  os << "CELL_TYPES " << nt << '\n';
  for (std::size_t i = 0; i < nt; ++i) os << "5\n";
  os << "CELL_DATA " << nt << "\nSCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (const auto& t : mesh.triangles()) os << (t.subdomain == Subdomain::Plus ? 1 : 0) << '\n';
}

namespace {

struct Patch {
  std::vector<Point> points;
  std::vector<std::array<std::size_t, 3>> cells;
  std::vector<std::int32_t> vertex_ids;
};

Patch subdomain_patch(const Mesh& mesh, Subdomain s, std::size_t offset) {
  Patch p;
  std::vector<std::int64_t> local(mesh.vertices().size(), -1);
  for (const auto& t : mesh.triangles()) {
    if (t.subdomain != s) continue;
    std::array<std::size_t, 3> c{};
    for (std::size_t k = 0; k < 3; ++k) {
      auto& l = local[static_cast<std::size_t>(t.v[k])];
      if (l < 0) {
        l = static_cast<std::int64_t>(p.points.size());
        p.points.push_back(mesh.vertices()[static_cast<std::size_t>(t.v[k])]);
        p.vertex_ids.push_back(t.v[k]);
      }
      c[k] = static_cast<std::size_t>(l) + offset;
    }
    p.cells.push_back(c);
  }
  return p;
}

// Field value at a mesh vertex of the field's subdomain (nodal coefficient).
Vec2 vertex_value(const FeField& f, std::int32_t vertex) {
  const auto n = f.space->vertex_node(vertex);
  Vec2 v{0.0, 0.0};
  for (int c = 0; c < f.space->components(); ++c) v[static_cast<std::size_t>(c)] = f.coeffs[static_cast<std::size_t>(f.space->dof(n, c))];
  return v;
}

void write_patches(std::ostream& os, const std::vector<const Patch*>& patches, const char* title) {
  std::size_t np = 0, nc = 0;
  for (const auto* p : patches) np += p->points.size(), nc += p->cells.size();
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << np << " double\n";
  for (const auto* p : patches)
    for (const auto& q : p->points) os << format_double(q.x) << ' ' << format_double(q.y) << " 0\n";
  os << "CELLS " << nc << ' ' << 4 * nc << '\n';
  for (const auto* p : patches)
    for (const auto& c : p->cells) os << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  os << "CELL_TYPES " << nc << '\n';
  for (std::size_t i = 0; i < nc; ++i) os << "5\n";
  os << "POINT_DATA " << np << '\n';
}

}  // namespace

void write_vtk_state(std::ostream& os, const CoupledState& state) {
  const Mesh& mesh = state.u_plus.space->mesh();
  const Patch plus = subdomain_patch(mesh, Subdomain::Plus, 0);
  const Patch minus = subdomain_patch(mesh, Subdomain::Minus, plus.points.size());
  write_patches(os, {&plus, &minus}, "coupled state");
  os << "VECTORS velocity double\n";
  for (auto v : plus.vertex_ids) {
    const Vec2 u = vertex_value(state.u_plus, v);
    os << format_double(u[0]) << ' ' << format_double(u[1]) << " 0\n";
  }
  for (auto v : minus.vertex_ids) {
    const Vec2 u = vertex_value(state.u_minus, v);
    os << format_double(u[0]) << ' ' << format_double(u[1]) << " 0\n";
  }
  os << "SCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (auto v : plus.vertex_ids) os << format_double(vertex_value(state.p_plus, v)[0]) << '\n';
  for (auto v : minus.vertex_ids) os << format_double(state.p_minus ? vertex_value(*state.p_minus, v)[0] : 0.0) << '\n';
}

void write_vtk_field(std::ostream& os, const FeField& field, const std::string& name) {
  const Patch p = subdomain_patch(field.space->mesh(), field.space->subdomain(), 0);
  write_patches(os, {&p}, name.c_str());
  if (field.space->components() == 2) {
    os << "VECTORS " << name << " double\n";
    for (auto v : p.vertex_ids) {
      const Vec2 u = vertex_value(field, v);
      os << format_double(u[0]) << ' ' << format_double(u[1]) << " 0\n";
    }
  } else {
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (auto v : p.vertex_ids) os << format_double(vertex_value(field, v)[0]) << '\n';
  }
}

void write_mms_csv(std::ostream& os, const MmsTable& t) {
  os << "h,err_um_h1,err_pm_l2,err_up_h1,err_pp_l2,eoc_um_h1,eoc_pm_l2,eoc_up_h1,eoc_pp_l2\r\n";
  for (std::size_t k = 0; k < t.levels.size(); ++k) {
    const auto& l = t.levels[k];
    os << format_double(l.h) << ',' << format_double(l.err_um_h1) << ',' << format_double(l.err_pm_l2) << ','
       << format_double(l.err_up_h1) << ',' << format_double(l.err_pp_l2);
    for (const auto* e : {&t.eoc_um_h1, &t.eoc_pm_l2, &t.eoc_up_h1, &t.eoc_pp_l2}) {
      os << ',';
      if (k > 0) os << format_double((*e)[k - 1]);
    }
    os << "\r\n";
  }
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "step,time,h_norm\r\n";
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    os << k << ',' << format_double(tr.times[k]) << ',' << format_double(tr.h_norms[k]) << "\r\n";
}

void write_infsup_csv(std::ostream& os, const std::vector<InfSupResult>& rows) {
  os << "nx,h,beta,mu,residual,iterations,n_pressure\r\n";
  for (const auto& r : rows)
    os << r.nx << ',' << format_double(1.0 / r.nx) << ',' << format_double(r.beta) << ',' << format_double(r.mu) << ','
       << format_double(r.residual) << ',' << r.iterations << ',' << r.n_pressure << "\r\n";
}

json to_json(const linalg::FactorStats& s) {
  return {{"n", s.n},
          {"dense", s.dense},
          {"lower_bandwidth", s.lower_bandwidth},
          {"upper_bandwidth", s.upper_bandwidth},
          {"stored_entries", s.stored_entries}};
}

json to_json(const SolveReport& r) {
  json j;
  j["residuals"] = {{"saddle", r.saddle_residual},
                    {"upper_particular", r.particular_residual},
                    {"upper_lifting_max", r.lifting_residual_max},
                    {"weak_divergence", r.divergence_residual},
                    {"interface_trace_mismatch", r.trace_mismatch}};
  j["h_norm"] = r.h_norm;
  j["n_dofs"] = {{"saddle", r.n_saddle}, {"upper_block", r.n_upper_block}, {"interface", r.n_interface}};
  j["factorization"] = {{"saddle", to_json(r.saddle_factor)}, {"upper_block", to_json(r.upper_factor)}};
  j["particular_bound_ratio"] = r.particular_bound_ratio;
  j["coercivity_sample"] = r.coercivity_sample ? json(*r.coercivity_sample) : json(nullptr);
  return j;
}

json to_json(const MmsTable& t) {
  json j;
  j["case"] = to_string(t.kind);
  j["flow"] = to_string(t.flow);
  json levels = json::array();
  for (const auto& l : t.levels)
    levels.push_back({{"nx", l.nx},
                      {"ny_half", l.ny_half},
                      {"h", l.h},
                      {"err_um_h1", l.err_um_h1},
                      {"err_pm_l2", l.err_pm_l2},
                      {"err_up_h1", l.err_up_h1},
                      {"err_pp_l2", l.err_pp_l2},
                      {"report", to_json(l.report)}});
  j["levels"] = levels;
  j["eoc"] = {{"um_h1", t.eoc_um_h1}, {"pm_l2", t.eoc_pm_l2}, {"up_h1", t.eoc_up_h1}, {"pp_l2", t.eoc_pp_l2}};
  j["non_monotone"] = t.non_monotone;
  j["invariant_violations"] = t.invariant_violations;
  return j;
}

json to_json(const InfSupResult& r) {
  return {{"nx", r.nx},           {"beta", r.beta},         {"mu", r.mu},
          {"residual", r.residual}, {"iterations", r.iterations}, {"n_velocity", r.n_velocity},
          {"n_pressure", r.n_pressure}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
  if (!f) throw ConfigError("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace fluidfluid::io
