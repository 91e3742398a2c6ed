#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "fluidfluid/evolution.hpp"
#include "fluidfluid/verification.hpp"

namespace fluidfluid::io {

/// Legacy ASCII VTK unstructured grid (triangles, cell type 5) with a
/// subdomain cell tag.
void write_vtk_mesh(std::ostream& os, const Mesh& mesh);

/// Both subdomains with their own copies of the interface points, so the
/// pressure jump is represented. Point data: velocity, pressure.
void write_vtk_state(std::ostream& os, const CoupledState& state);

/// One field sampled at the mesh vertices of its subdomain.
void write_vtk_field(std::ostream& os, const FeField& field, const std::string& name);

/// Columns: h, err_um_h1, err_pm_l2, err_up_h1, err_pp_l2, eoc_um_h1,
/// eoc_pm_l2, eoc_up_h1, eoc_pp_l2 (EOC cells empty on the first row).
void write_mms_csv(std::ostream& os, const MmsTable& table);
/// Columns: step, time, h_norm.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
/// Columns: nx, h, beta, mu, residual, iterations, n_pressure.
void write_infsup_csv(std::ostream& os, const std::vector<InfSupResult>& rows);

nlohmann::json to_json(const linalg::FactorStats& s);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const MmsTable& t);
nlohmann::json to_json(const InfSupResult& r);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_text(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace fluidfluid::io
