#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fluidfluid/coupled.hpp"
#include "fluidfluid/mms.hpp"

namespace fluidfluid {

/// log2(e[k] / e[k+1]) for successive halvings of h.
std::vector<double> eoc(const std::vector<double>& errors);

struct MmsLevel {
  int nx = 0;
  int ny_half = 0;
  double h = 0.0;
  double err_um_h1 = 0.0;
  double err_pm_l2 = 0.0;
  double err_up_h1 = 0.0;
  double err_pp_l2 = 0.0;
  SolveReport report;
};

struct MmsTable {
  MmsKind kind = MmsKind::Mms1;
  FlowPreset flow = FlowPreset::Zero;
  std::vector<MmsLevel> levels;
  std::vector<double> eoc_um_h1, eoc_pm_l2, eoc_up_h1, eoc_pp_l2;
  /// Columns whose error does not decrease monotonically.
  std::vector<std::string> non_monotone;
  std::vector<std::string> invariant_violations;

  double min_eoc() const;
};

/// Solves the manufactured problem on meshes (nx, nx / 2) for each nx
/// (square cells, h = 1 / nx) and tabulates the four error norms. The
/// case invariants are spot-checked first with the given seed.
MmsTable run_mms(MmsKind kind, const std::vector<int>& nx_levels, const MaterialParams& params, const BackgroundFlow& flow,
                 std::uint64_t seed = 1);

/// Errors of one state against a manufactured case.
MmsLevel mms_errors(const CoupledState& x, const MmsCase& mms);

enum class ProbePressure : std::uint8_t { P1, P2 };

struct InfSupResult {
  int nx = 0;
  double beta = 0.0;
  double mu = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t n_velocity = 0;
  std::size_t n_pressure = 0;
};

/// beta_h^2 is the smallest mu of (B K^-1 B^T) q = mu M_p q with K the H1
/// Gram matrix on free lower velocity DOFs, B the divergence pairing and
/// M_p the pressure mass matrix. P2 pressures give the unstable
/// equal-order control.
InfSupResult infsup_probe(std::shared_ptr<const Mesh> mesh, ProbePressure pressure = ProbePressure::P1);

struct MonolithicReport {
  double residual = 0.0;
  std::size_t n = 0;
  linalg::FactorStats factor;
};

/// Independent oracle: one global system over both velocities (interface
/// DOFs identified), both pressures, solved by one sparse LU.
CoupledState monolithic_solve(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow,
                              const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                              const VectorFunction& jump = {}, MonolithicReport* report = nullptr);

/// max over fields of |a - b|_inf / max(|a|_inf, |b|_inf), in coefficient space.
struct FieldDifferences {
  double u_plus = 0.0;
  double p_plus = 0.0;
  double u_minus = 0.0;
  double p_minus = 0.0;
  double max() const;
};
FieldDifferences compare_states(const CoupledState& a, const CoupledState& b);

struct DissipativityResult {
  double lhs = 0.0;  // (A_h x, x) from the resolvent identity
  double rhs = 0.0;  // -(sigma(u+), eps(u+)) - |grad u-|^2
  double relative_gap() const;
};

/// For x solving the resolvent problem with data d (no interface jump),
/// A_h x = lambda x - d; lhs = lambda |x|^2 - (d, x), both in the state
/// inner product.
DissipativityResult dissipativity_check(const CoupledSolver& solver, const ResolventData& data, const CoupledState& x);

}  // namespace fluidfluid
