#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fluidfluid/upper_domain.hpp"

namespace fluidfluid {

/// Element of the state space: (u+, p+, u-) plus the lower pressure once a
/// static solve has produced it.
struct CoupledState {
  FeField u_plus;   // velocity on the upper domain, free on the interface
  FeField p_plus;
  FeField u_minus;  // velocity on the lower domain, free on the interface
  std::optional<FeField> p_minus;
  double h_norm = 0.0;
};

/// Right-hand side of the resolvent problem as load vectors over all DOFs
/// of the state spaces. The lower load already contains the interface
/// jump pairing. Data norms (L2) are carried for the solve report.
struct ResolventData {
  linalg::Vector f_load;  // upper velocity
  linalg::Vector g_load;  // upper pressure
  linalg::Vector h_load;  // lower velocity, including the jump term
  double f_norm = 0.0;
  double g_norm = 0.0;
  double h_norm = 0.0;
};

struct SolveReport {
  double saddle_residual = 0.0;       // relative back-substitution residual
  double particular_residual = 0.0;   // upper block, particular map
  double lifting_residual_max = 0.0;  // upper block, worst basis response
  double divergence_residual = 0.0;   // max |b(u-, rho_i)| relative
  double trace_mismatch = 0.0;        // max nodal |u+ - u-| on the interface
  double particular_bound_ratio = 0.0;  // (|mu~|_H1 + |q~|) / (|f| + |g|)
  double h_norm = 0.0;
  std::size_t n_saddle = 0;
  std::size_t n_upper_block = 0;
  std::size_t n_interface = 0;
  linalg::FactorStats saddle_factor;
  linalg::FactorStats upper_factor;
  std::optional<double> coercivity_sample;
};

/// a_lambda over free lower velocity DOFs:
///   lambda M- + Stiff-  +  S^T K+ S,
///   K+[i][j] = mu^i . (A+ mu^j + C+ q^j)
/// with (mu^j, q^j) the interface basis responses. ValidationError if the
/// upper system was built for a different mesh or parameters.
linalg::CsrMatrix assemble_a_lambda(const FeSpace& v_minus, const MaterialParams& params, const BackgroundFlow& flow,
                                    const UpperDomain& upper);

/// Dense K+ (row-major, n_interface^2).
std::vector<double> interface_schur_block(const UpperDomain& upper);

/// Interface Schur realization of the coupled resolvent problem. Builds the
/// upper block, the basis responses and one factorization of the lower
/// saddle matrix [A, C-; C-^T, 0]. Immutable after construction.
class CoupledSolver {
 public:
  CoupledSolver(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow);

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  const MaterialParams& params() const noexcept { return params_; }
  const BackgroundFlow& flow() const noexcept { return flow_; }
  const UpperDomain& upper() const noexcept { return *upper_; }

  /// State spaces: velocities constrained on the outer walls only.
  const SpacePtr& u_plus_space() const noexcept { return up_space_; }
  const SpacePtr& p_plus_space() const noexcept { return upper_->pressure_space(); }
  const SpacePtr& u_minus_space() const noexcept { return um_space_; }
  const SpacePtr& p_minus_space() const noexcept { return pm_space_; }

  const linalg::CsrMatrix& a_block() const noexcept { return a_block_; }
  /// DivCouple on the lower domain over all DOFs.
  const linalg::CsrMatrix& lower_coupling() const noexcept { return cm_; }
  const linalg::CsrMatrix& lower_mass() const noexcept { return mm_; }
  const linalg::CsrMatrix& lower_stiffness() const noexcept { return km_; }
  const linalg::CsrMatrix& saddle_matrix() const noexcept { return saddle_; }
  const std::vector<double>& k_plus() const noexcept { return k_plus_; }

  /// Loads from analytic data. jump may be empty.
  ResolventData data_from_functions(const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                                    const VectorFunction& jump = {}) const;
  /// Loads equal to scale * (mass-matrix pairing with the state fields).
  ResolventData data_from_state(const CoupledState& x, double scale) const;

  /// F over free lower velocity DOFs.
  linalg::Vector assemble_F(const ResolventData& data, const UpperSolution& particular) const;

  CoupledState solve(const ResolventData& data, SolveReport* report = nullptr) const;

  CoupledState zero_state() const;

  /// Minimum of a_lambda(phi, phi) / |phi|^2_H1 over random phi (free lower
  /// velocity DOFs, entries uniform in [-1, 1]).
  double coercivity_sample(int count, std::uint64_t seed) const;

  /// Fills h_norm from the state-space inner product.
  void update_norm(CoupledState& x) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  MaterialParams params_;
  BackgroundFlow flow_;
  std::unique_ptr<UpperDomain> upper_;
  SpacePtr up_space_, um_space_, pm_space_;
  linalg::CsrMatrix mm_, km_, cm_, a_block_, saddle_;
  std::vector<double> k_plus_;
  std::unique_ptr<linalg::Factorization> factor_;
  double max_lifting_residual_ = 0.0;
};

/// Convenience: build a solver and solve once.
CoupledState solve_static(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow,
                          const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                          const VectorFunction& jump = {}, SolveReport* report = nullptr);

}  // namespace fluidfluid
