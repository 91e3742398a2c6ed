#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fluidfluid/assembly.hpp"
#include "fluidfluid/linalg/factorization.hpp"

namespace fluidfluid {

/// Velocity/pressure pair on the upper domain.
struct UpperSolution {
  FeField mu;
  FeField q;
  /// Relative residual of the reduced block system.
  double residual = 0.0;
};

/// Resolvent block on the upper domain over (free velocity DOFs) x (all
/// pressure DOFs), velocity constrained on the whole boundary:
///   momentum:   lambda M + Advect + Strain + DivUMass,  coupling DivCouple
///   continuity: DivRow,  lambda M_p + ScalarAdvect + DivUMass_p
/// Factorized once at construction. Provides the particular-solution map
/// (zero trace everywhere) and the interface lifting map (prescribed trace
/// on the interface, zero on the outer walls).
class UpperDomain {
 public:
  /// Throws CoercivityError when the block cannot be factorized.
  UpperDomain(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow);

  const MaterialParams& params() const noexcept { return params_; }
  const BackgroundFlow& flow() const noexcept { return flow_; }
  const Mesh& mesh() const noexcept { return *mesh_; }

  /// Velocity space with the whole boundary constrained.
  const SpacePtr& velocity_space() const noexcept { return v_space_; }
  const SpacePtr& pressure_space() const noexcept { return p_space_; }
  std::size_t n_interface() const noexcept { return v_space_->interface_dofs().size(); }
  std::size_t block_size() const noexcept { return n_vfree_ + p_space_->n_dofs(); }

  /// Operators over all DOFs (rows test, columns trial).
  const linalg::CsrMatrix& momentum() const noexcept { return momentum_; }
  const linalg::CsrMatrix& coupling() const noexcept { return coupling_; }
  const linalg::CsrMatrix& divergence() const noexcept { return divergence_; }
  const linalg::CsrMatrix& pressure_block() const noexcept { return pressure_; }
  const linalg::CsrMatrix& velocity_mass() const noexcept { return v_mass_; }
  const linalg::CsrMatrix& pressure_mass() const noexcept { return p_mass_; }
  /// Reduced block matrix actually factorized.
  const linalg::CsrMatrix& block_matrix() const noexcept { return block_; }
  const linalg::FactorStats& factor_stats() const { return factor_->stats(); }

  /// Particular solution for load vectors over all velocity / pressure DOFs.
  UpperSolution solve_particular(std::span<const double> f_load, std::span<const double> g_load) const;
  UpperSolution solve_particular(const VectorFunction& f, const ScalarFunction& g) const;

  /// Lifting of interface coefficients (ordered as interface_dofs).
  /// ValidationError on length mismatch.
  UpperSolution solve_lifting(std::span<const double> phi) const;

  /// One lifting per interface DOF, computed on first use and cached.
  const std::vector<UpperSolution>& responses() const;

  /// Momentum action (A mu + C q) over all velocity DOFs.
  linalg::Vector momentum_action(const UpperSolution& s) const;
  /// Continuity action (D mu + P q) over all pressure DOFs.
  linalg::Vector continuity_action(const UpperSolution& s) const;

 private:
  UpperSolution solve_with(std::span<const double> f_load, std::span<const double> g_load,
                           std::span<const double> mu_constrained) const;

  std::shared_ptr<const Mesh> mesh_;
  MaterialParams params_;
  BackgroundFlow flow_;
  SpacePtr v_space_;
  SpacePtr p_space_;
  std::size_t n_vfree_ = 0;
  linalg::CsrMatrix momentum_, coupling_, divergence_, pressure_, v_mass_, p_mass_, block_;
  std::unique_ptr<linalg::Factorization> factor_;
  mutable std::optional<std::vector<UpperSolution>> responses_;
};

}  // namespace fluidfluid
