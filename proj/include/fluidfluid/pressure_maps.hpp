#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fluidfluid/coupled.hpp"
#include "fluidfluid/linalg/factorization.hpp"
#include "fluidfluid/mms.hpp"

namespace fluidfluid {

/// Quadratic Laplace solver on the lower domain with Dirichlet data on the
/// interface (corners included) and Neumann data on the outer walls.
/// Factorized once; immutable afterwards.
class HarmonicExtension {
 public:
  explicit HarmonicExtension(std::shared_ptr<const Mesh> mesh);

  const SpacePtr& space() const noexcept { return space_; }
  /// Nodes on the interface, ordered by x, corners included.
  const std::vector<std::int32_t>& gamma_nodes() const noexcept { return gamma_nodes_; }
  const linalg::CsrMatrix& stiffness() const noexcept { return stiffness_; }

  /// Delta h = 0, h = phi on the interface, zero flux on the outer walls.
  FeField dirichlet_extend(const ScalarFunction& phi) const;
  FeField dirichlet_extend(std::span<const double> gamma_values) const;
  /// Delta h = 0, h = 0 on the interface, dh/dn = g on the outer walls
  /// (n the outward normal of the lower domain).
  FeField neumann_extend(const ScalarFunction& g) const;
  /// Both data at once.
  FeField extend(std::span<const double> gamma_values, const ScalarFunction& g) const;

  /// Relative residual of the free rows for the given Neumann data.
  double residual(const FeField& field, const ScalarFunction& g = {}) const;

 private:
  linalg::Vector neumann_load(const ScalarFunction& g) const;

  SpacePtr space_;
  std::vector<std::int32_t> gamma_nodes_;
  linalg::CsrMatrix stiffness_;
  linalg::CsrMatrix free_block_;
  std::unique_ptr<linalg::Factorization> factor_;
};

enum class ReconstructionMode : std::uint8_t { ExactData, DiscreteTrace };

/// Lower pressure from boundary data:
///   Dirichlet on the interface: du-/dnu . nu - sigma(u+) nu . nu + p+ + j . nu
///   Neumann on the outer walls: (Lap u- + h - lambda u-) . n
/// Exact data come from the manufactured case.
FeField reconstruct_p_minus(const HarmonicExtension& ext, const MmsCase& mms);

/// Same with traces computed from the finite-element state: one-sided nodal
/// averages of velocity gradients, elementwise constant Laplacian of u-,
/// and the upper pressure. Optional h and j complete the data.
FeField reconstruct_p_minus(const HarmonicExtension& ext, const CoupledState& state, const MaterialParams& params,
                            const VectorFunction& h = {}, const VectorFunction& jump = {});

}  // namespace fluidfluid
