#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "fluidfluid/flow.hpp"
#include "fluidfluid/linalg/csr.hpp"
#include "fluidfluid/spaces.hpp"

namespace fluidfluid {

/// Bilinear forms. Rows index the test space, columns the trial space.
///   Mass         (u, v)
///   Stiff        (grad u, grad v)
///   Strain       (sigma(u), eps(v)), sigma = 2 nu eps + lame_lambda tr(eps) I
///   Advect       (U . grad u, v)          vector or scalar spaces
///   DivUMass     1/2 (div U u, v)         vector or scalar spaces
///   DivCouple    -(p, div v)              rows: velocity, cols: pressure
///   ScalarAdvect (U . grad p, q)          scalar spaces only
///   DivRow       (div u, q)               rows: pressure, cols: velocity
enum class FormKind : std::uint8_t { Mass, Stiff, Strain, Advect, DivUMass, DivCouple, ScalarAdvect, DivRow };

const char* to_string(FormKind k);

/// Every area integral uses the degree-5 rule. The background flow enters
/// through its elementwise quadratic interpolant U_h, so all forms are
/// polynomial and integrated exactly; in particular
/// (U_h . grad q, q) + 1/2 (div U_h q, q) = 0 up to round-off whenever
/// U.n = 0 on the boundary. Acts on all DOFs, constrained ones included.
linalg::CsrMatrix assemble_form(FormKind kind, const FeSpace& row_space, const FeSpace& col_space,
                                const MaterialParams& params = {}, const BackgroundFlow& flow = BackgroundFlow{});

/// Elementwise quadratic interpolant of the background flow on one mesh
/// triangle, sampled at barycentric coordinates.
struct FlowSampleH {
  Vec2 velocity{0.0, 0.0};
  double divergence = 0.0;
};
class ElementFlow {
 public:
  ElementFlow(const BackgroundFlow& flow, const ElementGeometry& geo);
  FlowSampleH at(const std::array<double, 3>& lambda) const;

 private:
  const ElementGeometry* geo_;
  std::array<Vec2, 6> nodal_{};
};

/// entry i = integral of f . phi_i over the space's subdomain.
linalg::Vector assemble_load(const FeSpace& space, const VectorFunction& f);
linalg::Vector assemble_load(const FeSpace& space, const ScalarFunction& f);

/// entry i = boundary integral of g . phi_i over the edges carrying one of
/// the tags (3-point Gauss per edge).
linalg::Vector assemble_boundary_load(const FeSpace& space, const std::vector<BoundaryTag>& tags, const VectorFunction& g);
linalg::Vector assemble_boundary_load(const FeSpace& space, const std::vector<BoundaryTag>& tags, const ScalarFunction& g);

/// entry i = integral over the interface of j . phi_i, for a lower-domain
/// velocity space.
linalg::Vector assemble_interface_jump_load(const FeSpace& space, const VectorFunction& j);

/// Mass + Stiff.
linalg::CsrMatrix assemble_h1_gram(const FeSpace& space);

/// Closed-form reference for error norms: value and gradient per component.
using ExactFunction = std::function<FieldSample(const Point&)>;

double l2_error(const FeField& field, const ExactFunction& exact);
/// Full H1 norm of the error (L2 part included).
double h1_error(const FeField& field, const ExactFunction& exact);
double h1_seminorm_error(const FeField& field, const ExactFunction& exact);

double l2_norm(const FeField& field);
double h1_norm(const FeField& field);

}  // namespace fluidfluid
