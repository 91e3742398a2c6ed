#pragma once

#include <memory>
#include <vector>

#include "fluidfluid/coupled.hpp"

namespace fluidfluid {

/// State-space inner product (u+, u+) + (p+, p+) + (u-, u-), each an L2
/// pairing over its subdomain, evaluated with cached mass matrices.
class StateMetric {
 public:
  explicit StateMetric(const CoupledState& layout);
  double inner(const CoupledState& x, const CoupledState& y) const;
  double norm(const CoupledState& x) const;

 private:
  void check(const CoupledState& x) const;
  SpacePtr up_, pp_, um_;
  linalg::CsrMatrix m_up_, m_pp_, m_um_;
};

/// ValidationError when the states live on different meshes.
double h_inner(const CoupledState& x, const CoupledState& y);

/// One resolvent step: solve with data lambda * x, lambda taken from the
/// solver's parameters. Equals one implicit Euler step of size 1/lambda.
CoupledState step_resolvent(const CoupledSolver& solver, const CoupledState& x, SolveReport* report = nullptr);

struct Trajectory {
  double t = 0.0;
  int n = 0;
  double lambda = 0.0;
  std::vector<double> times;
  std::vector<double> h_norms;
  std::vector<CoupledState> states;  // filled only when requested
  CoupledState final_state;
};

/// n resolvent steps with lambda = n / t starting from x0. One solver is
/// built for the run. ValidationError for t <= 0 or n < 1.
Trajectory evolve(const CoupledState& x0, double t, int n, const MaterialParams& params, const BackgroundFlow& flow,
                  bool keep_states = false);

/// Same, on an existing solver whose lambda must equal n / t.
Trajectory evolve(const CoupledSolver& solver, const CoupledState& x0, double t, int n, bool keep_states = false);

/// Nodal interpolation of initial fields onto the state spaces, constrained
/// DOFs set to zero. With project set, u- is replaced by its discretely
/// divergence-free H1 projection (one saddle solve) and the upper interface
/// values are overwritten with the projected trace.
CoupledState initial_state(const CoupledSolver& solver, const VectorFunction& u_plus, const ScalarFunction& p_plus,
                           const VectorFunction& u_minus, bool project);

}  // namespace fluidfluid
