#include "fluidfluid/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Triplet;
using linalg::Vector;

StateMetric::StateMetric(const CoupledState& layout)
    : up_(layout.u_plus.space), pp_(layout.p_plus.space), um_(layout.u_minus.space) {
  if (!up_ || !pp_ || !um_) throw ValidationError("StateMetric: state has no spaces");
  m_up_ = assemble_form(FormKind::Mass, *up_, *up_);
  m_pp_ = assemble_form(FormKind::Mass, *pp_, *pp_);
  m_um_ = assemble_form(FormKind::Mass, *um_, *um_);
}

void StateMetric::check(const CoupledState& x) const {
  if (!x.u_plus.space || !x.p_plus.space || !x.u_minus.space || !x.u_plus.space->same_layout(*up_) ||
      !x.p_plus.space->same_layout(*pp_) || !x.u_minus.space->same_layout(*um_))
    throw ValidationError("state-space inner product: states live on different meshes");
}

double StateMetric::inner(const CoupledState& x, const CoupledState& y) const {
  check(x);
  check(y);
  return m_up_.bilinear(x.u_plus.coeffs, y.u_plus.coeffs) + m_pp_.bilinear(x.p_plus.coeffs, y.p_plus.coeffs) +
         m_um_.bilinear(x.u_minus.coeffs, y.u_minus.coeffs);
}

double StateMetric::norm(const CoupledState& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

double h_inner(const CoupledState& x, const CoupledState& y) { return StateMetric(x).inner(x, y); }

CoupledState step_resolvent(const CoupledSolver& solver, const CoupledState& x, SolveReport* report) {
  return solver.solve(solver.data_from_state(x, solver.params().lambda_res), report);
}

Trajectory evolve(const CoupledSolver& solver, const CoupledState& x0, double t, int n, bool keep_states) {
  if (!(t > 0.0)) throw ValidationError("evolve: t must be positive");
  if (n < 1) throw ValidationError("evolve: n must be at least 1");
  const double lambda = n / t;
  if (std::abs(solver.params().lambda_res - lambda) > 1e-12 * lambda)
    throw ValidationError("evolve: solver lambda does not equal n / t");
  Trajectory tr;
  tr.t = t;
  tr.n = n;
  tr.lambda = lambda;
  CoupledState x = x0;
  solver.update_norm(x);
  tr.times.push_back(0.0);
  tr.h_norms.push_back(x.h_norm);
  if (keep_states) tr.states.push_back(x);
  for (int k = 1; k <= n; ++k) {
    x = step_resolvent(solver, x);
    tr.times.push_back(t * k / n);
    tr.h_norms.push_back(x.h_norm);
    if (keep_states) tr.states.push_back(x);
  }
  tr.final_state = std::move(x);
  return tr;
}

Trajectory evolve(const CoupledState& x0, double t, int n, const MaterialParams& params, const BackgroundFlow& flow,
                  bool keep_states) {
  if (!(t > 0.0)) throw ValidationError("evolve: t must be positive");
  if (n < 1) throw ValidationError("evolve: n must be at least 1");
  if (!x0.u_plus.space) throw ValidationError("evolve: initial state has no spaces");
  MaterialParams p = params;
  p.lambda_res = n / t;
  CoupledSolver solver(x0.u_plus.space->mesh_ptr(), p, flow);
  return evolve(solver, x0, t, n, keep_states);
}

namespace {

void zero_constrained(FeField& f) {
  const auto& mask = f.space->dirichlet_mask();
  for (std::size_t d = 0; d < mask.size(); ++d)
    if (mask[d]) f.coeffs[d] = 0.0;
}

}  // namespace

CoupledState initial_state(const CoupledSolver& solver, const VectorFunction& u_plus, const ScalarFunction& p_plus,
                           const VectorFunction& u_minus, bool project) {
  CoupledState x = solver.zero_state();
  x.p_minus.reset();
  if (u_plus) x.u_plus = interpolate(solver.u_plus_space(), u_plus);
  if (p_plus) x.p_plus = interpolate(solver.p_plus_space(), p_plus);
  if (u_minus) x.u_minus = interpolate(solver.u_minus_space(), u_minus);
  zero_constrained(x.u_plus);
  zero_constrained(x.u_minus);

  if (project) {
    const FeSpace& vm = *solver.u_minus_space();
    const std::size_t nu = vm.n_free(), np = solver.p_minus_space()->n_dofs();
    const CsrMatrix gram = CsrMatrix::add(solver.lower_mass(), solver.lower_stiffness());
    std::vector<std::int32_t> pmap(np);
    for (std::size_t i = 0; i < np; ++i) pmap[i] = static_cast<std::int32_t>(i);
    const auto off = static_cast<std::int32_t>(nu);
    std::vector<Triplet> t;
    gram.append_to(t, vm.free_index(), vm.free_index());
    solver.lower_coupling().append_to(t, vm.free_index(), pmap, 1.0, 0, off);
    solver.lower_coupling().transpose().append_to(t, pmap, vm.free_index(), 1.0, off, 0);
    const CsrMatrix k = CsrMatrix::from_triplets(nu + np, nu + np, std::move(t));
    const Vector gu = gram.multiply(x.u_minus.coeffs);
    Vector rhs(nu + np, 0.0);
    for (std::size_t d = 0; d < vm.n_dofs(); ++d) {
      const auto fi = vm.free_index()[d];
      if (fi >= 0) rhs[static_cast<std::size_t>(fi)] = gu[d];
    }
    const Vector sol = linalg::Factorization(k).solve(rhs);
    for (std::size_t d = 0; d < vm.n_dofs(); ++d) {
      const auto fi = vm.free_index()[d];
      x.u_minus.coeffs[d] = fi >= 0 ? sol[static_cast<std::size_t>(fi)] : 0.0;
    }
    const auto trace = trace_on_interface(x.u_minus);
    const auto& up_if = solver.u_plus_space()->interface_dofs();
    for (std::size_t s = 0; s < up_if.size(); ++s) x.u_plus.coeffs[static_cast<std::size_t>(up_if[s])] = trace[s];
  }
  solver.update_norm(x);
  return x;
}

}  // namespace fluidfluid
