#include "fluidfluid/upper_domain.hpp"

#include <cmath>
#include <sstream>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Triplet;
using linalg::Vector;

UpperDomain::UpperDomain(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow)
    : mesh_(std::move(mesh)), params_(params), flow_(flow) {
  params_.validate();
  v_space_ = build_space(mesh_, SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus, BoundaryTag::Gamma});
  p_space_ = build_space(mesh_, SpaceKind::P1Scalar, Subdomain::Plus, {});
  const FeSpace& v = *v_space_;
  const FeSpace& p = *p_space_;
  const double lam = params_.lambda_res;

  v_mass_ = assemble_form(FormKind::Mass, v, v);
  p_mass_ = assemble_form(FormKind::Mass, p, p);
  momentum_ = CsrMatrix::add(v_mass_, assemble_form(FormKind::Strain, v, v, params_), lam, 1.0);
  if (!flow_.is_zero()) {
    momentum_ = CsrMatrix::add(momentum_, assemble_form(FormKind::Advect, v, v, params_, flow_));
    momentum_ = CsrMatrix::add(momentum_, assemble_form(FormKind::DivUMass, v, v, params_, flow_));
  }
  coupling_ = assemble_form(FormKind::DivCouple, v, p);
  divergence_ = assemble_form(FormKind::DivRow, p, v);
  pressure_ = p_mass_.scaled(lam);
  if (!flow_.is_zero()) {
    pressure_ = CsrMatrix::add(pressure_, assemble_form(FormKind::ScalarAdvect, p, p, params_, flow_));
    pressure_ = CsrMatrix::add(pressure_, assemble_form(FormKind::DivUMass, p, p, params_, flow_));
  }

  n_vfree_ = v.n_free();
  std::vector<std::int32_t> pmap(p.n_dofs());
  for (std::size_t i = 0; i < pmap.size(); ++i) pmap[i] = static_cast<std::int32_t>(i);
  const auto off = static_cast<std::int32_t>(n_vfree_);
  std::vector<Triplet> t;
  momentum_.append_to(t, v.free_index(), v.free_index());
  coupling_.append_to(t, v.free_index(), pmap, 1.0, 0, off);
  divergence_.append_to(t, pmap, v.free_index(), 1.0, off, 0);
  pressure_.append_to(t, pmap, pmap, 1.0, off, off);
  block_ = CsrMatrix::from_triplets(block_size(), block_size(), std::move(t));
  try {
    factor_ = std::make_unique<linalg::Factorization>(block_);
  } catch (const SingularMatrixError& e) {
    std::ostringstream os;
    os << "upper-domain resolvent block is singular at lambda = " << lam << " (pivot row " << e.pivot_row()
       << "); increase lambda for this background flow";
    throw CoercivityError(os.str());
  }
}

UpperSolution UpperDomain::solve_with(std::span<const double> f_load, std::span<const double> g_load,
                                      std::span<const double> mu_c) const {
  const FeSpace& v = *v_space_;
  const FeSpace& p = *p_space_;
  if (f_load.size() != v.n_dofs() || g_load.size() != p.n_dofs())
    throw ValidationError("upper-domain solve: load size mismatch");
  // Known columns move to the right-hand side.
  const Vector am = momentum_.multiply(mu_c);
  const Vector dm = divergence_.multiply(mu_c);
  Vector rhs(block_size(), 0.0);
  for (std::size_t d = 0; d < v.n_dofs(); ++d) {
    const auto fi = v.free_index()[d];
    if (fi >= 0) rhs[static_cast<std::size_t>(fi)] = f_load[d] - am[d];
  }
  for (std::size_t i = 0; i < p.n_dofs(); ++i) rhs[n_vfree_ + i] = g_load[i] - dm[i];
  const Vector x = factor_->solve(rhs);
  for (double xi : x)
    if (!std::isfinite(xi)) throw CoercivityError("upper-domain solve produced non-finite values; increase lambda");

  UpperSolution s{FeField(v_space_), FeField(p_space_), 0.0};
  for (std::size_t d = 0; d < v.n_dofs(); ++d) {
    const auto fi = v.free_index()[d];
    s.mu.coeffs[d] = fi >= 0 ? x[static_cast<std::size_t>(fi)] : mu_c[d];
  }
  for (std::size_t i = 0; i < p.n_dofs(); ++i) s.q.coeffs[i] = x[n_vfree_ + i];
  s.residual = linalg::relative_residual(block_, x, rhs);
  return s;
}

UpperSolution UpperDomain::solve_particular(std::span<const double> f_load, std::span<const double> g_load) const {
  const Vector zero(v_space_->n_dofs(), 0.0);
  return solve_with(f_load, g_load, zero);
}

UpperSolution UpperDomain::solve_particular(const VectorFunction& f, const ScalarFunction& g) const {
  // Empty functions stand for zero data.
  return solve_particular(f ? assemble_load(*v_space_, f) : Vector(v_space_->n_dofs(), 0.0),
                          g ? assemble_load(*p_space_, g) : Vector(p_space_->n_dofs(), 0.0));
}

UpperSolution UpperDomain::solve_lifting(std::span<const double> phi) const {
  const auto& idofs = v_space_->interface_dofs();
  if (phi.size() != idofs.size())
    throw ValidationError("solve_lifting: expected " + std::to_string(idofs.size()) + " interface coefficients, got " +
                          std::to_string(phi.size()));
  Vector mu_c(v_space_->n_dofs(), 0.0);
  for (std::size_t k = 0; k < idofs.size(); ++k) mu_c[static_cast<std::size_t>(idofs[k])] = phi[k];
  const Vector fz(v_space_->n_dofs(), 0.0), gz(p_space_->n_dofs(), 0.0);
  return solve_with(fz, gz, mu_c);
}

const std::vector<UpperSolution>& UpperDomain::responses() const {
  if (!responses_) {
    std::vector<UpperSolution> r;
    const std::size_t n = n_interface();
    r.reserve(n);
    Vector e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = 1.0;
      r.push_back(solve_lifting(e));
      e[i] = 0.0;
    }
    responses_ = std::move(r);
  }
  return *responses_;
}

Vector UpperDomain::momentum_action(const UpperSolution& s) const {
  Vector a = momentum_.multiply(s.mu.coeffs);
  const Vector c = coupling_.multiply(s.q.coeffs);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[i];
  return a;
}

Vector UpperDomain::continuity_action(const UpperSolution& s) const {
  Vector a = divergence_.multiply(s.mu.coeffs);
  const Vector c = pressure_.multiply(s.q.coeffs);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[i];
  return a;
}

}  // namespace fluidfluid
