#include "fluidfluid/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <random>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Triplet;
using linalg::Vector;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> interface_schur_block(const UpperDomain& upper) {
  const auto& r = upper.responses();
  const std::size_t n = r.size();
  std::vector<double> k(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector w = upper.momentum_action(r[j]);
    for (std::size_t i = 0; i < n; ++i) k[i * n + j] = dot(r[i].mu.coeffs, w);
  }
  return k;
}

CsrMatrix assemble_a_lambda(const FeSpace& v_minus, const MaterialParams& params, const BackgroundFlow& flow,
                            const UpperDomain& upper) {
  if (v_minus.subdomain() != Subdomain::Minus || v_minus.kind() != SpaceKind::P2Vector)
    throw ValidationError("assemble_a_lambda: expected a lower-domain P2 velocity space");
  if (!v_minus.mesh().same_layout(upper.mesh()))
    throw ValidationError("assemble_a_lambda: basis responses were computed on a different mesh");
  const auto& up = upper.params();
  if (up.lambda_res != params.lambda_res || up.nu != params.nu || up.lame_lambda != params.lame_lambda ||
      upper.flow().preset() != flow.preset())
    throw ValidationError("assemble_a_lambda: basis responses were computed for different parameters");
  if (v_minus.interface_dofs().size() != upper.n_interface())
    throw ValidationError("assemble_a_lambda: interface sizes differ");

  const CsrMatrix sparse = CsrMatrix::add(assemble_form(FormKind::Mass, v_minus, v_minus),
                                          assemble_form(FormKind::Stiff, v_minus, v_minus), params.lambda_res, 1.0);
  std::vector<Triplet> t;
  sparse.append_to(t, v_minus.free_index(), v_minus.free_index());
  const auto k = interface_schur_block(upper);
  const auto& idofs = v_minus.interface_dofs();
  const std::size_t n = idofs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = v_minus.free_index()[static_cast<std::size_t>(idofs[i])];
    for (std::size_t j = 0; j < n; ++j) {
      const auto cj = v_minus.free_index()[static_cast<std::size_t>(idofs[j])];
      if (ri < 0 || cj < 0) throw ValidationError("assemble_a_lambda: interface DOF is constrained");
      t.push_back({ri, cj, k[i * n + j]});
    }
  }
  return CsrMatrix::from_triplets(v_minus.n_free(), v_minus.n_free(), std::move(t));
}

CoupledSolver::CoupledSolver(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow)
    : mesh_(std::move(mesh)), params_(params), flow_(flow) {
  params_.validate();
  upper_ = std::make_unique<UpperDomain>(mesh_, params_, flow_);
  up_space_ = build_space(mesh_, SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus});
  um_space_ = build_space(mesh_, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  pm_space_ = build_space(mesh_, SpaceKind::P1Scalar, Subdomain::Minus, {});
  const FeSpace& vm = *um_space_;
  mm_ = assemble_form(FormKind::Mass, vm, vm);
  km_ = assemble_form(FormKind::Stiff, vm, vm);
  cm_ = assemble_form(FormKind::DivCouple, vm, *pm_space_);

  for (const auto& r : upper_->responses()) max_lifting_residual_ = std::max(max_lifting_residual_, r.residual);
  k_plus_ = interface_schur_block(*upper_);
  a_block_ = assemble_a_lambda(vm, params_, flow_, *upper_);

  const std::size_t nu = vm.n_free(), np = pm_space_->n_dofs();
  std::vector<std::int32_t> pmap(np);
  for (std::size_t i = 0; i < np; ++i) pmap[i] = static_cast<std::int32_t>(i);
  const auto off = static_cast<std::int32_t>(nu);
  std::vector<Triplet> t;
  std::vector<std::int32_t> umap(nu);
  for (std::size_t i = 0; i < nu; ++i) umap[i] = static_cast<std::int32_t>(i);
  a_block_.append_to(t, umap, umap);
  cm_.append_to(t, vm.free_index(), pmap, 1.0, 0, off);
  cm_.transpose().append_to(t, pmap, vm.free_index(), 1.0, off, 0);
  saddle_ = CsrMatrix::from_triplets(nu + np, nu + np, std::move(t));
  factor_ = std::make_unique<linalg::Factorization>(saddle_);
}

ResolventData CoupledSolver::data_from_functions(const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                                                 const VectorFunction& jump) const {
  ResolventData d;
  d.f_load = f ? assemble_load(*up_space_, f) : Vector(up_space_->n_dofs(), 0.0);
  d.g_load = g ? assemble_load(*p_plus_space(), g) : Vector(p_plus_space()->n_dofs(), 0.0);
  d.h_load = h ? assemble_load(*um_space_, h) : Vector(um_space_->n_dofs(), 0.0);
  if (jump) {
    const Vector jl = assemble_interface_jump_load(*um_space_, jump);
    for (std::size_t i = 0; i < jl.size(); ++i) d.h_load[i] += jl[i];
  }
  auto norm_of = [](const SpacePtr& s, auto&& fn) {
    FeField zero(s);
    return l2_error(zero, [&](const Point& p) {
      FieldSample ex;
      ex.components = s->components();
      if constexpr (std::is_same_v<std::decay_t<decltype(fn)>, VectorFunction>) {
        ex.value = fn(p);
      } else {
        ex.value = {fn(p), 0.0};
      }
      return ex;
    });
  };
  d.f_norm = f ? norm_of(up_space_, f) : 0.0;
  d.g_norm = g ? norm_of(p_plus_space(), g) : 0.0;
  d.h_norm = h ? norm_of(um_space_, h) : 0.0;
  return d;
}

ResolventData CoupledSolver::data_from_state(const CoupledState& x, double scale) const {
  if (!x.u_plus.space || !x.u_plus.space->same_layout(*up_space_) || !x.u_minus.space->same_layout(*um_space_) ||
      !x.p_plus.space->same_layout(*p_plus_space()))
    throw ValidationError("data_from_state: state lives on a different mesh");
  ResolventData d;
  d.f_load = upper_->velocity_mass().multiply(x.u_plus.coeffs);
  d.g_load = upper_->pressure_mass().multiply(x.p_plus.coeffs);
  d.h_load = mm_.multiply(x.u_minus.coeffs);
  for (auto* v : {&d.f_load, &d.g_load, &d.h_load})
    for (auto& e : *v) e *= scale;
  d.f_norm = std::abs(scale) * std::sqrt(std::max(0.0, upper_->velocity_mass().bilinear(x.u_plus.coeffs, x.u_plus.coeffs)));
  d.g_norm = std::abs(scale) * std::sqrt(std::max(0.0, upper_->pressure_mass().bilinear(x.p_plus.coeffs, x.p_plus.coeffs)));
  d.h_norm = std::abs(scale) * std::sqrt(std::max(0.0, mm_.bilinear(x.u_minus.coeffs, x.u_minus.coeffs)));
  return d;
}

Vector CoupledSolver::assemble_F(const ResolventData& data, const UpperSolution& particular) const {
  const FeSpace& vm = *um_space_;
  if (data.f_load.size() != up_space_->n_dofs() || data.h_load.size() != vm.n_dofs())
    throw ValidationError("assemble_F: data sizes do not match the state spaces");
  Vector F(vm.n_free(), 0.0);
  for (std::size_t d = 0; d < vm.n_dofs(); ++d) {
    const auto fi = vm.free_index()[d];
    if (fi >= 0) F[static_cast<std::size_t>(fi)] = data.h_load[d];
  }
  Vector rest = upper_->momentum_action(particular);
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] = data.f_load[i] - rest[i];
  const auto& r = upper_->responses();
  const auto& idofs = vm.interface_dofs();
  for (std::size_t s = 0; s < r.size(); ++s)
    F[static_cast<std::size_t>(vm.free_index()[static_cast<std::size_t>(idofs[s])])] += dot(r[s].mu.coeffs, rest);
  return F;
}

CoupledState CoupledSolver::zero_state() const {
  CoupledState x{FeField(up_space_), FeField(p_plus_space()), FeField(um_space_), FeField(pm_space_), 0.0};
  return x;
}

void CoupledSolver::update_norm(CoupledState& x) const {
  const double s = upper_->velocity_mass().bilinear(x.u_plus.coeffs, x.u_plus.coeffs) +
                   upper_->pressure_mass().bilinear(x.p_plus.coeffs, x.p_plus.coeffs) +
                   mm_.bilinear(x.u_minus.coeffs, x.u_minus.coeffs);
  x.h_norm = std::sqrt(std::max(0.0, s));
}

CoupledState CoupledSolver::solve(const ResolventData& data, SolveReport* report) const {
  const UpperSolution particular = upper_->solve_particular(data.f_load, data.g_load);
  const Vector F = assemble_F(data, particular);
  const FeSpace& vm = *um_space_;
  const std::size_t nu = vm.n_free(), np = pm_space_->n_dofs();
  Vector rhs(nu + np, 0.0);
  std::copy(F.begin(), F.end(), rhs.begin());
  const Vector sol = factor_->solve(rhs);

  CoupledState x = zero_state();
  for (std::size_t d = 0; d < vm.n_dofs(); ++d) {
    const auto fi = vm.free_index()[d];
    if (fi >= 0) x.u_minus.coeffs[d] = sol[static_cast<std::size_t>(fi)];
  }
  for (std::size_t i = 0; i < np; ++i) x.p_minus->coeffs[i] = sol[nu + i];

  // Recovery on the upper domain.
  const auto trace = trace_on_interface(x.u_minus);
  x.u_plus.coeffs = particular.mu.coeffs;
  x.p_plus.coeffs = particular.q.coeffs;
  const auto& r = upper_->responses();
  for (std::size_t s = 0; s < r.size(); ++s) {
    if (trace[s] == 0.0) continue;
    for (std::size_t i = 0; i < x.u_plus.coeffs.size(); ++i) x.u_plus.coeffs[i] += trace[s] * r[s].mu.coeffs[i];
    for (std::size_t i = 0; i < x.p_plus.coeffs.size(); ++i) x.p_plus.coeffs[i] += trace[s] * r[s].q.coeffs[i];
  }
  // Interface values are copied so the trace equality holds bitwise.
  const auto& up_if = up_space_->interface_dofs();
  for (std::size_t s = 0; s < up_if.size(); ++s) x.u_plus.coeffs[static_cast<std::size_t>(up_if[s])] = trace[s];
  update_norm(x);

  if (report) {
    SolveReport& rep = *report;
    rep.saddle_residual = linalg::relative_residual(saddle_, sol, rhs);
    rep.particular_residual = particular.residual;
    rep.lifting_residual_max = max_lifting_residual_;
    const Vector bu = cm_.multiply_transpose(x.u_minus.coeffs);
    const double scale = cm_.norm_inf() * linalg::norm_inf(x.u_minus.coeffs);
    rep.divergence_residual = scale > 0.0 ? linalg::norm_inf(bu) / scale : linalg::norm_inf(bu);
    const auto tp = trace_on_interface(x.u_plus);
    rep.trace_mismatch = 0.0;
    for (std::size_t s = 0; s < tp.size(); ++s) rep.trace_mismatch = std::max(rep.trace_mismatch, std::abs(tp[s] - trace[s]));
    const double data_norm = data.f_norm + data.g_norm;
    const double pn = h1_norm(particular.mu) + l2_norm(particular.q);
    rep.particular_bound_ratio = data_norm > 0.0 ? pn / data_norm : 0.0;
    rep.h_norm = x.h_norm;
    rep.n_saddle = nu + np;
    rep.n_upper_block = upper_->block_size();
    rep.n_interface = upper_->n_interface();
    rep.saddle_factor = factor_->stats();
    rep.upper_factor = upper_->factor_stats();
  }
  return x;
}

double CoupledSolver::coercivity_sample(int count, std::uint64_t seed) const {
  const FeSpace& vm = *um_space_;
  const CsrMatrix gram = assemble_h1_gram(vm);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  Vector full(vm.n_dofs());
  Vector free(vm.n_free());
  for (int k = 0; k < count; ++k) {
    std::fill(full.begin(), full.end(), 0.0);
    for (std::size_t i = 0; i < free.size(); ++i) {
      free[i] = u(rng);
      full[static_cast<std::size_t>(vm.free_dofs()[i])] = free[i];
    }
    const double a = a_block_.bilinear(free, free);
    const double n = gram.bilinear(full, full);
    best = std::min(best, a / n);
  }
  return best;
}

CoupledState solve_static(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow,
                          const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                          const VectorFunction& jump, SolveReport* report) {
  CoupledSolver solver(std::move(mesh), params, flow);
  return solver.solve(solver.data_from_functions(f, g, h, jump), report);
}

}  // namespace fluidfluid
