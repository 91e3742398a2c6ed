#include "fluidfluid/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/linalg/eigen_probe.hpp"
#include "fluidfluid/linalg/factorization.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Triplet;
using linalg::Vector;

std::vector<double> eoc(const std::vector<double>& e) {
  std::vector<double> r;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) r.push_back(std::log2(e[k] / e[k + 1]));
  return r;
}

double MmsTable::min_eoc() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto* v : {&eoc_um_h1, &eoc_pm_l2, &eoc_up_h1, &eoc_pp_l2})
    for (double x : *v) m = std::min(m, x);
  return m;
}

MmsLevel mms_errors(const CoupledState& x, const MmsCase& mms) {
  MmsLevel l;
  l.err_um_h1 = h1_error(x.u_minus, mms.u_minus_fn());
  l.err_up_h1 = h1_error(x.u_plus, mms.u_plus_fn());
  l.err_pp_l2 = l2_error(x.p_plus, mms.p_plus_fn());
  if (x.p_minus) l.err_pm_l2 = l2_error(*x.p_minus, mms.p_minus_fn());
  return l;
}

MmsTable run_mms(MmsKind kind, const std::vector<int>& nx_levels, const MaterialParams& params, const BackgroundFlow& flow,
                 std::uint64_t seed) {
  MmsTable t;
  t.kind = kind;
  t.flow = flow.preset();
  const MmsCase mms(kind, params, flow);
  t.invariant_violations = mms.check_invariants(seed);
  for (int nx : nx_levels) {
    if (nx < 2 || nx % 2 != 0) throw ValidationError("run_mms: levels must be even and at least 2");
    auto mesh = std::make_shared<const Mesh>(build_two_domain_mesh(nx, nx / 2));
    CoupledSolver solver(mesh, params, flow);
    SolveReport rep;
    const auto x = solver.solve(solver.data_from_functions(mms.f_fn(), mms.g_fn(), mms.h_fn(), mms.jump_fn()), &rep);
    MmsLevel l = mms_errors(x, mms);
    l.nx = nx;
    l.ny_half = nx / 2;
    l.h = mesh->h();
    l.report = rep;
    t.levels.push_back(l);
  }
  auto column = [&](double MmsLevel::*m) {
    std::vector<double> v;
    for (const auto& l : t.levels) v.push_back(l.*m);
    return v;
  };
  const std::pair<const char*, double MmsLevel::*> cols[] = {{"err_um_h1", &MmsLevel::err_um_h1},
                                                             {"err_pm_l2", &MmsLevel::err_pm_l2},
                                                             {"err_up_h1", &MmsLevel::err_up_h1},
                                                             {"err_pp_l2", &MmsLevel::err_pp_l2}};
  std::vector<double>* targets[] = {&t.eoc_um_h1, &t.eoc_pm_l2, &t.eoc_up_h1, &t.eoc_pp_l2};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto v = column(cols[c].second);
    *targets[c] = eoc(v);
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
      if (!(v[k + 1] < v[k])) {
        t.non_monotone.push_back(cols[c].first);
        break;
      }
  }
  return t;
}

InfSupResult infsup_probe(std::shared_ptr<const Mesh> mesh, ProbePressure pressure) {
  const auto vm = build_space(mesh, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  const auto pm = build_space(mesh, pressure == ProbePressure::P1 ? SpaceKind::P1Scalar : SpaceKind::P2Scalar,
                              Subdomain::Minus, {});
  const std::size_t nu = vm->n_free(), np = pm->n_dofs();
  const CsrMatrix gram = assemble_h1_gram(*vm);
  const CsrMatrix k = gram.submatrix(vm->free_index(), nu, vm->free_index(), nu);
  std::vector<std::int32_t> pmap(np);
  for (std::size_t i = 0; i < np; ++i) pmap[i] = static_cast<std::int32_t>(i);
  const CsrMatrix b = assemble_form(FormKind::DivRow, *pm, *vm).submatrix(pmap, np, vm->free_index(), nu);
  const CsrMatrix bt = b.transpose();
  const linalg::Factorization kf(k);

  // S = B K^-1 B^T, one column per pressure basis function.
  std::vector<double> s(np * np, 0.0);
  Vector e(np, 0.0);
  for (std::size_t j = 0; j < np; ++j) {
    e[j] = 1.0;
    const Vector col = b.multiply(kf.solve(bt.multiply(e)));
    e[j] = 0.0;
    for (std::size_t i = 0; i < np; ++i) s[i * np + j] = col[i];
  }
  // Symmetrize away round-off.
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = i + 1; j < np; ++j) {
      const double a = 0.5 * (s[i * np + j] + s[j * np + i]);
      s[i * np + j] = s[j * np + i] = a;
    }
  const CsrMatrix mp = assemble_form(FormKind::Mass, *pm, *pm);
  const auto pair = linalg::smallest_gen_eig(mp, CsrMatrix::from_dense(np, np, s));
  InfSupResult r;
  r.nx = mesh->nx();
  r.mu = pair.value;
  r.beta = std::sqrt(std::max(0.0, pair.value));
  r.residual = pair.residual;
  r.iterations = pair.iterations;
  r.n_velocity = nu;
  r.n_pressure = np;
  return r;
}

CoupledState monolithic_solve(std::shared_ptr<const Mesh> mesh, const MaterialParams& params, const BackgroundFlow& flow,
                              const VectorFunction& f, const ScalarFunction& g, const VectorFunction& h,
                              const VectorFunction& jump, MonolithicReport* report) {
  params.validate();
  const auto vp = build_space(mesh, SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus});
  const auto pp = build_space(mesh, SpaceKind::P1Scalar, Subdomain::Plus, {});
  const auto vm = build_space(mesh, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  const auto pm = build_space(mesh, SpaceKind::P1Scalar, Subdomain::Minus, {});
  const double lam = params.lambda_res;

  // Global numbering: free upper velocity, upper pressure, lower velocity
  // not on the interface, lower pressure. Lower interface DOFs reuse the
  // upper ones.
  std::vector<std::int32_t> map_vp(vp->n_dofs(), -1), map_pp(pp->n_dofs()), map_vm(vm->n_dofs(), -1), map_pm(pm->n_dofs());
  std::int32_t next = 0;
  for (std::size_t d = 0; d < vp->n_dofs(); ++d)
    if (!vp->dirichlet_mask()[d]) map_vp[d] = next++;
  for (auto& m : map_pp) m = next++;
  const auto& ifp = vp->interface_dofs();
  const auto& ifm = vm->interface_dofs();
  if (ifp.size() != ifm.size()) throw ValidationError("monolithic_solve: interface sizes differ");
  for (std::size_t k = 0; k < ifm.size(); ++k) map_vm[static_cast<std::size_t>(ifm[k])] = map_vp[static_cast<std::size_t>(ifp[k])];
  for (std::size_t d = 0; d < vm->n_dofs(); ++d)
    if (!vm->dirichlet_mask()[d] && map_vm[d] < 0) map_vm[d] = next++;
  for (auto& m : map_pm) m = next++;
  const auto n = static_cast<std::size_t>(next);

  std::vector<Triplet> t;
  const CsrMatrix mass_p = assemble_form(FormKind::Mass, *vp, *vp);
  CsrMatrix mom = CsrMatrix::add(mass_p, assemble_form(FormKind::Strain, *vp, *vp, params), lam, 1.0);
  mom = CsrMatrix::add(mom, assemble_form(FormKind::Advect, *vp, *vp, params, flow));
  mom = CsrMatrix::add(mom, assemble_form(FormKind::DivUMass, *vp, *vp, params, flow));
  mom.append_to(t, map_vp, map_vp);
  assemble_form(FormKind::DivCouple, *vp, *pp).append_to(t, map_vp, map_pp);
  assemble_form(FormKind::DivRow, *pp, *vp).append_to(t, map_pp, map_vp);
  CsrMatrix pblock = assemble_form(FormKind::Mass, *pp, *pp).scaled(lam);
  pblock = CsrMatrix::add(pblock, assemble_form(FormKind::ScalarAdvect, *pp, *pp, params, flow));
  pblock = CsrMatrix::add(pblock, assemble_form(FormKind::DivUMass, *pp, *pp, params, flow));
  pblock.append_to(t, map_pp, map_pp);
  CsrMatrix lower = CsrMatrix::add(assemble_form(FormKind::Mass, *vm, *vm), assemble_form(FormKind::Stiff, *vm, *vm), lam, 1.0);
  lower.append_to(t, map_vm, map_vm);
  const CsrMatrix cm = assemble_form(FormKind::DivCouple, *vm, *pm);
  cm.append_to(t, map_vm, map_pm);
  cm.transpose().append_to(t, map_pm, map_vm);
  const CsrMatrix a = CsrMatrix::from_triplets(n, n, std::move(t));

  Vector rhs(n, 0.0);
  auto scatter = [&rhs](const Vector& load, const std::vector<std::int32_t>& map) {
    for (std::size_t d = 0; d < load.size(); ++d)
      if (map[d] >= 0) rhs[static_cast<std::size_t>(map[d])] += load[d];
  };
  if (f) scatter(assemble_load(*vp, f), map_vp);
  if (g) scatter(assemble_load(*pp, g), map_pp);
  if (h) scatter(assemble_load(*vm, h), map_vm);
  if (jump) scatter(assemble_interface_jump_load(*vm, jump), map_vm);

  const linalg::Factorization fact(a);
  const Vector x = fact.solve(rhs);
  CoupledState s{FeField(vp), FeField(pp), FeField(vm), FeField(pm), 0.0};
  auto gather = [&x](FeField& fld, const std::vector<std::int32_t>& map) {
    for (std::size_t d = 0; d < map.size(); ++d) fld.coeffs[d] = map[d] >= 0 ? x[static_cast<std::size_t>(map[d])] : 0.0;
  };
  gather(s.u_plus, map_vp);
  gather(s.p_plus, map_pp);
  gather(s.u_minus, map_vm);
  gather(*s.p_minus, map_pm);
  s.h_norm = std::sqrt(std::max(0.0, mass_p.bilinear(s.u_plus.coeffs, s.u_plus.coeffs) +
                                         assemble_form(FormKind::Mass, *pp, *pp).bilinear(s.p_plus.coeffs, s.p_plus.coeffs) +
                                         assemble_form(FormKind::Mass, *vm, *vm).bilinear(s.u_minus.coeffs, s.u_minus.coeffs)));
  if (report) {
    report->residual = linalg::relative_residual(a, x, rhs);
    report->n = n;
    report->factor = fact.stats();
  }
  return s;
}

namespace {

double relative_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("compare_states: field sizes differ");
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return s > 0.0 ? d / s : d;
}

}  // namespace

double FieldDifferences::max() const { return std::max({u_plus, p_plus, u_minus, p_minus}); }

FieldDifferences compare_states(const CoupledState& a, const CoupledState& b) {
  FieldDifferences d;
  d.u_plus = relative_difference(a.u_plus.coeffs, b.u_plus.coeffs);
  d.p_plus = relative_difference(a.p_plus.coeffs, b.p_plus.coeffs);
  d.u_minus = relative_difference(a.u_minus.coeffs, b.u_minus.coeffs);
  if (a.p_minus && b.p_minus) d.p_minus = relative_difference(a.p_minus->coeffs, b.p_minus->coeffs);
  return d;
}

double DissipativityResult::relative_gap() const { return std::abs(lhs - rhs) / (1.0 + std::abs(rhs)); }

DissipativityResult dissipativity_check(const CoupledSolver& solver, const ResolventData& data, const CoupledState& x) {
  CoupledState tmp = x;
  solver.update_norm(tmp);
  auto pair = [](const Vector& load, const FeField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < load.size(); ++i) s += load[i] * f.coeffs[i];
    return s;
  };
  DissipativityResult r;
  r.lhs = solver.params().lambda_res * tmp.h_norm * tmp.h_norm -
          (pair(data.f_load, x.u_plus) + pair(data.g_load, x.p_plus) + pair(data.h_load, x.u_minus));
  const CsrMatrix strain =
      assemble_form(FormKind::Strain, *solver.u_plus_space(), *solver.u_plus_space(), solver.params());
  r.rhs = -strain.bilinear(x.u_plus.coeffs, x.u_plus.coeffs) - solver.lower_stiffness().bilinear(x.u_minus.coeffs, x.u_minus.coeffs);
  return r;
}

}  // namespace fluidfluid
