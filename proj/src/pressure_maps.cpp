#include "fluidfluid/pressure_maps.hpp"

#include <algorithm>
#include <cmath>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Vector;

HarmonicExtension::HarmonicExtension(std::shared_ptr<const Mesh> mesh) {
  space_ = build_space(std::move(mesh), SpaceKind::P2Scalar, Subdomain::Minus, {BoundaryTag::Gamma});
  const FeSpace& s = *space_;
  for (std::size_t n = 0; n < s.n_nodes(); ++n)
    if (s.node_coords()[n].y == kInterfaceY) gamma_nodes_.push_back(static_cast<std::int32_t>(n));
  std::sort(gamma_nodes_.begin(), gamma_nodes_.end(),
            [&](std::int32_t a, std::int32_t b) { return s.node_coords()[static_cast<std::size_t>(a)].x < s.node_coords()[static_cast<std::size_t>(b)].x; });
  stiffness_ = assemble_form(FormKind::Stiff, s, s);
  free_block_ = stiffness_.submatrix(s.free_index(), s.n_free(), s.free_index(), s.n_free());
  factor_ = std::make_unique<linalg::Factorization>(free_block_);
}

Vector HarmonicExtension::neumann_load(const ScalarFunction& g) const {
  if (!g) return Vector(space_->n_dofs(), 0.0);
  return assemble_boundary_load(*space_, {BoundaryTag::OuterMinus}, g);
}

FeField HarmonicExtension::extend(std::span<const double> gamma_values, const ScalarFunction& g) const {
  const FeSpace& s = *space_;
  if (gamma_values.size() != gamma_nodes_.size())
    throw ValidationError("harmonic extension: expected " + std::to_string(gamma_nodes_.size()) + " interface values");
  FeField out(space_);
  for (std::size_t k = 0; k < gamma_nodes_.size(); ++k) out.coeffs[static_cast<std::size_t>(gamma_nodes_[k])] = gamma_values[k];
  const Vector load = neumann_load(g);
  const Vector known = stiffness_.multiply(out.coeffs);
  Vector rhs(s.n_free());
  for (std::size_t i = 0; i < s.n_free(); ++i) {
    const auto d = static_cast<std::size_t>(s.free_dofs()[i]);
    rhs[i] = load[d] - known[d];
  }
  const Vector x = factor_->solve(rhs);
  for (std::size_t i = 0; i < s.n_free(); ++i) out.coeffs[static_cast<std::size_t>(s.free_dofs()[i])] = x[i];
  return out;
}

FeField HarmonicExtension::dirichlet_extend(std::span<const double> gamma_values) const { return extend(gamma_values, {}); }

FeField HarmonicExtension::dirichlet_extend(const ScalarFunction& phi) const {
  std::vector<double> v;
  v.reserve(gamma_nodes_.size());
  for (auto n : gamma_nodes_) v.push_back(phi(space_->node_coords()[static_cast<std::size_t>(n)]));
  return extend(v, {});
}

FeField HarmonicExtension::neumann_extend(const ScalarFunction& g) const {
  return extend(std::vector<double>(gamma_nodes_.size(), 0.0), g);
}

double HarmonicExtension::residual(const FeField& field, const ScalarFunction& g) const {
  const FeSpace& s = *space_;
  const Vector load = neumann_load(g);
  const Vector kx = stiffness_.multiply(field.coeffs);
  double r = 0.0, scale = 0.0;
  for (auto d : s.free_dofs()) {
    r = std::max(r, std::abs(kx[static_cast<std::size_t>(d)] - load[static_cast<std::size_t>(d)]));
    scale = std::max(scale, std::abs(load[static_cast<std::size_t>(d)]));
  }
  return r / (stiffness_.norm_inf() * linalg::norm_inf(field.coeffs) + scale + 1e-300);
}

FeField reconstruct_p_minus(const HarmonicExtension& ext, const MmsCase& mms) {
  const Vec2 nu = kInterfaceNormal;
  const double lam = mms.params().lambda_res;
  std::vector<double> dvals;
  for (auto n : ext.gamma_nodes()) {
    const Point p = ext.space()->node_coords()[static_cast<std::size_t>(n)];
    const auto um = mms.u_minus(p);
    const auto s = mms.stress_plus(p);
    const Vec2 j = mms.jump(p);
    double dudnu_nu = 0.0, snn = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      dudnu_nu += (um.gradient[c][0] * nu[0] + um.gradient[c][1] * nu[1]) * nu[c];
      snn += (s[c][0] * nu[0] + s[c][1] * nu[1]) * nu[c];
    }
    dvals.push_back(dudnu_nu - snn + mms.p_plus(p).value[0] + j[0] * nu[0] + j[1] * nu[1]);
  }
  auto neumann = [&mms, lam](const Point& p) {
    const Vec2 n = p.y == 0.0 ? Vec2{0.0, -1.0} : (p.x == 0.0 ? Vec2{-1.0, 0.0} : Vec2{1.0, 0.0});
    const Vec2 lap = mms.laplacian_u_minus(p);
    const Vec2 h = mms.h(p);
    const auto u = mms.u_minus(p);
    double v = 0.0;
    for (std::size_t c = 0; c < 2; ++c) v += (lap[c] + h[c] - lam * u.value[c]) * n[c];
    return v;
  };
  return ext.extend(dvals, neumann);
}

namespace {

// Average over the elements of one side of each node's gradient, evaluated
// at the node. Result per node: gradient[component][direction].
std::vector<std::array<Vec2, 2>> nodal_gradients(const FeField& f) {
  const FeSpace& s = *f.space;
  std::vector<std::array<Vec2, 2>> acc(s.n_nodes(), std::array<Vec2, 2>{});
  std::vector<int> count(s.n_nodes(), 0);
  const std::array<std::array<double, 3>, 6> node_bary{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}}};
  for (std::size_t e = 0; e < s.n_elements(); ++e) {
    const auto nodes = s.element_nodes(e);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      const auto sample = evaluate_on_element(f, e, node_bary[a]);
      auto& g = acc[static_cast<std::size_t>(nodes[a])];
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) g[c][d] += sample.gradient[c][d];
      count[static_cast<std::size_t>(nodes[a])]++;
    }
  }
  for (std::size_t n = 0; n < acc.size(); ++n)
    for (auto& row : acc[n])
      for (auto& v : row) v /= std::max(count[n], 1);
  return acc;
}

std::vector<std::int32_t> interface_nodes_by_x(const FeSpace& s) {
  std::vector<std::int32_t> out;
  for (std::size_t n = 0; n < s.n_nodes(); ++n)
    if (s.node_coords()[n].y == kInterfaceY) out.push_back(static_cast<std::int32_t>(n));
  std::sort(out.begin(), out.end(),
            [&](std::int32_t a, std::int32_t b) { return s.node_coords()[static_cast<std::size_t>(a)].x < s.node_coords()[static_cast<std::size_t>(b)].x; });
  return out;
}

// Elementwise constant Laplacian of each component of a P2 vector field.
Vec2 element_laplacian(const FeField& f, std::size_t e) {
  const FeSpace& s = *f.space;
  const auto hess = basis_hessians(2, element_geometry(s.mesh(), s.element_triangle(e)));
  const auto nodes = s.element_nodes(e);
  Vec2 lap{0.0, 0.0};
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (int c = 0; c < 2; ++c)
      lap[static_cast<std::size_t>(c)] += f.coeffs[static_cast<std::size_t>(s.dof(nodes[a], c))] * (hess[a][0] + hess[a][2]);
  return lap;
}

}  // namespace

FeField reconstruct_p_minus(const HarmonicExtension& ext, const CoupledState& state, const MaterialParams& params,
                            const VectorFunction& h, const VectorFunction& jump) {
  const Vec2 nu = kInterfaceNormal;
  const auto gm = nodal_gradients(state.u_minus);
  const auto gp = nodal_gradients(state.u_plus);
  const auto im = interface_nodes_by_x(*state.u_minus.space);
  const auto ip = interface_nodes_by_x(*state.u_plus.space);
  if (im.size() != ext.gamma_nodes().size() || ip.size() != im.size())
    throw ValidationError("reconstruct_p_minus: state does not match the harmonic extension mesh");
  std::vector<double> dvals;
  for (std::size_t k = 0; k < im.size(); ++k) {
    const Point p = state.u_minus.space->node_coords()[static_cast<std::size_t>(im[k])];
    const auto& du = gm[static_cast<std::size_t>(im[k])];
    const auto& dp = gp[static_cast<std::size_t>(ip[k])];
    const double div = dp[0][0] + dp[1][1];
    double dudnu_nu = 0.0, snn = 0.0;
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t d = 0; d < 2; ++d) {
        dudnu_nu += du[c][d] * nu[d] * nu[c];
        const double sigma = params.nu * (dp[c][d] + dp[d][c]) + (c == d ? params.lame_lambda * div : 0.0);
        snn += sigma * nu[d] * nu[c];
      }
    double v = dudnu_nu - snn + evaluate(state.p_plus, p).value[0];
    if (jump) {
      const Vec2 j = jump(p);
      v += j[0] * nu[0] + j[1] * nu[1];
    }
    dvals.push_back(v);
  }
  const FeField& um = state.u_minus;
  const double lam = params.lambda_res;
  auto neumann = [&](const Point& p) {
    const Vec2 n = p.y == 0.0 ? Vec2{0.0, -1.0} : (p.x == 0.0 ? Vec2{-1.0, 0.0} : Vec2{1.0, 0.0});
    std::array<double, 3> bary{};
    const auto tri = um.space->mesh().locate(p, Subdomain::Minus, bary);
    const auto e = static_cast<std::size_t>(um.space->element_of_triangle(tri));
    const Vec2 lap = element_laplacian(um, e);
    const auto u = evaluate_on_element(um, e, bary);
    Vec2 hv{0.0, 0.0};
    if (h) hv = h(p);
    double v = 0.0;
    for (std::size_t c = 0; c < 2; ++c) v += (lap[c] + hv[c] - lam * u.value[c]) * n[c];
    return v;
  };
  return ext.extend(dvals, neumann);
}

}  // namespace fluidfluid
