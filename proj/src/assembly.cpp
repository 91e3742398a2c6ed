#include "fluidfluid/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/quadrature.hpp"

namespace fluidfluid {

using linalg::CsrMatrix;
using linalg::Triplet;
using linalg::Vector;

const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::Mass:
      return "MASS";
    case FormKind::Stiff:
      return "STIFF";
    case FormKind::Strain:
      return "STRAIN";
    case FormKind::Advect:
      return "ADVECT";
    case FormKind::DivUMass:
      return "DIVU_MASS";
    case FormKind::DivCouple:
      return "DIV_COUPLE";
    case FormKind::ScalarAdvect:
      return "SCALAR_ADVECT";
    case FormKind::DivRow:
      return "DIV_ROW";
  }
  return "?";
}

ElementFlow::ElementFlow(const BackgroundFlow& flow, const ElementGeometry& geo) : geo_(&geo) {
  const auto& v = geo.vertices;
  const std::array<Point, 6> nodes{v[0],
                                   v[1],
                                   v[2],
                                   Point{0.5 * (v[0].x + v[1].x), 0.5 * (v[0].y + v[1].y)},
                                   Point{0.5 * (v[1].x + v[2].x), 0.5 * (v[1].y + v[2].y)},
                                   Point{0.5 * (v[2].x + v[0].x), 0.5 * (v[2].y + v[0].y)}};
  for (std::size_t a = 0; a < 6; ++a) nodal_[a] = flow.velocity(nodes[a]);
}

FlowSampleH ElementFlow::at(const std::array<double, 3>& lambda) const {
  const auto n = basis_values(2, lambda);
  const auto g = basis_gradients(2, lambda, *geo_);
  FlowSampleH s;
  for (std::size_t a = 0; a < 6; ++a) {
    s.velocity[0] += n[a] * nodal_[a][0];
    s.velocity[1] += n[a] * nodal_[a][1];
    s.divergence += g[a][0] * nodal_[a][0] + g[a][1] * nodal_[a][1];
  }
  return s;
}

namespace {

constexpr int kAreaDegree = 5;
constexpr int kEdgeGaussPoints = 3;

void require_compatible(FormKind kind, const FeSpace& row, const FeSpace& col) {
  if (row.subdomain() != col.subdomain())
    throw ValidationError(std::string(to_string(kind)) + ": row and column spaces live on different subdomains");
  if (!row.mesh().same_layout(col.mesh()))
    throw ValidationError(std::string(to_string(kind)) + ": row and column spaces live on different meshes");
  const int rc = row.components(), cc = col.components();
  bool ok = true;
  switch (kind) {
    case FormKind::Mass:
    case FormKind::Stiff:
    case FormKind::Advect:
    case FormKind::DivUMass:
      ok = rc == cc;
      break;
    case FormKind::Strain:
      ok = rc == 2 && cc == 2;
      break;
    case FormKind::ScalarAdvect:
      ok = rc == 1 && cc == 1;
      break;
    case FormKind::DivCouple:
      ok = rc == 2 && cc == 1;
      break;
    case FormKind::DivRow:
      ok = rc == 1 && cc == 2;
      break;
  }
  if (!ok) throw ValidationError(std::string(to_string(kind)) + ": incompatible space kinds");
}

std::array<double, 3> bary_of(const Point& ref) { return {1.0 - ref.x - ref.y, ref.x, ref.y}; }

}  // namespace

CsrMatrix assemble_form(FormKind kind, const FeSpace& row, const FeSpace& col, const MaterialParams& params,
                        const BackgroundFlow& flow) {
  require_compatible(kind, row, col);
  params.validate();
  const bool uses_flow = kind == FormKind::Advect || kind == FormKind::DivUMass || kind == FormKind::ScalarAdvect;
  if (uses_flow && flow.is_zero()) return CsrMatrix(row.n_dofs(), col.n_dofs());

  const auto& rule = quad_rule(kAreaDegree);
  const int rc = row.components(), cc = col.components();
  const auto nr = static_cast<std::size_t>(row.nodes_per_element());
  const auto nc = static_cast<std::size_t>(col.nodes_per_element());
  const std::size_t lr = nr * static_cast<std::size_t>(rc), lc = nc * static_cast<std::size_t>(cc);
  std::vector<double> local(lr * lc);
  std::vector<Triplet> trip;
  trip.reserve(row.n_elements() * lr * lc);
  const double nu = params.nu, lame = params.lame_lambda;

  for (std::size_t e = 0; e < row.n_elements(); ++e) {
    const auto geo = element_geometry(row.mesh(), row.element_triangle(e));
    std::fill(local.begin(), local.end(), 0.0);
    const ElementFlow ef(flow, geo);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto l = bary_of(rule.points[q]);
      const double w = rule.weights[q] * 2.0 * geo.area;
      const auto rv = basis_values(row.order(), l);
      const auto rg = basis_gradients(row.order(), l, geo);
      const auto cv = basis_values(col.order(), l);
      const auto cg = basis_gradients(col.order(), l, geo);
      const FlowSampleH fs = uses_flow ? ef.at(l) : FlowSampleH{};
      for (std::size_t a = 0; a < nr; ++a)
        for (int ca = 0; ca < rc; ++ca) {
          const std::size_t i = a * static_cast<std::size_t>(rc) + static_cast<std::size_t>(ca);
          for (std::size_t b = 0; b < nc; ++b)
            for (int cb = 0; cb < cc; ++cb) {
              const std::size_t j = b * static_cast<std::size_t>(cc) + static_cast<std::size_t>(cb);
              const bool same = ca == cb;
              double v = 0.0;
              switch (kind) {
                case FormKind::Mass:
                  v = same ? rv[a] * cv[b] : 0.0;
                  break;
                case FormKind::Stiff:
                  v = same ? rg[a][0] * cg[b][0] + rg[a][1] * cg[b][1] : 0.0;
                  break;
                case FormKind::Strain: {
                  const auto ua = static_cast<std::size_t>(ca), ub = static_cast<std::size_t>(cb);
                  v = nu * ((same ? rg[a][0] * cg[b][0] + rg[a][1] * cg[b][1] : 0.0) + rg[a][ub] * cg[b][ua]) +
                      lame * (rg[a][ua] * cg[b][ub]);
                  break;
                }
                case FormKind::Advect:
                case FormKind::ScalarAdvect:
                  v = same ? (fs.velocity[0] * cg[b][0] + fs.velocity[1] * cg[b][1]) * rv[a] : 0.0;
                  break;
                case FormKind::DivUMass:
                  v = same ? 0.5 * fs.divergence * cv[b] * rv[a] : 0.0;
                  break;
                case FormKind::DivCouple:
                  v = -cv[b] * rg[a][static_cast<std::size_t>(ca)];
                  break;
                case FormKind::DivRow:
                  v = cg[b][static_cast<std::size_t>(cb)] * rv[a];
                  break;
              }
              local[i * lc + j] += w * v;
            }
        }
    }
    const auto rn = row.element_nodes(e);
    const auto cn = col.element_nodes(e);
    for (std::size_t a = 0; a < nr; ++a)
      for (int ca = 0; ca < rc; ++ca)
        for (std::size_t b = 0; b < nc; ++b)
          for (int cb = 0; cb < cc; ++cb) {
            const double v = local[(a * static_cast<std::size_t>(rc) + static_cast<std::size_t>(ca)) * lc +
                                   b * static_cast<std::size_t>(cc) + static_cast<std::size_t>(cb)];
            if (v != 0.0) trip.push_back({row.dof(rn[a], ca), col.dof(cn[b], cb), v});
          }
  }
  return CsrMatrix::from_triplets(row.n_dofs(), col.n_dofs(), std::move(trip));
}

namespace {

template <class Sampler>
Vector area_load(const FeSpace& space, Sampler&& f) {
  const auto& rule = quad_rule(kAreaDegree);
  Vector out(space.n_dofs(), 0.0);
  const int nc = space.components();
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const auto geo = element_geometry(space.mesh(), space.element_triangle(e));
    const auto nodes = space.element_nodes(e);
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto l = bary_of(rule.points[q]);
      const double w = rule.weights[q] * 2.0 * geo.area;
      const Vec2 fv = f(geo.map(rule.points[q]));
      const auto n = basis_values(space.order(), l);
      for (std::size_t a = 0; a < nodes.size(); ++a)
        for (int c = 0; c < nc; ++c)
          out[static_cast<std::size_t>(space.dof(nodes[a], c))] += w * fv[static_cast<std::size_t>(c)] * n[a];
    }
  }
  return out;
}

template <class Sampler>
Vector edge_load(const FeSpace& space, const std::vector<BoundaryTag>& tags, Sampler&& g) {
  const auto& rule = gauss_line(kEdgeGaussPoints);
  Vector out(space.n_dofs(), 0.0);
  const Mesh& mesh = space.mesh();
  const int nc = space.components();
  for (const auto& edge : mesh.edges()) {
    if (std::find(tags.begin(), tags.end(), edge.tag) == tags.end()) continue;
    const auto n0 = space.vertex_node(edge.v[0]);
    const auto n1 = space.vertex_node(edge.v[1]);
    if (n0 < 0 || n1 < 0) continue;  // edge not on this subdomain
    const Point& p0 = mesh.vertices()[static_cast<std::size_t>(edge.v[0])];
    const Point& p1 = mesh.vertices()[static_cast<std::size_t>(edge.v[1])];
    const double len = std::hypot(p1.x - p0.x, p1.y - p0.y);
    std::vector<std::int32_t> nodes{n0, n1};
    if (space.order() == 2) nodes.push_back(space.edge_node(edge.v[0], edge.v[1]));
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double s = rule.points[q];
      const Vec2 gv = g(Point{p0.x + s * (p1.x - p0.x), p0.y + s * (p1.y - p0.y)});
      std::array<double, 3> shape{};
      if (space.order() == 1) {
        shape = {1.0 - s, s, 0.0};
      } else {
        shape = {(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)};
      }
      for (std::size_t a = 0; a < nodes.size(); ++a)
        for (int c = 0; c < nc; ++c)
          out[static_cast<std::size_t>(space.dof(nodes[a], c))] += rule.weights[q] * len * gv[static_cast<std::size_t>(c)] * shape[a];
    }
  }
  return out;
}

void require_components(const FeSpace& space, int n, const char* what) {
  if (space.components() != n) throw ValidationError(std::string(what) + ": function and space component counts differ");
}

}  // namespace

Vector assemble_load(const FeSpace& space, const VectorFunction& f) {
  require_components(space, 2, "assemble_load");
  return area_load(space, f);
}

Vector assemble_load(const FeSpace& space, const ScalarFunction& f) {
  require_components(space, 1, "assemble_load");
  return area_load(space, [&](const Point& p) { return Vec2{f(p), 0.0}; });
}

Vector assemble_boundary_load(const FeSpace& space, const std::vector<BoundaryTag>& tags, const VectorFunction& g) {
  require_components(space, 2, "assemble_boundary_load");
  return edge_load(space, tags, g);
}

Vector assemble_boundary_load(const FeSpace& space, const std::vector<BoundaryTag>& tags, const ScalarFunction& g) {
  require_components(space, 1, "assemble_boundary_load");
  return edge_load(space, tags, [&](const Point& p) { return Vec2{g(p), 0.0}; });
}

Vector assemble_interface_jump_load(const FeSpace& space, const VectorFunction& j) {
  if (space.subdomain() != Subdomain::Minus) throw ValidationError("interface jump load expects a lower-domain space");
  return assemble_boundary_load(space, {BoundaryTag::Gamma}, j);
}

CsrMatrix assemble_h1_gram(const FeSpace& space) {
  return CsrMatrix::add(assemble_form(FormKind::Mass, space, space), assemble_form(FormKind::Stiff, space, space));
}

namespace {

// Returns (L2^2, H1-seminorm^2) of field - exact.
std::array<double, 2> error_parts(const FeField& field, const ExactFunction* exact) {
  const FeSpace& s = *field.space;
  const auto& rule = quad_rule(kAreaDegree);
  std::array<double, 2> acc{0.0, 0.0};
  for (std::size_t e = 0; e < s.n_elements(); ++e) {
    const auto geo = element_geometry(s.mesh(), s.element_triangle(e));
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto l = bary_of(rule.points[q]);
      const double w = rule.weights[q] * 2.0 * geo.area;
      const FieldSample fh = evaluate_on_element(field, e, l);
      const FieldSample ex = exact ? (*exact)(geo.map(rule.points[q])) : FieldSample{};
      for (int c = 0; c < s.components(); ++c) {
        const auto uc = static_cast<std::size_t>(c);
        const double dv = fh.value[uc] - ex.value[uc];
        const double dx = fh.gradient[uc][0] - ex.gradient[uc][0];
        const double dy = fh.gradient[uc][1] - ex.gradient[uc][1];
        acc[0] += w * dv * dv;
        acc[1] += w * (dx * dx + dy * dy);
      }
    }
  }
  return acc;
}

}  // namespace

double l2_error(const FeField& field, const ExactFunction& exact) { return std::sqrt(error_parts(field, &exact)[0]); }

double h1_error(const FeField& field, const ExactFunction& exact) {
  const auto p = error_parts(field, &exact);
  return std::sqrt(p[0] + p[1]);
}

double h1_seminorm_error(const FeField& field, const ExactFunction& exact) {
  return std::sqrt(error_parts(field, &exact)[1]);
}

double l2_norm(const FeField& field) { return std::sqrt(error_parts(field, nullptr)[0]); }

double h1_norm(const FeField& field) {
  const auto p = error_parts(field, nullptr);
  return std::sqrt(p[0] + p[1]);
}

}  // namespace fluidfluid
