#include "fluidfluid/spaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::P2Vector:
      return "P2_VECTOR";
    case SpaceKind::P1Scalar:
      return "P1_SCALAR";
    case SpaceKind::P2Scalar:
      return "P2_SCALAR";
  }
  return "?";
}

Point ElementGeometry::map(const Point& ref) const {
  const double l0 = 1.0 - ref.x - ref.y;
  return {l0 * vertices[0].x + ref.x * vertices[1].x + ref.y * vertices[2].x,
          l0 * vertices[0].y + ref.x * vertices[1].y + ref.y * vertices[2].y};
}

ElementGeometry element_geometry(const Mesh& mesh, std::size_t tri) {
  ElementGeometry g;
  const auto& t = mesh.triangles()[tri].v;
  for (int k = 0; k < 3; ++k) g.vertices[static_cast<std::size_t>(k)] = mesh.vertices()[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
  const Point& a = g.vertices[0];
  const Point& b = g.vertices[1];
  const Point& c = g.vertices[2];
  const double j11 = b.x - a.x, j12 = c.x - a.x, j21 = b.y - a.y, j22 = c.y - a.y;
  const double det = j11 * j22 - j12 * j21;
  g.area = 0.5 * det;
  // grad(xi) and grad(eta) are the rows of J^{-1}.
  const Vec2 gxi{j22 / det, -j12 / det};
  const Vec2 geta{-j21 / det, j11 / det};
  g.grad_lambda[1] = gxi;
  g.grad_lambda[2] = geta;
  g.grad_lambda[0] = {-gxi[0] - geta[0], -gxi[1] - geta[1]};
  return g;
}

namespace {
constexpr std::array<std::array<int, 2>, 3> kEdgeVerts{{{0, 1}, {1, 2}, {2, 0}}};
}

std::array<double, 6> basis_values(int order, const std::array<double, 3>& l) {
  if (order == 1) return {l[0], l[1], l[2], 0.0, 0.0, 0.0};
  std::array<double, 6> n{};
  for (int i = 0; i < 3; ++i) n[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)] * (2.0 * l[static_cast<std::size_t>(i)] - 1.0);
  for (int e = 0; e < 3; ++e) {
    const auto [i, j] = kEdgeVerts[static_cast<std::size_t>(e)];
    n[static_cast<std::size_t>(3 + e)] = 4.0 * l[static_cast<std::size_t>(i)] * l[static_cast<std::size_t>(j)];
  }
  return n;
}

std::array<Vec2, 6> basis_gradients(int order, const std::array<double, 3>& l, const ElementGeometry& g) {
  std::array<Vec2, 6> d{};
  if (order == 1) {
    for (std::size_t i = 0; i < 3; ++i) d[i] = g.grad_lambda[i];
    return d;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const double s = 4.0 * l[i] - 1.0;
    d[i] = {s * g.grad_lambda[i][0], s * g.grad_lambda[i][1]};
  }
  for (std::size_t e = 0; e < 3; ++e) {
    const auto i = static_cast<std::size_t>(kEdgeVerts[e][0]);
    const auto j = static_cast<std::size_t>(kEdgeVerts[e][1]);
    d[3 + e] = {4.0 * (l[i] * g.grad_lambda[j][0] + l[j] * g.grad_lambda[i][0]),
                4.0 * (l[i] * g.grad_lambda[j][1] + l[j] * g.grad_lambda[i][1])};
  }
  return d;
}

std::array<std::array<double, 3>, 6> basis_hessians(int order, const ElementGeometry& g) {
  std::array<std::array<double, 3>, 6> h{};
  if (order == 1) return h;
  auto outer_sym = [](const Vec2& a, const Vec2& b) {
    return std::array<double, 3>{a[0] * b[0] + b[0] * a[0], a[0] * b[1] + b[0] * a[1], a[1] * b[1] + b[1] * a[1]};
  };
  for (std::size_t i = 0; i < 3; ++i) {
    auto o = outer_sym(g.grad_lambda[i], g.grad_lambda[i]);
    for (auto& v : o) v *= 2.0;  // 4 grad grad^T
    h[i] = o;
  }
  for (std::size_t e = 0; e < 3; ++e) {
    const auto i = static_cast<std::size_t>(kEdgeVerts[e][0]);
    const auto j = static_cast<std::size_t>(kEdgeVerts[e][1]);
    auto o = outer_sym(g.grad_lambda[i], g.grad_lambda[j]);
    for (auto& v : o) v *= 4.0;
    h[3 + e] = o;
  }
  return h;
}

std::int32_t FeSpace::vertex_node(std::int32_t vertex) const {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= vertex_node_.size()) return -1;
  return vertex_node_[static_cast<std::size_t>(vertex)];
}

std::int32_t FeSpace::edge_node(std::int32_t a, std::int32_t b) const {
  if (order() == 1) return -1;
  if (a > b) std::swap(a, b);
  const std::pair<std::int32_t, std::int32_t> key{a, b};
  auto it = std::lower_bound(edge_nodes_.begin(), edge_nodes_.end(), key,
                             [](const auto& entry, const auto& k) { return entry.first < k; });
  if (it == edge_nodes_.end() || it->first != key) return -1;
  return it->second;
}

SpacePtr build_space(std::shared_ptr<const Mesh> mesh_ptr, SpaceKind kind, Subdomain subdomain,
                     std::vector<BoundaryTag> tags) {
  if (!mesh_ptr) throw ValidationError("build_space: null mesh");
  for (auto t : tags) {
    if ((t == BoundaryTag::OuterPlus && subdomain != Subdomain::Plus) ||
        (t == BoundaryTag::OuterMinus && subdomain != Subdomain::Minus))
      throw ValidationError(std::string("boundary tag ") + to_string(t) + " does not belong to subdomain " +
                            to_string(subdomain));
  }
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  auto space = std::shared_ptr<FeSpace>(new FeSpace());
  FeSpace& s = *space;
  s.kind_ = kind;
  s.subdomain_ = subdomain;
  s.mesh_ = mesh_ptr;
  s.tags_ = tags;
  const Mesh& mesh = *mesh_ptr;
  const bool quadratic = kind != SpaceKind::P1Scalar;

  // Provisional node keys: vertex id, or nverts + edge slot.
  const auto nverts = static_cast<std::int32_t>(mesh.vertices().size());
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> edge_slot;
  std::vector<std::int32_t> keys_used;
  std::vector<Point> key_coord(mesh.vertices().begin(), mesh.vertices().end());
  std::vector<char> vertex_used(static_cast<std::size_t>(nverts), 0);
  s.tri_to_element_.assign(mesh.triangles().size(), -1);
  const int npe = quadratic ? 6 : 3;
  std::vector<std::int32_t> element_keys;
  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    const auto& tri = mesh.triangles()[t];
    if (tri.subdomain != subdomain) continue;
    s.tri_to_element_[t] = static_cast<std::int32_t>(s.element_tris_.size());
    s.element_tris_.push_back(t);
    for (auto v : tri.v) {
      element_keys.push_back(v);
      vertex_used[static_cast<std::size_t>(v)] = 1;
    }
    if (quadratic) {
      for (const auto& ev : kEdgeVerts) {
        auto a = tri.v[static_cast<std::size_t>(ev[0])];
        auto b = tri.v[static_cast<std::size_t>(ev[1])];
        if (a > b) std::swap(a, b);
        auto [it, inserted] = edge_slot.try_emplace({a, b}, static_cast<std::int32_t>(key_coord.size()));
        if (inserted) {
          const Point& pa = mesh.vertices()[static_cast<std::size_t>(a)];
          const Point& pb = mesh.vertices()[static_cast<std::size_t>(b)];
          key_coord.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
        }
        element_keys.push_back(it->second);
      }
    }
  }
  for (std::int32_t v = 0; v < nverts; ++v)
    if (vertex_used[static_cast<std::size_t>(v)]) keys_used.push_back(v);
  for (const auto& [e, slot] : edge_slot) keys_used.push_back(slot);

  std::sort(keys_used.begin(), keys_used.end(), [&](std::int32_t a, std::int32_t b) {
    const Point& pa = key_coord[static_cast<std::size_t>(a)];
    const Point& pb = key_coord[static_cast<std::size_t>(b)];
    return pa.y != pb.y ? pa.y < pb.y : pa.x < pb.x;
  });
  std::vector<std::int32_t> key_to_node(key_coord.size(), -1);
  for (std::size_t n = 0; n < keys_used.size(); ++n) {
    key_to_node[static_cast<std::size_t>(keys_used[n])] = static_cast<std::int32_t>(n);
    s.node_coords_.push_back(key_coord[static_cast<std::size_t>(keys_used[n])]);
  }
  s.element_nodes_.reserve(element_keys.size());
  for (auto k : element_keys) s.element_nodes_.push_back(key_to_node[static_cast<std::size_t>(k)]);
  (void)npe;

  s.vertex_node_.assign(static_cast<std::size_t>(nverts), -1);
  for (std::int32_t v = 0; v < nverts; ++v) s.vertex_node_[static_cast<std::size_t>(v)] = key_to_node[static_cast<std::size_t>(v)];
  for (const auto& [e, slot] : edge_slot) s.edge_nodes_.push_back({e, key_to_node[static_cast<std::size_t>(slot)]});

  const int nc = s.components();
  s.dirichlet_.assign(s.n_dofs(), 0);
  for (const auto& edge : mesh.edges()) {
    if (std::find(tags.begin(), tags.end(), edge.tag) == tags.end()) continue;
    std::vector<std::int32_t> nodes{s.vertex_node(edge.v[0]), s.vertex_node(edge.v[1])};
    if (quadratic) nodes.push_back(s.edge_node(edge.v[0], edge.v[1]));
    for (auto n : nodes) {
      if (n < 0) continue;
      for (int c = 0; c < nc; ++c) s.dirichlet_[static_cast<std::size_t>(s.dof(n, c))] = 1;
    }
  }
  s.free_index_.assign(s.n_dofs(), -1);
  for (std::size_t d = 0; d < s.n_dofs(); ++d) {
    if (!s.dirichlet_[d]) {
      s.free_index_[d] = static_cast<std::int32_t>(s.free_dofs_.size());
      s.free_dofs_.push_back(static_cast<std::int32_t>(d));
    }
  }
  for (std::size_t n = 0; n < s.n_nodes(); ++n) {
    const Point& p = s.node_coords_[n];
    if (p.y == kInterfaceY && p.x > 0.0 && p.x < 1.0)
      for (int c = 0; c < nc; ++c) s.interface_dofs_.push_back(s.dof(static_cast<std::int32_t>(n), c));
  }
  return space;
}

FeField::FeField(SpacePtr s, std::vector<double> c) : space(std::move(s)), coeffs(std::move(c)) {
  if (coeffs.size() != space->n_dofs()) throw ValidationError("FeField: coefficient count does not match space");
}

FieldSample evaluate_on_element(const FeField& field, std::size_t element, const std::array<double, 3>& lambda) {
  const FeSpace& s = *field.space;
  const ElementGeometry g = element_geometry(s.mesh(), s.element_triangle(element));
  const auto vals = basis_values(s.order(), lambda);
  const auto grads = basis_gradients(s.order(), lambda, g);
  const auto nodes = s.element_nodes(element);
  FieldSample out;
  out.components = s.components();
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (int c = 0; c < out.components; ++c) {
      const double coef = field.coeffs[static_cast<std::size_t>(s.dof(nodes[a], c))];
      out.value[static_cast<std::size_t>(c)] += coef * vals[a];
      out.gradient[static_cast<std::size_t>(c)][0] += coef * grads[a][0];
      out.gradient[static_cast<std::size_t>(c)][1] += coef * grads[a][1];
    }
  }
  return out;
}

FieldSample evaluate(const FeField& field, const Point& p) {
  std::array<double, 3> bary{};
  const std::size_t tri = field.space->mesh().locate(p, field.space->subdomain(), bary);
  const auto e = field.space->element_of_triangle(tri);
  return evaluate_on_element(field, static_cast<std::size_t>(e), bary);
}

FeField interpolate(const SpacePtr& space, const ScalarFunction& f) {
  if (space->components() != 1) throw ValidationError("interpolate: scalar function on a vector space");
  FeField out(space);
  for (std::size_t n = 0; n < space->n_nodes(); ++n) out.coeffs[n] = f(space->node_coords()[n]);
  return out;
}

FeField interpolate(const SpacePtr& space, const VectorFunction& f) {
  if (space->components() != 2) throw ValidationError("interpolate: vector function on a scalar space");
  FeField out(space);
  for (std::size_t n = 0; n < space->n_nodes(); ++n) {
    const Vec2 v = f(space->node_coords()[n]);
    out.coeffs[2 * n] = v[0];
    out.coeffs[2 * n + 1] = v[1];
  }
  return out;
}

std::vector<double> trace_on_interface(const FeField& field) {
  std::vector<double> t;
  t.reserve(field.space->interface_dofs().size());
  for (auto d : field.space->interface_dofs()) t.push_back(field.coeffs[static_cast<std::size_t>(d)]);
  return t;
}

}  // namespace fluidfluid
