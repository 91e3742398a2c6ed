#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fluidfluid/mesh.hpp"

namespace fluidfluid {

enum class SpaceKind : std::uint8_t { P2Vector, P1Scalar, P2Scalar };

const char* to_string(SpaceKind k);

/// Affine geometry of one triangle: area and barycentric gradients.
struct ElementGeometry {
  std::array<Point, 3> vertices;
  double area = 0.0;
  std::array<Vec2, 3> grad_lambda;

  Point map(const Point& ref) const;  // reference (xi, eta) -> physical
};

ElementGeometry element_geometry(const Mesh& mesh, std::size_t tri);

// Local basis on a triangle for Lagrange order 1 (3 functions) or 2 (6
// functions: vertices 0,1,2 then midpoints of edges 01, 12, 20).
std::array<double, 6> basis_values(int order, const std::array<double, 3>& lambda);
std::array<Vec2, 6> basis_gradients(int order, const std::array<double, 3>& lambda, const ElementGeometry& g);
/// Constant second derivatives (xx, xy, yy) of the P2 basis.
std::array<std::array<double, 3>, 6> basis_hessians(int order, const ElementGeometry& g);

/// Lagrange finite-element space over one subdomain. DOFs are numbered
/// lexicographically by node coordinate (y, then x), then by component.
/// Immutable after construction.
class FeSpace {
 public:
  SpaceKind kind() const noexcept { return kind_; }
  Subdomain subdomain() const noexcept { return subdomain_; }
  int components() const noexcept { return kind_ == SpaceKind::P2Vector ? 2 : 1; }
  int order() const noexcept { return kind_ == SpaceKind::P1Scalar ? 1 : 2; }
  int nodes_per_element() const noexcept { return order() == 1 ? 3 : 6; }

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  const std::vector<BoundaryTag>& dirichlet_tags() const noexcept { return tags_; }

  std::size_t n_nodes() const noexcept { return node_coords_.size(); }
  std::size_t n_dofs() const noexcept { return node_coords_.size() * static_cast<std::size_t>(components()); }
  std::size_t n_free() const noexcept { return free_dofs_.size(); }

  const std::vector<Point>& node_coords() const noexcept { return node_coords_; }
  Point dof_coord(std::size_t dof) const { return node_coords_[dof / static_cast<std::size_t>(components())]; }
  int dof_component(std::size_t dof) const { return static_cast<int>(dof % static_cast<std::size_t>(components())); }
  std::int32_t dof(std::int32_t node, int comp) const { return node * components() + comp; }

  const std::vector<char>& dirichlet_mask() const noexcept { return dirichlet_; }
  /// Non-corner DOFs whose node lies on the interface, in DOF order.
  const std::vector<std::int32_t>& interface_dofs() const noexcept { return interface_dofs_; }
  /// dof -> index among free DOFs, or -1 when constrained.
  const std::vector<std::int32_t>& free_index() const noexcept { return free_index_; }
  const std::vector<std::int32_t>& free_dofs() const noexcept { return free_dofs_; }

  std::size_t n_elements() const noexcept { return element_tris_.size(); }
  std::size_t element_triangle(std::size_t e) const { return element_tris_[e]; }
  std::span<const std::int32_t> element_nodes(std::size_t e) const {
    const auto k = static_cast<std::size_t>(nodes_per_element());
    return {element_nodes_.data() + e * k, k};
  }
  /// Element index for a mesh triangle of this subdomain, or -1.
  std::int32_t element_of_triangle(std::size_t tri) const { return tri_to_element_[tri]; }

  /// Node at a mesh vertex / at the midpoint of a mesh edge, or -1.
  std::int32_t vertex_node(std::int32_t vertex) const;
  std::int32_t edge_node(std::int32_t a, std::int32_t b) const;

  /// Same DOF layout (mesh, kind, subdomain); masks may differ.
  bool same_layout(const FeSpace& other) const noexcept {
    return kind_ == other.kind_ && subdomain_ == other.subdomain_ && mesh_->same_layout(*other.mesh_);
  }

 private:
  friend std::shared_ptr<const FeSpace> build_space(std::shared_ptr<const Mesh>, SpaceKind, Subdomain,
                                                    std::vector<BoundaryTag>);

  SpaceKind kind_ = SpaceKind::P1Scalar;
  Subdomain subdomain_ = Subdomain::Minus;
  std::shared_ptr<const Mesh> mesh_;
  std::vector<BoundaryTag> tags_;
  std::vector<Point> node_coords_;
  std::vector<char> dirichlet_;
  std::vector<std::int32_t> interface_dofs_;
  std::vector<std::int32_t> free_index_;
  std::vector<std::int32_t> free_dofs_;
  std::vector<std::size_t> element_tris_;
  std::vector<std::int32_t> tri_to_element_;
  std::vector<std::int32_t> element_nodes_;
  std::vector<std::int32_t> vertex_node_;
  std::vector<std::pair<std::pair<std::int32_t, std::int32_t>, std::int32_t>> edge_nodes_;  // sorted
};

using SpacePtr = std::shared_ptr<const FeSpace>;

/// Builds the space; dirichlet_mask marks every DOF whose node lies on an
/// edge carrying one of the tags. ValidationError if a tag belongs to the
/// other subdomain.
SpacePtr build_space(std::shared_ptr<const Mesh> mesh, SpaceKind kind, Subdomain subdomain,
                     std::vector<BoundaryTag> dirichlet_tags);

/// Coefficient vector over a space. Constrained DOFs hold their imposed
/// values.
struct FeField {
  SpacePtr space;
  std::vector<double> coeffs;

  FeField() = default;
  explicit FeField(SpacePtr s) : space(std::move(s)), coeffs(space->n_dofs(), 0.0) {}
  FeField(SpacePtr s, std::vector<double> c);
};

struct FieldSample {
  int components = 1;
  Vec2 value{0.0, 0.0};
  std::array<Vec2, 2> gradient{};  // gradient[c] = grad of component c
};

FieldSample evaluate(const FeField& field, const Point& p);

/// Same, on a known element with barycentric coordinates.
FieldSample evaluate_on_element(const FeField& field, std::size_t element, const std::array<double, 3>& lambda);

FeField interpolate(const SpacePtr& space, const ScalarFunction& f);
FeField interpolate(const SpacePtr& space, const VectorFunction& f);

/// Nodal values at the space's interface DOFs, in interface_dofs order.
std::vector<double> trace_on_interface(const FeField& field);

}  // namespace fluidfluid
