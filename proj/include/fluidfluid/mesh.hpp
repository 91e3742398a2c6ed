#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fluidfluid/geometry.hpp"

namespace fluidfluid {

struct Triangle {
  std::array<std::int32_t, 3> v;  // counterclockwise
  Subdomain subdomain;
};

struct BoundaryEdge {
  std::array<std::int32_t, 2> v;  // v[0] < v[1]
  BoundaryTag tag;
};

struct BoundaryClasses {
  std::vector<BoundaryEdge> gamma;
  std::vector<BoundaryEdge> outer_plus;
  std::vector<BoundaryEdge> outer_minus;
};

/// Conforming triangulation of the lower rectangle (0,1)x(0,1/2) and the
/// upper rectangle (0,1)x(1/2,1) sharing the interface y = 1/2.
/// Immutable after construction.
class Mesh {
 public:
  int nx() const noexcept { return nx_; }
  int ny_half() const noexcept { return ny_half_; }
  /// max(1/nx, 1/(2 ny_half))
  double h() const noexcept;

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<BoundaryEdge>& edges() const noexcept { return edges_; }
  /// Vertices on the interface, ordered by x.
  const std::vector<std::int32_t>& interface_vertices() const noexcept { return interface_vertices_; }

  double signed_area(std::size_t tri) const;

  /// Triangle of the given subdomain containing p (closure, small tolerance)
  /// and the barycentric coordinates of p in it. Throws LocationError.
  std::size_t locate(const Point& p, Subdomain s, std::array<double, 3>& bary) const;

  bool same_layout(const Mesh& other) const noexcept {
    return nx_ == other.nx_ && ny_half_ == other.ny_half_;
  }

 private:
  friend Mesh build_two_domain_mesh(int nx, int ny_half);

  int nx_ = 0;
  int ny_half_ = 0;
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<BoundaryEdge> edges_;
  std::vector<std::int32_t> interface_vertices_;
};

/// Structured mesh with nx x ny_half cells per half, each cell split along
/// its lower-left to upper-right diagonal. Throws ValidationError for
/// non-positive counts.
Mesh build_two_domain_mesh(int nx, int ny_half);

/// Partition of the boundary edges, derived from triangle incidence.
BoundaryClasses classify_boundary(const Mesh& mesh);

/// Exhaustive edge-incidence scan; returns one message per violated
/// invariant (empty when the mesh is valid).
std::vector<std::string> check_mesh_invariants(const Mesh& mesh);

}  // namespace fluidfluid
