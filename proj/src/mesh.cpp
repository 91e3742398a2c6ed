#include "fluidfluid/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

const char* to_string(Subdomain s) { return s == Subdomain::Plus ? "PLUS" : "MINUS"; }

const char* to_string(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::Gamma:
      return "GAMMA";
    case BoundaryTag::OuterPlus:
      return "OUTER_PLUS";
    case BoundaryTag::OuterMinus:
      return "OUTER_MINUS";
  }
  return "?";
}

double Mesh::h() const noexcept {
  return std::max(1.0 / nx_, 1.0 / (2.0 * ny_half_));
}

double Mesh::signed_area(std::size_t tri) const {
  const auto& t = triangles_[tri].v;
  const Point& a = vertices_[static_cast<std::size_t>(t[0])];
  const Point& b = vertices_[static_cast<std::size_t>(t[1])];
  const Point& c = vertices_[static_cast<std::size_t>(t[2])];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

namespace {

std::array<double, 3> barycentric(const Point& a, const Point& b, const Point& c, const Point& p) {
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
  const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

std::size_t Mesh::locate(const Point& p, Subdomain s, std::array<double, 3>& bary) const {
  constexpr double tol = 1e-12;
  const double ylo = (s == Subdomain::Minus) ? 0.0 : kInterfaceY;
  const double yhi = ylo + 0.5;
  if (!(p.x >= -tol && p.x <= 1.0 + tol && p.y >= ylo - tol && p.y <= yhi + tol)) {
    std::ostringstream os;
    os << "point (" << p.x << ", " << p.y << ") outside subdomain " << to_string(s);
    throw LocationError(os.str());
  }
  const int rows = 2 * ny_half_;
  int i = static_cast<int>(std::floor(p.x * nx_));
  int j = static_cast<int>(std::floor(p.y * rows));
  i = std::clamp(i, 0, nx_ - 1);
  const int jlo = (s == Subdomain::Minus) ? 0 : ny_half_;
  j = std::clamp(j, jlo, jlo + ny_half_ - 1);
  const std::size_t base = 2 * static_cast<std::size_t>(j * nx_ + i);
  std::size_t best = base;
  double best_min = -1e300;
  for (std::size_t t = base; t < base + 2; ++t) {
    const auto& v = triangles_[t].v;
    const auto l = barycentric(vertices_[static_cast<std::size_t>(v[0])], vertices_[static_cast<std::size_t>(v[1])],
                               vertices_[static_cast<std::size_t>(v[2])], p);
    const double m = std::min({l[0], l[1], l[2]});
    if (m > best_min) {
      best_min = m;
      best = t;
      bary = l;
    }
  }
  if (best_min < -1e-9) throw LocationError("point location failed");
  return best;
}

Mesh build_two_domain_mesh(int nx, int ny_half) {
  if (nx < 1 || ny_half < 1) {
    std::ostringstream os;
    os << "mesh requires nx >= 1 and ny_half >= 1 (got nx=" << nx << ", ny_half=" << ny_half << ")";
    throw ValidationError(os.str());
  }
  Mesh m;
  m.nx_ = nx;
  m.ny_half_ = ny_half;
  const int rows = 2 * ny_half;
  m.vertices_.reserve(static_cast<std::size_t>((nx + 1) * (rows + 1)));
  for (int j = 0; j <= rows; ++j)
    for (int i = 0; i <= nx; ++i)
      m.vertices_.push_back({static_cast<double>(i) / nx, static_cast<double>(j) / rows});
  auto vid = [nx](int i, int j) { return static_cast<std::int32_t>(j * (nx + 1) + i); };
  for (int j = 0; j < rows; ++j) {
    const Subdomain s = (j < ny_half) ? Subdomain::Minus : Subdomain::Plus;
    for (int i = 0; i < nx; ++i) {
      const auto a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      m.triangles_.push_back({{a, b, c}, s});
      m.triangles_.push_back({{a, c, d}, s});
    }
  }
  for (int i = 0; i <= nx; ++i) m.interface_vertices_.push_back(vid(i, ny_half));
  const BoundaryClasses classes = classify_boundary(m);
  for (const auto* list : {&classes.gamma, &classes.outer_plus, &classes.outer_minus})
    m.edges_.insert(m.edges_.end(), list->begin(), list->end());
  return m;
}

BoundaryClasses classify_boundary(const Mesh& mesh) {
  // edge -> (plus count, minus count)
  std::map<std::pair<std::int32_t, std::int32_t>, std::array<int, 2>> incidence;
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      auto a = t.v[static_cast<std::size_t>(k)];
      auto b = t.v[static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      auto& c = incidence[{a, b}];
      ++c[t.subdomain == Subdomain::Plus ? 0 : 1];
    }
  }
  BoundaryClasses out;
  for (const auto& [e, c] : incidence) {
    if (c[0] == 1 && c[1] == 1) {
      out.gamma.push_back({{e.first, e.second}, BoundaryTag::Gamma});
    } else if (c[0] == 1 && c[1] == 0) {
      out.outer_plus.push_back({{e.first, e.second}, BoundaryTag::OuterPlus});
    } else if (c[0] == 0 && c[1] == 1) {
      out.outer_minus.push_back({{e.first, e.second}, BoundaryTag::OuterMinus});
    }
  }
  return out;
}

std::vector<std::string> check_mesh_invariants(const Mesh& mesh) {
  std::vector<std::string> bad;
  const auto& verts = mesh.vertices();
  double area_plus = 0.0, area_minus = 0.0;
  for (std::size_t t = 0; t < mesh.triangles().size(); ++t) {
    const double a = mesh.signed_area(t);
    if (!(a > 0.0)) bad.push_back("triangle " + std::to_string(t) + " not counterclockwise");
    (mesh.triangles()[t].subdomain == Subdomain::Plus ? area_plus : area_minus) += a;
  }
  if (std::abs(area_plus - 0.5) > 1e-13) bad.push_back("PLUS area != 1/2");
  if (std::abs(area_minus - 0.5) > 1e-13) bad.push_back("MINUS area != 1/2");

  std::map<std::pair<std::int32_t, std::int32_t>, std::array<int, 2>> incidence;
  std::vector<int> used(verts.size(), 0);
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      auto a = t.v[static_cast<std::size_t>(k)];
      auto b = t.v[static_cast<std::size_t>((k + 1) % 3)];
      ++used[static_cast<std::size_t>(a)];
      if (a > b) std::swap(a, b);
      ++incidence[{a, b}][t.subdomain == Subdomain::Plus ? 0 : 1];
    }
  }
  for (std::size_t v = 0; v < used.size(); ++v)
    if (used[v] == 0) bad.push_back("vertex " + std::to_string(v) + " unused");

  auto on_outer = [](const Point& p) {
    return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
  };
  auto on_gamma = [](const Point& p) { return p.y == kInterfaceY; };
  for (const auto& [e, c] : incidence) {
    const Point& a = verts[static_cast<std::size_t>(e.first)];
    const Point& b = verts[static_cast<std::size_t>(e.second)];
    const int total = c[0] + c[1];
    const bool gamma_edge = on_gamma(a) && on_gamma(b);
    if (total == 2) {
      const bool mixed = (c[0] == 1 && c[1] == 1);
      if (mixed != gamma_edge) bad.push_back("edge subdomain pairing violates interface rule");
    } else if (total == 1) {
      // A one-sided edge must lie on the outer boundary; anything else is a hanging node.
      const bool same_side = (a.x == b.x && (a.x == 0.0 || a.x == 1.0)) || (a.y == b.y && (a.y == 0.0 || a.y == 1.0));
      if (!same_side || !on_outer(a) || !on_outer(b)) bad.push_back("one-sided edge off the outer boundary");
    } else {
      bad.push_back("non-manifold edge");
    }
  }
  const auto classes = classify_boundary(mesh);
  for (const auto& e : classes.gamma) {
    if (!on_gamma(verts[static_cast<std::size_t>(e.v[0])]) || !on_gamma(verts[static_cast<std::size_t>(e.v[1])]))
      bad.push_back("GAMMA edge off the interface");
  }
  for (std::size_t k = 1; k < mesh.interface_vertices().size(); ++k) {
    if (!(verts[static_cast<std::size_t>(mesh.interface_vertices()[k])].x > verts[static_cast<std::size_t>(mesh.interface_vertices()[k - 1])].x))
      bad.push_back("interface vertices not ordered by x");
  }
  return bad;
}

}  // namespace fluidfluid
