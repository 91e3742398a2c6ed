#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/mesh.hpp"

using namespace fluidfluid;

namespace {

double subdomain_area(const Mesh& m, Subdomain s) {
  double a = 0.0;
  for (std::size_t t = 0; t < m.triangles().size(); ++t)
    if (m.triangles()[t].subdomain == s) a += m.signed_area(t);
  return a;
}

}  // namespace

TEST_CASE("unit cell counts") {
  auto m = build_two_domain_mesh(1, 1);
  CHECK(m.vertices().size() == 6);
  CHECK(m.triangles().size() == 4);
  CHECK(std::count_if(m.triangles().begin(), m.triangles().end(),
                      [](const Triangle& t) { return t.subdomain == Subdomain::Plus; }) == 2);
  CHECK(m.interface_vertices().size() == 2);
  auto c = classify_boundary(m);
  CHECK(c.gamma.size() == 1);
  CHECK(c.outer_plus.size() == 3);
  CHECK(c.outer_minus.size() == 3);
}

TEST_CASE("two by two mesh and areas") {
  auto m = build_two_domain_mesh(2, 2);
  CHECK(m.vertices().size() == 15);
  CHECK(m.triangles().size() == 16);
  CHECK(subdomain_area(m, Subdomain::Plus) == 0.5);
  CHECK(subdomain_area(m, Subdomain::Minus) == 0.5);
  CHECK(classify_boundary(build_two_domain_mesh(2, 1)).gamma.size() == 2);
}

TEST_CASE("mesh size halves under refinement") {
  CHECK(build_two_domain_mesh(4, 4).h() == 0.25);
  CHECK(build_two_domain_mesh(8, 8).h() == 0.125);
  CHECK(build_two_domain_mesh(4, 1).h() == 0.5);
}

TEST_CASE("invariants on a range of meshes") {
  for (int nx : {1, 2, 3, 5, 8})
    for (int ny : {1, 2, 4}) {
      auto m = build_two_domain_mesh(nx, ny);
      CHECK(check_mesh_invariants(m).empty());
      for (std::size_t t = 0; t < m.triangles().size(); ++t) CHECK(m.signed_area(t) > 0.0);
      CHECK(std::abs(subdomain_area(m, Subdomain::Plus) - 0.5) < 1e-14);
      CHECK(std::abs(subdomain_area(m, Subdomain::Minus) - 0.5) < 1e-14);
      auto c = classify_boundary(m);
      CHECK(c.gamma.size() == static_cast<std::size_t>(nx));
      CHECK(c.gamma.size() + c.outer_plus.size() + c.outer_minus.size() == m.edges().size());
      for (const auto& e : c.gamma) {
        CHECK(m.vertices()[static_cast<std::size_t>(e.v[0])].y == 0.5);
        CHECK(m.vertices()[static_cast<std::size_t>(e.v[1])].y == 0.5);
      }
      const auto& iv = m.interface_vertices();
      CHECK(iv.size() == static_cast<std::size_t>(nx + 1));
      for (std::size_t k = 1; k < iv.size(); ++k)
        CHECK(m.vertices()[static_cast<std::size_t>(iv[k - 1])].x < m.vertices()[static_cast<std::size_t>(iv[k])].x);
    }
}

TEST_CASE("refinement nests vertex sets") {
  auto coarse = build_two_domain_mesh(3, 2);
  auto fine = build_two_domain_mesh(6, 4);
  std::set<std::pair<double, double>> fine_pts;
  for (const auto& p : fine.vertices()) fine_pts.insert({p.x, p.y});
  for (const auto& p : coarse.vertices()) CHECK(fine_pts.count({p.x, p.y}) == 1);
}

TEST_CASE("invalid sizes are rejected") {
  CHECK_THROWS_AS(build_two_domain_mesh(0, 1), ValidationError);
  CHECK_THROWS_AS(build_two_domain_mesh(1, 0), ValidationError);
  CHECK_THROWS_AS(build_two_domain_mesh(-3, 2), ValidationError);
}

TEST_CASE("point location") {
  auto m = build_two_domain_mesh(4, 2);
  std::array<double, 3> bary{};
  const Point p{0.3, 0.2};
  auto t = m.locate(p, Subdomain::Minus, bary);
  CHECK(m.triangles()[t].subdomain == Subdomain::Minus);
  double x = 0, y = 0;
  for (int k = 0; k < 3; ++k) {
    const auto& v = m.vertices()[static_cast<std::size_t>(m.triangles()[t].v[static_cast<std::size_t>(k)])];
    x += bary[static_cast<std::size_t>(k)] * v.x;
    y += bary[static_cast<std::size_t>(k)] * v.y;
  }
  CHECK(x == doctest::Approx(0.3));
  CHECK(y == doctest::Approx(0.2));
  CHECK_NOTHROW(m.locate({0.5, 0.5}, Subdomain::Plus, bary));
  CHECK_NOTHROW(m.locate({0.5, 0.5}, Subdomain::Minus, bary));
  CHECK_NOTHROW(m.locate({1.0, 1.0}, Subdomain::Plus, bary));
  CHECK_THROWS_AS(m.locate({0.5, 0.7}, Subdomain::Minus, bary), LocationError);
  CHECK_THROWS_AS(m.locate({1.2, 0.7}, Subdomain::Plus, bary), LocationError);
}
