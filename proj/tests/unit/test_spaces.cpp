#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/spaces.hpp"

using namespace fluidfluid;

namespace {

std::shared_ptr<const Mesh> mesh(int nx, int ny) { return std::make_shared<const Mesh>(build_two_domain_mesh(nx, ny)); }

// Node oracle by lattice enumeration.
struct NodeCount {
  std::size_t total = 0;
  std::size_t interface_inner = 0;
  std::size_t interior = 0;
};

NodeCount enumerate_nodes(int nx, int ny, bool quadratic, bool plus) {
  // On the grid refined once in each direction, every lattice point is a
  // P2 node: cell vertices, edge midpoints, and cell centres (which are the
  // diagonal midpoints).
  std::set<std::pair<int, int>> nodes;
  const int s = quadratic ? 2 : 1;
  for (int j = 0; j <= ny * s; ++j)
    for (int i = 0; i <= nx * s; ++i) nodes.insert({i, j});
  NodeCount c;
  c.total = nodes.size();
  for (auto [i, j] : nodes) {
    const bool on_gamma = plus ? j == 0 : j == ny * s;
    const bool on_side = i == 0 || i == nx * s;
    const bool on_outer_tb = plus ? j == ny * s : j == 0;
    if (on_gamma && !on_side) c.interface_inner++;
    if (!on_gamma && !on_side && !on_outer_tb) c.interior++;
  }
  return c;
}

}  // namespace

TEST_CASE("node oracle agrees with dof counts") {
  for (int nx : {1, 2, 3, 4})
    for (int ny : {1, 2, 3}) {
      auto m = mesh(nx, ny);
      for (auto sub : {Subdomain::Plus, Subdomain::Minus}) {
        const bool plus = sub == Subdomain::Plus;
        auto p2 = build_space(m, SpaceKind::P2Vector, sub, {});
        auto p1 = build_space(m, SpaceKind::P1Scalar, sub, {});
        auto o2 = enumerate_nodes(nx, ny, true, plus);
        auto o1 = enumerate_nodes(nx, ny, false, plus);
        CHECK(p2->n_dofs() == 2 * o2.total);
        CHECK(p1->n_dofs() == o1.total);
        CHECK(p2->interface_dofs().size() == 2 * o2.interface_inner);
        CHECK(p2->interface_dofs().size() == static_cast<std::size_t>(2 * (2 * nx - 1)));
        auto tags = plus ? std::vector<BoundaryTag>{BoundaryTag::OuterPlus, BoundaryTag::Gamma}
                         : std::vector<BoundaryTag>{BoundaryTag::OuterMinus, BoundaryTag::Gamma};
        auto closed = build_space(m, SpaceKind::P2Vector, sub, tags);
        CHECK(closed->n_free() == 2 * o2.interior);
      }
    }
}

TEST_CASE("documented space examples") {
  auto m2 = mesh(2, 2);
  auto p1 = build_space(m2, SpaceKind::P1Scalar, Subdomain::Minus, {});
  CHECK(p1->n_dofs() == 9);
  CHECK(p1->n_free() == 9);
  auto v = build_space(m2, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  CHECK(v->n_dofs() == 50);
  CHECK(v->interface_dofs().size() == 6);
  // On the 1x1 mesh the diagonal midpoint (1/2, 3/4) is interior to the
  // upper half, so two velocity DOFs stay free.
  auto closed = build_space(mesh(1, 1), SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus, BoundaryTag::Gamma});
  CHECK(closed->n_free() == 2);
  const auto free_pt = closed->dof_coord(static_cast<std::size_t>(closed->free_dofs()[0]));
  CHECK(free_pt.x == 0.5);
  CHECK(free_pt.y == 0.75);
}

TEST_CASE("tags from the other subdomain are rejected") {
  auto m = mesh(2, 2);
  CHECK_THROWS_AS(build_space(m, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterPlus}), ValidationError);
  CHECK_THROWS_AS(build_space(m, SpaceKind::P1Scalar, Subdomain::Plus, {BoundaryTag::OuterMinus}), ValidationError);
}

TEST_CASE("dof ordering is lexicographic in (y, x) then component") {
  auto s = build_space(mesh(3, 2), SpaceKind::P2Vector, Subdomain::Plus, {});
  for (std::size_t n = 1; n < s->n_nodes(); ++n) {
    const auto& a = s->node_coords()[n - 1];
    const auto& b = s->node_coords()[n];
    CHECK((a.y < b.y || (a.y == b.y && a.x < b.x)));
  }
  CHECK(s->dof_component(5) == 1);
  CHECK(s->dof(2, 1) == 5);
}

TEST_CASE("dirichlet mask marks exactly nodes on tagged edges") {
  auto s = build_space(mesh(4, 3), SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  for (std::size_t d = 0; d < s->n_dofs(); ++d) {
    const auto p = s->dof_coord(d);
    const bool outer = p.x == 0.0 || p.x == 1.0 || p.y == 0.0;
    CHECK(static_cast<bool>(s->dirichlet_mask()[d]) == outer);
  }
}

TEST_CASE("traces") {
  auto m = mesh(4, 2);
  auto s = build_space(m, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  FeField zero(s);
  for (double t : trace_on_interface(zero)) CHECK(t == 0.0);
  auto one = interpolate(s, VectorFunction([](const Point&) { return Vec2{1.0, 0.0}; }));
  auto tr = trace_on_interface(one);
  for (std::size_t k = 0; k < tr.size(); ++k) CHECK(tr[k] == (k % 2 == 0 ? 1.0 : 0.0));
  auto g = interpolate(s, VectorFunction([](const Point& p) { return Vec2{p.x * (1 - p.x), 0.0}; }));
  auto tg = trace_on_interface(g);
  for (std::size_t k = 0; k < tg.size(); k += 2) {
    const auto p = s->dof_coord(static_cast<std::size_t>(s->interface_dofs()[k]));
    CHECK(tg[k] == p.x * (1 - p.x));
  }
}

TEST_CASE("interface ordering matches between the two sides") {
  auto m = mesh(5, 2);
  auto up = build_space(m, SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus});
  auto lo = build_space(m, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  REQUIRE(up->interface_dofs().size() == lo->interface_dofs().size());
  for (std::size_t k = 0; k < up->interface_dofs().size(); ++k) {
    const auto a = up->dof_coord(static_cast<std::size_t>(up->interface_dofs()[k]));
    const auto b = lo->dof_coord(static_cast<std::size_t>(lo->interface_dofs()[k]));
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(up->dof_component(static_cast<std::size_t>(up->interface_dofs()[k])) ==
          lo->dof_component(static_cast<std::size_t>(lo->interface_dofs()[k])));
  }
}

TEST_CASE("polynomial reproduction and evaluation") {
  auto m = mesh(3, 2);
  auto p1 = build_space(m, SpaceKind::P1Scalar, Subdomain::Minus, {});
  auto fy = interpolate(p1, ScalarFunction([](const Point& p) { return p.y; }));
  auto p2 = build_space(m, SpaceKind::P2Scalar, Subdomain::Minus, {});
  auto fx2 = interpolate(p2, ScalarFunction([](const Point& p) { return p.x * p.x; }));
  auto quad = interpolate(p2, ScalarFunction([](const Point& p) { return 1 + 2 * p.x - p.y + p.x * p.y - 3 * p.y * p.y; }));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uy(0.0, 0.5);
  for (int k = 0; k < 50; ++k) {
    const Point p{ux(rng), uy(rng)};
    CHECK(evaluate(fy, p).value[0] == doctest::Approx(p.y).epsilon(1e-13));
    CHECK(evaluate(fx2, p).value[0] == doctest::Approx(p.x * p.x).epsilon(1e-13));
    const auto s = evaluate(quad, p);
    CHECK(s.value[0] == doctest::Approx(1 + 2 * p.x - p.y + p.x * p.y - 3 * p.y * p.y).epsilon(1e-13));
    CHECK(s.gradient[0][0] == doctest::Approx(2 + p.y).epsilon(1e-12));
    CHECK(s.gradient[0][1] == doctest::Approx(-1 + p.x - 6 * p.y).epsilon(1e-12));
  }
  const auto g = evaluate(fx2, {0.3, 0.2});
  CHECK(g.gradient[0][0] == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(std::abs(g.gradient[0][1]) < 1e-13);
  CHECK_THROWS_AS(evaluate(fx2, {0.3, 0.8}), LocationError);
}

TEST_CASE("partition of unity and hessians") {
  auto m = mesh(2, 1);
  const auto geo = element_geometry(*m, 0);
  for (auto l : {std::array<double, 3>{0.2, 0.3, 0.5}, std::array<double, 3>{1.0, 0.0, 0.0}}) {
    for (int order : {1, 2}) {
      auto v = basis_values(order, l);
      double s = 0.0;
      for (double x : v) s += x;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
      auto g = basis_gradients(order, l, geo);
      double gx = 0.0, gy = 0.0;
      for (auto& d : g) gx += d[0], gy += d[1];
      CHECK(std::abs(gx) < 1e-12);
      CHECK(std::abs(gy) < 1e-12);
    }
  }
  // Hessian of the interpolant of x^2 - x y is (2, -1, 0).
  auto s = build_space(m, SpaceKind::P2Scalar, Subdomain::Minus, {});
  auto f = interpolate(s, ScalarFunction([](const Point& p) { return p.x * p.x - p.x * p.y; }));
  const auto h = basis_hessians(2, element_geometry(*m, s->element_triangle(0)));
  std::array<double, 3> acc{};
  auto nodes = s->element_nodes(0);
  for (std::size_t a = 0; a < 6; ++a)
    for (int c = 0; c < 3; ++c) acc[static_cast<std::size_t>(c)] += f.coeffs[static_cast<std::size_t>(nodes[a])] * h[a][static_cast<std::size_t>(c)];
  CHECK(acc[0] == doctest::Approx(2.0));
  CHECK(acc[1] == doctest::Approx(-1.0));
  CHECK(std::abs(acc[2]) < 1e-10);
}

TEST_CASE("interface conformity: matching traces evaluate equally from both sides") {
  auto m = mesh(4, 2);
  auto up = build_space(m, SpaceKind::P2Vector, Subdomain::Plus, {BoundaryTag::OuterPlus});
  auto lo = build_space(m, SpaceKind::P2Vector, Subdomain::Minus, {BoundaryTag::OuterMinus});
  FeField a(up), b(lo);
  for (std::size_t k = 0; k < up->interface_dofs().size(); ++k) {
    const double v = std::sin(1.0 + static_cast<double>(k));
    a.coeffs[static_cast<std::size_t>(up->interface_dofs()[k])] = v;
    b.coeffs[static_cast<std::size_t>(lo->interface_dofs()[k])] = v;
  }
  for (double x : {0.05, 0.33, 0.5, 0.71, 0.99}) {
    auto sa = evaluate(a, {x, 0.5});
    auto sb = evaluate(b, {x, 0.5});
    CHECK(std::abs(sa.value[0] - sb.value[0]) < 1e-14);
    CHECK(std::abs(sa.value[1] - sb.value[1]) < 1e-14);
  }
}
