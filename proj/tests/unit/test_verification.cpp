#include <cmath>
#include <random>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/verification.hpp"
#include "support.hpp"

using namespace fluidfluid;
using namespace fluidfluid::testing;

namespace {

// Smooth data with seeded random coefficients over a few fixed modes.
struct RandomData {
  std::array<double, 12> a{};
  explicit RandomData(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : a) v = u(rng);
  }
  VectorFunction f() const {
    return [a = a](const Point& p) {
      return Vec2{a[0] + a[1] * p.x * p.y + a[2] * std::sin(pi * p.x), a[3] * p.y + a[4] * std::cos(pi * p.y)};
    };
  }
  ScalarFunction g() const {
    return [a = a](const Point& p) { return a[5] + a[6] * p.x + a[7] * std::sin(2 * pi * p.y); };
  }
  VectorFunction h() const {
    return [a = a](const Point& p) {
      return Vec2{a[8] * std::cos(pi * p.x) + a[9] * p.y, a[10] + a[11] * p.x * p.x};
    };
  }
};

}  // namespace

TEST_CASE("observed order of convergence") {
  const auto e = eoc({1.0, 0.25, 0.0625});
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(2.0));
  CHECK(e[1] == doctest::Approx(2.0));
  CHECK(eoc({1.0}).empty());
}

TEST_CASE("manufactured convergence for both flows") {
  for (auto preset : {FlowPreset::Zero, FlowPreset::Vortex}) {
    const auto t = run_mms(MmsKind::Mms1, {4, 8, 16}, MaterialParams{}, BackgroundFlow(preset), 1);
    CHECK(t.levels.size() == 3);
    CHECK(t.invariant_violations.empty());
    CHECK(t.non_monotone.empty());
    CHECK(t.min_eoc() >= 0.9);
    CHECK(t.levels[1].h == 0.125);
    CHECK(t.levels[1].ny_half == 4);
    for (const auto& l : t.levels) CHECK(l.report.saddle_residual <= 1e-10);
  }
  CHECK_THROWS_AS(run_mms(MmsKind::Mms1, {3, 6}, MaterialParams{}, BackgroundFlow{}), ValidationError);
}

TEST_CASE("fields in the discrete space are reproduced exactly") {
  for (int nx : {2, 4, 6}) {
    const auto t = run_mms(MmsKind::InSpace, {nx, 2 * nx}, MaterialParams{}, BackgroundFlow{}, 1);
    for (const auto& l : t.levels) {
      CHECK(l.err_um_h1 <= 1e-9);
      CHECK(l.err_pm_l2 <= 1e-9);
      CHECK(l.err_up_h1 <= 1e-9);
      CHECK(l.err_pp_l2 <= 1e-9);
    }
  }
}

TEST_CASE("inf-sup probe: uniform positive constant and equal-order control") {
  std::vector<double> beta;
  for (int nx : {4, 8, 16}) {
    const auto r = infsup_probe(mesh(nx, nx / 2));
    CHECK(r.beta > 0.0);
    CHECK(r.residual <= 1e-6);
    beta.push_back(r.beta);
  }
  CHECK(*std::max_element(beta.begin(), beta.end()) / *std::min_element(beta.begin(), beta.end()) <= 2.0);
  const auto control = infsup_probe(mesh(4, 2), ProbePressure::P2);
  CHECK(control.beta * 10.0 <= beta.front());
}

TEST_CASE("monolithic oracle agrees with the interface Schur path") {
  for (auto preset : {FlowPreset::Zero, FlowPreset::Vortex}) {
    const MaterialParams p;
    const BackgroundFlow u(preset);
    const auto m = mesh(8, 4);
    const MmsCase mms(MmsKind::Mms1, p, u);
    MonolithicReport mr;
    const auto a = monolithic_solve(m, p, u, mms.f_fn(), mms.g_fn(), mms.h_fn(), mms.jump_fn(), &mr);
    const auto b = solve_static(m, p, u, mms.f_fn(), mms.g_fn(), mms.h_fn(), mms.jump_fn());
    CHECK(mr.residual <= 1e-10);
    CHECK(compare_states(a, b).max() <= 1e-8);
  }
  const auto m = mesh(4, 2);
  const auto z = monolithic_solve(m, MaterialParams{}, BackgroundFlow{}, {}, {}, {});
  CHECK(max_abs(z.u_plus.coeffs) == 0.0);
  CHECK(max_abs(z.u_minus.coeffs) == 0.0);
  CHECK(max_abs(z.p_minus->coeffs) == 0.0);

  std::mt19937_64 rng(31);
  const RandomData d(rng);
  const auto x1 = monolithic_solve(m, MaterialParams{}, BackgroundFlow(FlowPreset::Vortex), d.f(), d.g(), d.h());
  const VectorFunction f3 = [&](const Point& p) { auto v = d.f()(p); return Vec2{3 * v[0], 3 * v[1]}; };
  const ScalarFunction g3 = [&](const Point& p) { return 3 * d.g()(p); };
  const VectorFunction h3 = [&](const Point& p) { auto v = d.h()(p); return Vec2{3 * v[0], 3 * v[1]}; };
  const auto x3 = monolithic_solve(m, MaterialParams{}, BackgroundFlow(FlowPreset::Vortex), f3, g3, h3);
  for (std::size_t i = 0; i < x1.u_minus.coeffs.size(); ++i)
    CHECK(x3.u_minus.coeffs[i] == doctest::Approx(3 * x1.u_minus.coeffs[i]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("state comparison") {
  const CoupledSolver s(mesh(4, 2), MaterialParams{}, BackgroundFlow{});
  auto a = s.zero_state();
  auto b = s.zero_state();
  CHECK(compare_states(a, b).max() == 0.0);
  b.p_plus = interpolate(s.p_plus_space(), ScalarFunction([](const Point&) { return 1.0; }));
  const auto d = compare_states(a, b);
  CHECK(d.p_plus > 0.0);
  CHECK(d.u_plus == 0.0);
}

TEST_CASE("discrete dissipativity identity") {
  const MaterialParams p;
  const CoupledSolver s(mesh(6, 3), p, BackgroundFlow(FlowPreset::Vortex));
  const auto zero = s.data_from_functions({}, {}, {});
  const auto r0 = dissipativity_check(s, zero, s.solve(zero));
  CHECK(r0.lhs == 0.0);
  CHECK(r0.rhs == 0.0);

  std::mt19937_64 rng(2718);
  for (int k = 0; k < 20; ++k) {
    const RandomData d(rng);
    const auto data = s.data_from_functions(d.f(), d.g(), d.h());
    const auto x = s.solve(data);
    const auto r = dissipativity_check(s, data, x);
    CHECK(r.lhs <= 1e-10);
    CHECK(r.relative_gap() <= 1e-6);
  }
}
