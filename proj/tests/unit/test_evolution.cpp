#include <cmath>
#include <random>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/evolution.hpp"
#include "fluidfluid/mms.hpp"
#include "support.hpp"

using namespace fluidfluid;
using namespace fluidfluid::testing;

namespace {

CoupledState smooth_state(const CoupledSolver& s, bool project = true) {
  const MmsCase c(MmsKind::Mms1, s.params(), s.flow());
  return initial_state(
      s, [&](const Point& p) { return c.u_plus(p).value; }, [&](const Point& p) { return c.p_plus(p).value[0]; },
      [&](const Point& p) { return c.u_minus(p).value; }, project);
}

CoupledState random_state(const CoupledSolver& s, std::mt19937_64& rng) {
  CoupledState x = s.zero_state();
  x.u_plus.coeffs = random_vector(x.u_plus.coeffs.size(), rng);
  x.p_plus.coeffs = random_vector(x.p_plus.coeffs.size(), rng);
  x.u_minus.coeffs = random_vector(x.u_minus.coeffs.size(), rng);
  return x;
}

CoupledState difference(const CoupledState& a, const CoupledState& b) {
  CoupledState d = a;
  for (std::size_t i = 0; i < d.u_plus.coeffs.size(); ++i) d.u_plus.coeffs[i] -= b.u_plus.coeffs[i];
  for (std::size_t i = 0; i < d.p_plus.coeffs.size(); ++i) d.p_plus.coeffs[i] -= b.p_plus.coeffs[i];
  for (std::size_t i = 0; i < d.u_minus.coeffs.size(); ++i) d.u_minus.coeffs[i] -= b.u_minus.coeffs[i];
  return d;
}

CoupledSolver solver_with_lambda(int nx, double lambda, FlowPreset preset) {
  MaterialParams p;
  p.lambda_res = lambda;
  return CoupledSolver(mesh(nx, nx / 2), p, BackgroundFlow(preset));
}

}  // namespace

TEST_CASE("state inner product") {
  const auto s = solver_with_lambda(4, 1.0, FlowPreset::Zero);
  std::mt19937_64 rng(2);
  const auto zero = s.zero_state();
  const auto y = random_state(s, rng);
  CHECK(h_inner(zero, y) == 0.0);

  auto x = s.zero_state();
  x.u_plus = interpolate(s.u_plus_space(), VectorFunction([](const Point&) { return Vec2{1.0, 0.0}; }));
  CHECK(h_inner(x, x) == doctest::Approx(0.5).epsilon(1e-14));
  s.update_norm(x);
  CHECK(x.h_norm * x.h_norm == doctest::Approx(0.5).epsilon(1e-14));

  const StateMetric metric(x);
  for (int k = 0; k < 10; ++k) {
    const auto a = random_state(s, rng), b = random_state(s, rng);
    CHECK(std::abs(h_inner(a, b) - h_inner(b, a)) <= 1e-14 * std::max(1.0, std::abs(h_inner(a, b))));
    CHECK(metric.inner(a, b) == doctest::Approx(h_inner(a, b)).epsilon(1e-13));
    CHECK(metric.norm(a) == doctest::Approx(std::sqrt(h_inner(a, a))).epsilon(1e-13));
  }
  const auto other = solver_with_lambda(6, 1.0, FlowPreset::Zero).zero_state();
  CHECK_THROWS_AS(h_inner(x, other), ValidationError);
}

TEST_CASE("resolvent step: zero state and dissipation") {
  const auto s = solver_with_lambda(6, 4.0, FlowPreset::Vortex);
  const auto z = step_resolvent(s, s.zero_state());
  CHECK(z.h_norm == 0.0);

  std::mt19937_64 rng(6);
  for (int k = 0; k < 5; ++k) {
    auto x = random_state(s, rng);
    // Make the state admissible: continuous trace.
    const auto tr = trace_on_interface(x.u_minus);
    for (std::size_t i = 0; i < tr.size(); ++i)
      x.u_plus.coeffs[static_cast<std::size_t>(s.u_plus_space()->interface_dofs()[i])] = tr[i];
    s.update_norm(x);
    const auto y = step_resolvent(s, x);
    CHECK(y.h_norm <= x.h_norm * (1.0 + 1e-12));
  }
}

TEST_CASE("resolvent step is consistent as lambda grows") {
  std::vector<double> scaled;
  for (double lambda : {10.0, 100.0, 1000.0}) {
    const auto s = solver_with_lambda(6, lambda, FlowPreset::Vortex);
    const auto x = smooth_state(s);
    const auto y = step_resolvent(s, x);
    const double d = std::sqrt(h_inner(difference(y, x), difference(y, x)));
    scaled.push_back(lambda * d);
  }
  // lambda * |step(x) - x| converges, so the defect is O(1 / lambda).
  for (double v : scaled) CHECK(std::isfinite(v));
  CHECK(std::abs(scaled[2] - scaled[1]) < 0.5 * std::abs(scaled[1] - scaled[0]));
  CHECK(scaled[2] <= 1.1 * scaled[1]);
}

TEST_CASE("evolution: zero trajectory, contraction, refinement in time") {
  MaterialParams p;
  const BackgroundFlow u(FlowPreset::Vortex);
  const auto m = mesh(6, 3);
  {
    const CoupledSolver s(m, p, u);
    const auto tr = evolve(s.zero_state(), 0.5, 4, p, u, true);
    CHECK(tr.states.size() == 5);
    for (double v : tr.h_norms) CHECK(v == 0.0);
    CHECK(tr.lambda == 8.0);
    CHECK(tr.times.back() == 0.5);
  }
  const double t = 0.25;
  std::vector<CoupledState> finals;
  for (int n : {8, 16, 32, 64}) {
    MaterialParams pn = p;
    pn.lambda_res = n / t;
    const CoupledSolver s(m, pn, u);
    const auto x0 = smooth_state(s);
    const auto tr = evolve(s, x0, t, n);
    for (std::size_t k = 1; k < tr.h_norms.size(); ++k) CHECK(tr.h_norms[k] <= tr.h_norms[k - 1] * (1.0 + 1e-12));
    finals.push_back(tr.final_state);
  }
  std::vector<double> gaps;
  for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
    const auto d = difference(finals[k], finals[k + 1]);
    gaps.push_back(std::sqrt(h_inner(d, d)));
  }
  for (std::size_t k = 1; k < gaps.size(); ++k) CHECK(gaps[k] < gaps[k - 1]);
}

TEST_CASE("evolution argument checks") {
  const auto s = solver_with_lambda(4, 3.0, FlowPreset::Zero);
  CHECK_THROWS_AS(evolve(s, s.zero_state(), 1.0, 4), ValidationError);
  CHECK_THROWS_AS(evolve(s, s.zero_state(), 1.0, 0), ValidationError);
  CHECK_THROWS_AS(evolve(s, s.zero_state(), -1.0, 3), ValidationError);
  CHECK_NOTHROW(evolve(s, s.zero_state(), 1.0, 3));
}

TEST_CASE("initial projection yields an admissible state") {
  const auto s = solver_with_lambda(6, 1.0, FlowPreset::Zero);
  const auto x = smooth_state(s, true);
  CHECK(trace_on_interface(x.u_plus) == trace_on_interface(x.u_minus));
  const auto div = s.lower_coupling().multiply_transpose(x.u_minus.coeffs);
  CHECK(max_abs(div) <= 1e-12);
  // The plain interpolant is close to the projection for smooth divergence-free data.
  const auto y = smooth_state(s, false);
  const auto d = difference(x, y);
  CHECK(std::sqrt(h_inner(d, d)) <= 1e-2 * x.h_norm);
  CHECK(x.h_norm > 0.0);
}
