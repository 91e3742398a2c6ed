#include "fluidfluid/flow.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

const char* to_string(FlowPreset p) { return p == FlowPreset::Zero ? "zero" : "vortex"; }

FlowPreset parse_flow_preset(const std::string& name) {
  if (name == "zero") return FlowPreset::Zero;
  if (name == "vortex") return FlowPreset::Vortex;
  throw ConfigError("unknown flow preset '" + name + "' (expected \"zero\" or \"vortex\")");
}

Vec2 BackgroundFlow::velocity(const Point& p) const {
  if (is_zero()) return {0.0, 0.0};
  constexpr double pi = std::numbers::pi;
  const double sx = std::sin(pi * p.x), cx = std::cos(pi * p.x);
  const double sy = std::sin(2 * pi * (p.y - 0.5)), cy = std::cos(2 * pi * (p.y - 0.5));
  return {2 * pi * sx * cy, -pi * cx * sy};
}

double BackgroundFlow::divergence(const Point&) const { return 0.0; }

std::array<Jet3, 2> BackgroundFlow::jet(const Point& p) const {
  if (is_zero()) return {Jet3(0.0), Jet3(0.0)};
  constexpr double pi = std::numbers::pi;
  const Jet3 x = Jet3::var_x(p.x), y = Jet3::var_y(p.y);
  return {2 * pi * sin(pi * x) * cos(2 * pi * (y - 0.5)), -pi * cos(pi * x) * sin(2 * pi * (y - 0.5))};
}

std::vector<std::string> check_flow_invariants(const BackgroundFlow& flow, std::uint64_t seed, int samples) {
  std::vector<std::string> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    const double s = u(rng);
    const double normal_flux[4] = {flow.velocity({s, 0.5})[1], flow.velocity({s, 1.0})[1], flow.velocity({0.0, 0.5 + 0.5 * s})[0],
                                   flow.velocity({1.0, 0.5 + 0.5 * s})[0]};
    for (double f : normal_flux)
      if (std::abs(f) > 1e-12) out.push_back("normal flux " + std::to_string(f) + " on the upper boundary");
    const Point p{0.05 + 0.9 * u(rng), 0.55 + 0.4 * u(rng)};
    const double e = 1e-5;
    const double fd = (flow.velocity({p.x + e, p.y})[0] - flow.velocity({p.x - e, p.y})[0]) / (2 * e) +
                      (flow.velocity({p.x, p.y + e})[1] - flow.velocity({p.x, p.y - e})[1]) / (2 * e);
    if (std::abs(fd - flow.divergence(p)) > 1e-6) out.push_back("divergence mismatch " + std::to_string(fd - flow.divergence(p)));
  }
  return out;
}

void MaterialParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("nu must be positive (got " + std::to_string(nu) + ")");
  if (!(lame_lambda >= 0.0) || !std::isfinite(lame_lambda))
    throw ValidationError("lame_lambda must be non-negative (got " + std::to_string(lame_lambda) + ")");
  if (!(lambda_res > 0.0) || !std::isfinite(lambda_res))
    throw ValidationError("lambda must be positive (got " + std::to_string(lambda_res) + ")");
}

}  // namespace fluidfluid
