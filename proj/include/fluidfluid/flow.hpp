#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fluidfluid/geometry.hpp"
#include "fluidfluid/jet.hpp"

namespace fluidfluid {

enum class FlowPreset : std::uint8_t { Zero, Vortex };

const char* to_string(FlowPreset p);
/// "zero" | "vortex"; ConfigError otherwise.
FlowPreset parse_flow_preset(const std::string& name);

/// Analytic background velocity U on the upper domain, tangential on its
/// boundary. The vortex preset is the rotated gradient of
/// sin(pi x) sin(2 pi (y - 1/2)).
class BackgroundFlow {
 public:
  explicit BackgroundFlow(FlowPreset preset = FlowPreset::Zero) : preset_(preset) {}

  FlowPreset preset() const noexcept { return preset_; }
  bool is_zero() const noexcept { return preset_ == FlowPreset::Zero; }

  Vec2 velocity(const Point& p) const;
  double divergence(const Point& p) const;
  /// Third-order jets of both components at p.
  std::array<Jet3, 2> jet(const Point& p) const;

 private:
  FlowPreset preset_;
};

/// Spot checks of the flow contract: U.n = 0 on the four sides of the upper
/// rectangle and agreement of divergence() with a central difference.
/// Returns one message per violation.
std::vector<std::string> check_flow_invariants(const BackgroundFlow& flow, std::uint64_t seed, int samples = 100);

struct MaterialParams {
  double nu = 1.0;           // shear viscosity, > 0
  double lame_lambda = 0.0;  // bulk Lame coefficient, >= 0
  double lambda_res = 1.0;   // resolvent parameter, > 0

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

}  // namespace fluidfluid
