#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace fluidfluid {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Vec2 = std::array<double, 2>;

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Vec2(const Point&)>;

enum class Subdomain : std::uint8_t { Plus, Minus };

enum class BoundaryTag : std::uint8_t { Gamma, OuterPlus, OuterMinus };

/// Height of the interface between the two stacked rectangles.
inline constexpr double kInterfaceY = 0.5;

/// Fixed unit normal on the interface, outward from the upper domain.
inline constexpr Vec2 kInterfaceNormal{0.0, -1.0};

const char* to_string(Subdomain s);
const char* to_string(BoundaryTag t);

}  // namespace fluidfluid
