#pragma once

#include <vector>

#include "fluidfluid/geometry.hpp"

namespace fluidfluid {

/// Rule on the reference triangle (0,0), (1,0), (0,1); weights sum to 1/2.
struct TriangleRule {
  int degree = 0;
  std::vector<Point> points;
  std::vector<double> weights;
};

/// Smallest built-in rule exact for polynomials of total degree <= degree.
/// All weights positive. Degrees 0..5 are supported; ConfigError otherwise.
const TriangleRule& quad_rule(int degree);

/// Gauss-Legendre rule on [0, 1] with n points (n = 1..5); weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};
const LineRule& gauss_line(int n);

}  // namespace fluidfluid
