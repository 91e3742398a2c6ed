#include "fluidfluid/quadrature.hpp"

#include <cmath>
#include <string>

#include "fluidfluid/errors.hpp"

namespace fluidfluid {

namespace {

TriangleRule centroid_rule() { return {1, {{1.0 / 3.0, 1.0 / 3.0}}, {0.5}}; }

TriangleRule three_point_rule() {
  return {2, {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}}, {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}};
}

// Strang-Fix / Dunavant six-point rule, degree 4.
TriangleRule six_point_rule() {
  const double a1 = 0.445948490915964886318329253883;
  const double w1 = 0.223381589678011465944827307725 / 2.0;
  const double a2 = 0.091576213509770743459571463402;
  const double w2 = 0.109951743655321867388505525608 / 2.0;
  TriangleRule r{4, {}, {}};
  for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
    const double b = 1.0 - 2.0 * a;
    r.points.insert(r.points.end(), {{a, a}, {b, a}, {a, b}});
    r.weights.insert(r.weights.end(), {w, w, w});
  }
  return r;
}

// Radon's seven-point rule, degree 5.
TriangleRule seven_point_rule() {
  const double s = std::sqrt(15.0);
  const double a = (6.0 - s) / 21.0, b = (9.0 + 2.0 * s) / 21.0;
  const double c = (6.0 + s) / 21.0, d = (9.0 - 2.0 * s) / 21.0;
  const double wa = (155.0 - s) / 2400.0, wc = (155.0 + s) / 2400.0;
  return {5,
          {{1.0 / 3.0, 1.0 / 3.0}, {a, a}, {b, a}, {a, b}, {c, c}, {d, c}, {c, d}},
          {9.0 / 80.0, wa, wa, wa, wc, wc, wc}};
}

}  // namespace

const TriangleRule& quad_rule(int degree) {
  static const TriangleRule r1 = centroid_rule();
  static const TriangleRule r2 = three_point_rule();
  static const TriangleRule r4 = six_point_rule();
  static const TriangleRule r5 = seven_point_rule();
  switch (degree) {
    case 0:
    case 1:
      return r1;
    case 2:
      return r2;
    case 3:
    case 4:
      return r4;
    case 5:
      return r5;
    default:
      throw ConfigError("unsupported triangle quadrature degree " + std::to_string(degree));
  }
}

const LineRule& gauss_line(int n) {
  static const LineRule rules[5] = {
      {{0.5}, {1.0}},
      {{0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)}, {0.5, 0.5}},
      {{0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}},
      {{0.5 - 0.5 * 0.861136311594052575224, 0.5 - 0.5 * 0.339981043584856264803, 0.5 + 0.5 * 0.339981043584856264803,
        0.5 + 0.5 * 0.861136311594052575224},
       {0.5 * 0.347854845137453857373, 0.5 * 0.652145154862546142627, 0.5 * 0.652145154862546142627,
        0.5 * 0.347854845137453857373}},
      {{0.5 - 0.5 * 0.906179845938663992798, 0.5 - 0.5 * 0.538469310105683091036, 0.5,
        0.5 + 0.5 * 0.538469310105683091036, 0.5 + 0.5 * 0.906179845938663992798},
       {0.5 * 0.236926885056189087514, 0.5 * 0.478628670499366468041, 0.5 * 0.568888888888888888889,
        0.5 * 0.478628670499366468041, 0.5 * 0.236926885056189087514}},
  };
  if (n < 1 || n > 5) throw ConfigError("unsupported Gauss line rule size " + std::to_string(n));
  return rules[n - 1];
}

}  // namespace fluidfluid
