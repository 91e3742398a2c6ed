#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fluidfluid/assembly.hpp"
#include "fluidfluid/flow.hpp"

namespace fluidfluid {

/// Built-in manufactured solutions.
///   Mms1:    u- = curl(psi-^2), psi- = x(1-x) y (1/2-y);
///            u+ = curl(psi+^2), psi+ = x(1-x)(y-1/2)(1-y);
///            p- = x y - 1/8,  p+ = cos(pi x)(y - 1/2)
///   Mms2:    as Mms1 with the harmonic p- = cos(pi x) cosh(pi y) / cosh(pi/2)
///   InSpace: zero velocities and linear pressures, reproduced exactly by
///            the discretization when U = 0
enum class MmsKind : std::uint8_t { Mms1, Mms2, InSpace };

const char* to_string(MmsKind k);
/// "mms1" | "mms2" | "in_space"; ConfigError otherwise.
MmsKind parse_mms_kind(const std::string& name);

/// Exact fields with derivatives obtained from third-order jets, and the
/// forcings that make them solve the resolvent system:
///   f = lambda u+ + U.grad u+ - div sigma(u+) + 1/2 div U u+ + grad p+
///   g = lambda p+ + div u+ + U.grad p+ + 1/2 div U p+
///   h = lambda u- - Lap u- + grad p-
///   j = (sigma(u+) nu - p+ nu) - (du-/dnu - p- nu)   on the interface
/// with nu = (0, -1). The jump enters the lower load as +<j, phi>.
class MmsCase {
 public:
  MmsCase(MmsKind kind, const MaterialParams& params, const BackgroundFlow& flow);

  MmsKind kind() const noexcept { return kind_; }
  const MaterialParams& params() const noexcept { return params_; }

  FieldSample u_plus(const Point& p) const;
  FieldSample u_minus(const Point& p) const;
  FieldSample p_plus(const Point& p) const;
  FieldSample p_minus(const Point& p) const;

  Vec2 laplacian_u_minus(const Point& p) const;
  double laplacian_p_minus(const Point& p) const;
  /// Rows of sigma(u+).
  std::array<Vec2, 2> stress_plus(const Point& p) const;

  Vec2 f(const Point& p) const;
  double g(const Point& p) const;
  Vec2 h(const Point& p) const;
  Vec2 jump(const Point& p) const;

  VectorFunction f_fn() const;
  ScalarFunction g_fn() const;
  VectorFunction h_fn() const;
  VectorFunction jump_fn() const;

  ExactFunction u_plus_fn() const;
  ExactFunction u_minus_fn() const;
  ExactFunction p_plus_fn() const;
  ExactFunction p_minus_fn() const;

  /// Spot checks at seeded random points: div u- = 0, matching traces on
  /// the interface, zero velocity on the outer walls, and harmonic p- for
  /// Mms2. Returns one message per violation above 1e-10.
  std::vector<std::string> check_invariants(std::uint64_t seed, int samples = 100) const;

 private:
  struct VelocityJet {
    Vec2 value;
    std::array<Vec2, 2> grad;
    Vec2 laplacian;
    Vec2 grad_div;
  };
  VelocityJet velocity(const Point& p, bool plus) const;

  MmsKind kind_;
  MaterialParams params_;
  BackgroundFlow flow_;
};

}  // namespace fluidfluid
