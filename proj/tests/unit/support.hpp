#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "fluidfluid/mesh.hpp"
#include "fluidfluid/spaces.hpp"

namespace fluidfluid::testing {

inline constexpr double pi = std::numbers::pi;

inline std::shared_ptr<const Mesh> mesh(int nx, int ny) {
  return std::make_shared<const Mesh>(build_two_domain_mesh(nx, ny));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Random coefficients on free DOFs, zero on constrained ones.
inline std::vector<double> random_free(const FeSpace& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(s.n_dofs(), 0.0);
  for (std::size_t d = 0; d < c.size(); ++d)
    if (!s.dirichlet_mask()[d]) c[d] = u(rng);
  return c;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(n);
  for (auto& v : c) v = u(rng);
  return c;
}

}  // namespace fluidfluid::testing
