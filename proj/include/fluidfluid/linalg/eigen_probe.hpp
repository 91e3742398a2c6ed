#pragma once

#include <cstddef>
#include <vector>

#include "fluidfluid/linalg/csr.hpp"

namespace fluidfluid::linalg {

struct EigenProbeOptions {
  std::size_t block_size = 6;
  std::size_t max_iterations = 3000;
  /// ||B x - mu A x||_2 <= tolerance * ||A x||_2 on return.
  double tolerance = 1e-8;
};

struct EigenPair {
  double value = 0.0;
  Vector vector;  // A-normalized
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Smallest mu with B x = mu A x for A symmetric positive definite and B
/// symmetric positive semidefinite. Block inverse iteration on the slightly
/// shifted pencil with Rayleigh-Ritz extraction; deterministic start block.
/// Throws NumericalFailure when the iteration cap is hit.
EigenPair smallest_gen_eig(const CsrMatrix& a, const CsrMatrix& b, EigenProbeOptions options = {});

/// Eigen-decomposition of a small dense symmetric matrix (row-major, n x n)
/// by cyclic Jacobi rotations. Eigenvalues ascending; vectors stored as
/// columns of a row-major n x n matrix.
void symmetric_eigen_small(std::size_t n, std::vector<double> m, std::vector<double>& values,
                           std::vector<double>& vectors);

}  // namespace fluidfluid::linalg
