#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fluidfluid/linalg/csr.hpp"

namespace fluidfluid::linalg {

struct FactorOptions {
  /// Below this size the matrix is factorized densely.
  std::size_t dense_threshold = 500;
  /// Pivots with |p| <= pivot_tolerance * max|A_ij| are treated as zero.
  double pivot_tolerance = 1e-14;
  /// Steps of iterative refinement applied by solve().
  int refinement_steps = 1;
};

struct FactorStats {
  std::size_t n = 0;
  bool dense = false;
  std::size_t lower_bandwidth = 0;
  std::size_t upper_bandwidth = 0;
  std::size_t stored_entries = 0;
};

/// LU factorization with partial (row) pivoting, PA = LU. Sparse matrices
/// are reordered with reverse Cuthill-McKee and factorized in band storage;
/// small ones go through a dense kernel. Handles indefinite saddle-point
/// matrices. Immutable after construction; concurrent solves are safe.
class Factorization {
 public:
  explicit Factorization(const CsrMatrix& a, FactorOptions options = {});

  std::size_t size() const noexcept { return n_; }
  const FactorStats& stats() const noexcept { return stats_; }

  Vector solve(std::span<const double> b) const;

 private:
  void factor_dense(const CsrMatrix& a);
  void factor_band(const CsrMatrix& a);
  void solve_raw(std::span<double> x) const;

  std::size_t n_ = 0;
  FactorOptions options_;
  FactorStats stats_;
  CsrMatrix original_;

  // Permutation from the fill-reducing ordering: perm_[new] = old.
  std::vector<std::int32_t> perm_;
  // Row interchange chosen at each elimination step.
  std::vector<std::int32_t> pivots_;

  // Dense: row-major n x n. Band: row r holds columns [r - kl, r - kl + width).
  std::vector<double> lu_;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t width_ = 0;
};

}  // namespace fluidfluid::linalg
