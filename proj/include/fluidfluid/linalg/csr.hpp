#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace fluidfluid::linalg {

using Vector = std::vector<double>;

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing in
/// every row and no explicit zeros are stored.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t rows, std::size_t cols);

  /// Duplicates are summed; entries that sum to exactly zero are dropped.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static CsrMatrix from_dense(std::size_t rows, std::size_t cols, std::span<const double> row_major);
  static CsrMatrix identity(std::size_t n);
  static CsrMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::int32_t> row_cols(std::size_t i) const {
    return {cols_idx_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::int32_t>& col_indices() const noexcept { return cols_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  Vector multiply(std::span<const double> x) const;
  /// y = A^T x
  Vector multiply_transpose(std::span<const double> x) const;
  /// v^T A u
  double bilinear(std::span<const double> v, std::span<const double> u) const;

  CsrMatrix transpose() const;
  CsrMatrix scaled(double alpha) const;
  /// alpha * A + beta * B
  static CsrMatrix add(const CsrMatrix& a, const CsrMatrix& b, double alpha = 1.0, double beta = 1.0);

  double norm_inf() const;
  double max_abs() const;
  /// max |A_ij - A_ji| <= tol * max_abs
  bool is_symmetric(double tol = 0.0) const;
  std::vector<double> to_dense() const;

  /// Appends scale * A(i, j) as (row_map[i] + row_offset, col_map[j] + col_offset)
  /// for every stored entry whose mapped row and column are non-negative.
  void append_to(std::vector<Triplet>& out, std::span<const std::int32_t> row_map,
                 std::span<const std::int32_t> col_map, double scale = 1.0,
                 std::int32_t row_offset = 0, std::int32_t col_offset = 0) const;

  /// Extracts rows/cols through index maps (-1 drops the index).
  CsrMatrix submatrix(std::span<const std::int32_t> row_map, std::size_t new_rows,
                      std::span<const std::int32_t> col_map, std::size_t new_cols) const;

  /// Coordinate-format MatrixMarket export.
  void write_matrix_market(std::ostream& os) const;

  /// True when the structural invariants hold (sorted, unique, no zeros).
  bool check_invariants() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::int32_t> cols_idx_;
  std::vector<double> values_;
};

double norm_inf(std::span<const double> x);
double norm2(std::span<const double> x);

/// ||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf), zero for the trivial system.
double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b);

}  // namespace fluidfluid::linalg
