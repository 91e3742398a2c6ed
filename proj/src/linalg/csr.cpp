#include "fluidfluid/linalg/csr.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/simd/kernels.hpp"

namespace fluidfluid::linalg {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row < 0 || t.col < 0 || static_cast<std::size_t>(t.row) >= rows ||
        static_cast<std::size_t>(t.col) >= cols)
      throw ValidationError("triplet index out of range");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m(rows, cols);
  m.cols_idx_.reserve(entries.size());
  m.values_.reserve(entries.size());
  std::size_t k = 0;
  std::vector<std::size_t> counts(rows, 0);
  while (k < entries.size()) {
    const auto r = entries[k].row;
    const auto c = entries[k].col;
    double sum = 0.0;
    while (k < entries.size() && entries[k].row == r && entries[k].col == c) sum += entries[k++].value;
    if (sum != 0.0) {
      m.cols_idx_.push_back(c);
      m.values_.push_back(sum);
      ++counts[static_cast<std::size_t>(r)];
    }
  }
  for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] = m.row_ptr_[i] + counts[i];
  return m;
}

CsrMatrix CsrMatrix::from_dense(std::size_t rows, std::size_t cols,
                                std::span<const double> row_major) {
  if (row_major.size() != rows * cols) throw ValidationError("dense size mismatch");
  CsrMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = row_major[i * cols + j];
      if (v != 0.0) {
        m.cols_idx_.push_back(static_cast<std::int32_t>(j));
        m.values_.push_back(v);
      }
    }
    m.row_ptr_[i + 1] = m.values_.size();
  }
  return m;
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<double> d(n, 1.0);
  return diagonal(d);
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  CsrMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != 0.0) {
      m.cols_idx_.push_back(static_cast<std::int32_t>(i));
      m.values_.push_back(d[i]);
    }
    m.row_ptr_[i + 1] = m.values_.size();
  }
  return m;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_cols(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::int32_t>(j));
  if (it == cols.end() || *it != static_cast<std::int32_t>(j)) return 0.0;
  return values_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw ValidationError("multiply: size mismatch");
  const auto& k = simd::active();
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::size_t b = row_ptr_[i];
    y[i] = k.gather_dot(values_.data() + b, cols_idx_.data() + b, x.data(), row_ptr_[i + 1] - b);
  }
}

Vector CsrMatrix::multiply(std::span<const double> x) const {
  Vector y(rows_);
  multiply(x, y);
  return y;
}

Vector CsrMatrix::multiply_transpose(std::span<const double> x) const {
  if (x.size() != rows_) throw ValidationError("multiply_transpose: size mismatch");
  Vector y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[cols_idx_[k]] += values_[k] * xi;
  }
  return y;
}

double CsrMatrix::bilinear(std::span<const double> v, std::span<const double> u) const {
  if (v.size() != rows_) throw ValidationError("bilinear: size mismatch");
  const Vector au = multiply(u);
  return simd::dot(v, au);
}

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t(cols_, rows_);
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (auto c : cols_idx_) ++counts[static_cast<std::size_t>(c) + 1];
  for (std::size_t j = 0; j < cols_; ++j) counts[j + 1] += counts[j];
  t.row_ptr_ = counts;
  t.cols_idx_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::size_t dst = next[static_cast<std::size_t>(cols_idx_[k])]++;
      t.cols_idx_[dst] = static_cast<std::int32_t>(i);
      t.values_[dst] = values_[k];
    }
  }
  return t;
}

CsrMatrix CsrMatrix::scaled(double alpha) const {
  if (alpha == 0.0) return CsrMatrix(rows_, cols_);
  CsrMatrix m = *this;
  for (auto& v : m.values_) v *= alpha;
  return m;
}

CsrMatrix CsrMatrix::add(const CsrMatrix& a, const CsrMatrix& b, double alpha, double beta) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = a.row_ptr_[i]; k < a.row_ptr_[i + 1]; ++k)
      t.push_back({static_cast<std::int32_t>(i), a.cols_idx_[k], alpha * a.values_[k]});
    for (std::size_t k = b.row_ptr_[i]; k < b.row_ptr_[i + 1]; ++k)
      t.push_back({static_cast<std::int32_t>(i), b.cols_idx_[k], beta * b.values_[k]});
  }
  return from_triplets(a.rows_, a.cols_, std::move(t));
}

double CsrMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += std::abs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  const double bound = tol * max_abs();
  const CsrMatrix t = transpose();
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto ca = row_cols(i);
    const auto cb = t.row_cols(i);
    const auto va = row_values(i);
    const auto vb = t.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ca.size() || q < cb.size()) {
      double diff;
      if (q == cb.size() || (p < ca.size() && ca[p] < cb[q])) {
        diff = va[p++];
      } else if (p == ca.size() || cb[q] < ca[p]) {
        diff = vb[q++];
      } else {
        diff = va[p++] - vb[q++];
      }
      if (std::abs(diff) > bound) return false;
    }
  }
  return true;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      d[i * cols_ + static_cast<std::size_t>(cols_idx_[k])] = values_[k];
  return d;
}

void CsrMatrix::append_to(std::vector<Triplet>& out, std::span<const std::int32_t> row_map,
                          std::span<const std::int32_t> col_map, double scale,
                          std::int32_t row_offset, std::int32_t col_offset) const {
  if (row_map.size() != rows_ || col_map.size() != cols_)
    throw ValidationError("append_to: index map size mismatch");
  if (scale == 0.0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const std::int32_t r = row_map[i];
    if (r < 0) continue;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const std::int32_t c = col_map[static_cast<std::size_t>(cols_idx_[k])];
      if (c < 0) continue;
      out.push_back({r + row_offset, c + col_offset, scale * values_[k]});
    }
  }
}

CsrMatrix CsrMatrix::submatrix(std::span<const std::int32_t> row_map, std::size_t new_rows,
                               std::span<const std::int32_t> col_map, std::size_t new_cols) const {
  std::vector<Triplet> t;
  append_to(t, row_map, col_map);
  return from_triplets(new_rows, new_cols, std::move(t));
}

void CsrMatrix::write_matrix_market(std::ostream& os) const {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
  os << std::setprecision(17);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      os << i + 1 << ' ' << cols_idx_[k] + 1 << ' ' << values_[k] << '\n';
}

bool CsrMatrix::check_invariants() const {
  if (row_ptr_.size() != rows_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != nnz()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (cols_idx_[k] < 0 || static_cast<std::size_t>(cols_idx_[k]) >= cols_) return false;
      if (values_[k] == 0.0) return false;
      if (k > row_ptr_[i] && cols_idx_[k] <= cols_idx_[k - 1]) return false;
    }
  }
  return true;
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double norm2(std::span<const double> x) { return std::sqrt(simd::dot(x, x)); }

double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
  Vector r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const double denom = a.norm_inf() * norm_inf(x) + norm_inf(b);
  if (denom == 0.0) return 0.0;
  return norm_inf(r) / denom;
}

}  // namespace fluidfluid::linalg
