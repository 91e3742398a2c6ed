#include "fluidfluid/linalg/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/linalg/ordering.hpp"
#include "fluidfluid/simd/kernels.hpp"

namespace fluidfluid::linalg {

Factorization::Factorization(const CsrMatrix& a, FactorOptions options)
    : n_(a.rows()), options_(options), original_(a) {
  if (a.rows() != a.cols()) throw ValidationError("factorize: matrix is not square");
  stats_.n = n_;
  if (n_ == 0) return;
  if (n_ < options_.dense_threshold) {
    factor_dense(a);
  } else {
    factor_band(a);
  }
}

void Factorization::factor_dense(const CsrMatrix& a) {
  const std::size_t n = n_;
  stats_.dense = true;
  stats_.lower_bandwidth = stats_.upper_bandwidth = n - 1;
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  lu_ = a.to_dense();
  pivots_.assign(n, 0);
  const double tol = options_.pivot_tolerance * a.max_abs();
  const auto& k = simd::active();
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t p = r;
    double best = std::abs(lu_[r * n + r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      const double v = std::abs(lu_[i * n + r]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= tol) throw SingularMatrixError(r, best);
    pivots_[r] = static_cast<std::int32_t>(p);
    if (p != r) std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(r * n),
                                 lu_.begin() + static_cast<std::ptrdiff_t>((r + 1) * n),
                                 lu_.begin() + static_cast<std::ptrdiff_t>(p * n));
    const double piv = lu_[r * n + r];
    const double* prow = &lu_[r * n + r + 1];
    for (std::size_t i = r + 1; i < n; ++i) {
      double& lir = lu_[i * n + r];
      if (lir == 0.0) continue;
      lir /= piv;
      k.axpy(-lir, prow, &lu_[i * n + r + 1], n - r - 1);
    }
  }
  stats_.stored_entries = n * n;
}

void Factorization::factor_band(const CsrMatrix& a) {
  const std::size_t n = n_;
  perm_ = reverse_cuthill_mckee(a);
  const Bandwidth bw = bandwidth(a, perm_);
  kl_ = bw.lower;
  ku_ = bw.upper;
  width_ = 2 * kl_ + ku_ + 1;
  stats_.lower_bandwidth = kl_;
  stats_.upper_bandwidth = ku_;
  stats_.stored_entries = n * width_;

  std::vector<std::int32_t> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[static_cast<std::size_t>(perm_[k])] = static_cast<std::int32_t>(k);
  lu_.assign(n * width_, 0.0);
  auto cell = [&](std::size_t row, std::size_t col) -> double& {
    return lu_[row * width_ + (col + kl_ - row)];
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    const auto r = static_cast<std::size_t>(inv[i]);
    for (std::size_t k = 0; k < cols.size(); ++k) cell(r, static_cast<std::size_t>(inv[static_cast<std::size_t>(cols[k])])) = vals[k];
  }

  pivots_.assign(n, 0);
  const double tol = options_.pivot_tolerance * a.max_abs();
  const auto& kern = simd::active();
  std::vector<double> tmp(kl_ + ku_ + 1);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t last = std::min(n - 1, r + kl_);
    const std::size_t end = std::min(n - 1, r + kl_ + ku_);
    std::size_t p = r;
    double best = std::abs(cell(r, r));
    for (std::size_t i = r + 1; i <= last; ++i) {
      const double v = std::abs(cell(i, r));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= tol) throw SingularMatrixError(static_cast<std::size_t>(perm_[r]), best);
    pivots_[r] = static_cast<std::int32_t>(p);
    const std::size_t len = end - r + 1;
    if (p != r) {
      double* rr = &cell(r, r);
      double* pr = &cell(p, r);
      std::copy(rr, rr + len, tmp.begin());
      std::copy(pr, pr + len, rr);
      std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(len), pr);
    }
    const double piv = cell(r, r);
    if (len == 1) continue;
    const double* prow = &cell(r, r + 1);
    for (std::size_t i = r + 1; i <= last; ++i) {
      double& lir = cell(i, r);
      if (lir == 0.0) continue;
      lir /= piv;
      kern.axpy(-lir, prow, &cell(i, r + 1), len - 1);
    }
  }
}

void Factorization::solve_raw(std::span<double> x) const {
  const std::size_t n = n_;
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = x[static_cast<std::size_t>(perm_[k])];
  const auto& kern = simd::active();
  if (stats_.dense) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(y[r], y[static_cast<std::size_t>(pivots_[r])]);
    }
    for (std::size_t r = 0; r < n; ++r) y[r] -= kern.dot(&lu_[r * n], y.data(), r);
    for (std::size_t r = n; r-- > 0;) {
      const double s = y[r] - kern.dot(&lu_[r * n + r + 1], &y[r + 1], n - r - 1);
      y[r] = s / lu_[r * n + r];
    }
  } else {
    auto cell = [&](std::size_t row, std::size_t col) -> const double& {
      return lu_[row * width_ + (col + kl_ - row)];
    };
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(y[r], y[static_cast<std::size_t>(pivots_[r])]);
      const double yr = y[r];
      if (yr == 0.0) continue;
      const std::size_t last = std::min(n - 1, r + kl_);
      for (std::size_t i = r + 1; i <= last; ++i) y[i] -= cell(i, r) * yr;
    }
    for (std::size_t r = n; r-- > 0;) {
      const std::size_t end = std::min(n - 1, r + kl_ + ku_);
      const double s = y[r] - (end > r ? kern.dot(&cell(r, r + 1), &y[r + 1], end - r) : 0.0);
      y[r] = s / cell(r, r);
    }
  }
  for (std::size_t k = 0; k < n; ++k) x[static_cast<std::size_t>(perm_[k])] = y[k];
}

Vector Factorization::solve(std::span<const double> b) const {
  if (b.size() != n_) throw ValidationError("solve: right-hand side size mismatch");
  Vector x(b.begin(), b.end());
  if (n_ == 0) return x;
  solve_raw(x);
  for (int step = 0; step < options_.refinement_steps; ++step) {
    Vector r = original_.multiply(x);
    for (std::size_t i = 0; i < n_; ++i) r[i] = b[i] - r[i];
    solve_raw(r);
    for (std::size_t i = 0; i < n_; ++i) x[i] += r[i];
  }
  return x;
}

}  // namespace fluidfluid::linalg
