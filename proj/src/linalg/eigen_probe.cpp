#include "fluidfluid/linalg/eigen_probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/linalg/factorization.hpp"
#include "fluidfluid/simd/kernels.hpp"

namespace fluidfluid::linalg {

void symmetric_eigen_small(std::size_t n, std::vector<double> m, std::vector<double>& values,
                           std::vector<double>& vectors) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += m[i * n + i] * m[i * n + i];
      for (std::size_t j = i + 1; j < n; ++j) off += m[i * n + j] * m[i * n + j];
    }
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p], mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k], mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m[a * n + a] < m[b * n + b]; });
  values.resize(n);
  vectors.assign(n * n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    values[c] = m[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) vectors[r * n + c] = v[r * n + order[c]];
  }
}

namespace {

// A-orthonormalizes the columns in place (modified Gram-Schmidt, two
// passes). Columns that collapse are replaced with fresh deterministic
// vectors and re-orthogonalized.
void a_orthonormalize(const CsrMatrix& a, std::vector<Vector>& cols, std::size_t& refresh_seed) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double norm0 = std::sqrt(std::max(0.0, a.bilinear(cols[j], cols[j])));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const Vector ai = a.multiply(cols[i]);
          const double h = simd::dot(ai, cols[j]);
          simd::axpy(-h, cols[i], cols[j]);
        }
      }
      const double norm = std::sqrt(std::max(0.0, a.bilinear(cols[j], cols[j])));
      if (norm > 1e-10 * norm0 && norm > 0.0) {
        for (double& x : cols[j]) x /= norm;
        break;
      }
      ++refresh_seed;
      for (std::size_t r = 0; r < n; ++r)
        cols[j][r] = std::sin(0.37 * static_cast<double>((r + 1) * (refresh_seed + 3)) + 0.11 * static_cast<double>(r));
    }
  }
}

}  // namespace

EigenPair smallest_gen_eig(const CsrMatrix& a, const CsrMatrix& b, EigenProbeOptions options) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw ValidationError("smallest_gen_eig: matrices must be square and of equal size");
  if (n == 0) throw ValidationError("smallest_gen_eig: empty pencil");

  const double scale_a = a.norm_inf();
  const double scale_b = b.norm_inf();
  const double shift = 1e-10 * (scale_b > 0.0 ? scale_b / scale_a : 1.0);
  const Factorization shifted(CsrMatrix::add(b, a, 1.0, shift));

  const std::size_t k = std::min(n, options.block_size);
  std::vector<Vector> x(k, Vector(n));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < n; ++r)
      x[j][r] = (j == 0) ? 1.0 : std::cos(0.9 * static_cast<double>(j) * static_cast<double>(r + 1) + 0.3 * static_cast<double>(j));
  std::size_t seed = 0;
  a_orthonormalize(a, x, seed);

  EigenPair best;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    for (auto& col : x) col = shifted.solve(a.multiply(col));
    a_orthonormalize(a, x, seed);

    std::vector<Vector> bx(k);
    for (std::size_t j = 0; j < k; ++j) bx[j] = b.multiply(x[j]);
    std::vector<double> h(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) h[i * k + j] = h[j * k + i] = 0.5 * (simd::dot(x[i], bx[j]) + simd::dot(x[j], bx[i]));
    std::vector<double> theta, v;
    symmetric_eigen_small(k, h, theta, v);

    std::vector<Vector> rotated(k, Vector(n, 0.0));
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < k; ++j) simd::axpy(v[j * k + c], x[j], rotated[c]);
    x = std::move(rotated);

    const Vector ax = a.multiply(x[0]);
    Vector r = b.multiply(x[0]);
    simd::axpy(-theta[0], ax, r);
    const double res = norm2(r) / norm2(ax);
    best.value = theta[0];
    best.vector = x[0];
    best.residual = res;
    best.iterations = it;
    if (res <= options.tolerance) return best;
  }
  throw NumericalFailure("smallest_gen_eig did not converge", best.residual);
}

}  // namespace fluidfluid::linalg
