#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/linalg/csr.hpp"
#include "fluidfluid/linalg/eigen_probe.hpp"
#include "fluidfluid/linalg/factorization.hpp"
#include "fluidfluid/linalg/ordering.hpp"

using namespace fluidfluid;
using namespace fluidfluid::linalg;

namespace {

CsrMatrix laplacian_1d(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::int32_t>(i);
    t.push_back({r, r, 2.0});
    if (i > 0) t.push_back({r, r - 1, -1.0});
    if (i + 1 < n) t.push_back({r, r + 1, -1.0});
  }
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

// Independent tridiagonal solver.
Vector thomas(std::vector<double> a, std::vector<double> b, std::vector<double> c, std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  Vector x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

// Random sparse matrix with a 2D-grid-like pattern plus random couplings;
// diagonally weighted so it stays nonsingular but not symmetric.
CsrMatrix random_sparse(std::mt19937_64& rng, std::size_t n, double diag) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::int32_t>(i);
    t.push_back({r, r, diag + u(rng)});
    for (int k = 0; k < 4; ++k) {
      const std::size_t j = std::min(n - 1, i + static_cast<std::size_t>(std::abs(u(rng)) * 30.0));
      t.push_back({r, static_cast<std::int32_t>(j), u(rng)});
      t.push_back({static_cast<std::int32_t>(j), r, u(rng)});
    }
    t.push_back({r, static_cast<std::int32_t>(pick(rng)), 0.1 * u(rng)});
  }
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

// Dense generalized symmetric eigenvalues via Cholesky reduction
// C = L^{-1} B L^{-T}, then plain cyclic Jacobi.
std::vector<double> dense_gen_eigs(std::size_t n, std::vector<double> a, const std::vector<double>& b) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) s -= l[j * n + k] * l[j * n + k];
    l[j * n + j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) t -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = t / l[j * n + j];
    }
  }
  auto lower_solve_columns = [&](std::vector<double> m) {
    // returns L^{-1} M
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < n; ++i) {
        double s = m[i * n + c];
        for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * m[k * n + c];
        m[i * n + c] = s / l[i * n + i];
      }
    return m;
  };
  auto y = lower_solve_columns(b);  // L^{-1} B
  std::vector<double> yt(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) yt[i * n + j] = y[j * n + i];
  auto c = lower_solve_columns(yt);  // L^{-1} (L^{-1} B)^T = L^{-1} B L^{-T}
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += c[p * n + q] * c[p * n + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(c[p * n + q]) < 1e-300) continue;
        const double theta = (c[q * n + q] - c[p * n + p]) / (2.0 * c[p * n + q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0), sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double ckp = c[k * n + p], ckq = c[k * n + q];
          c[k * n + p] = cs * ckp - sn * ckq;
          c[k * n + q] = sn * ckp + cs * ckq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double cpk = c[p * n + k], cqk = c[q * n + k];
          c[p * n + k] = cs * cpk - sn * cqk;
          c[q * n + k] = sn * cpk + cs * cqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = c[i * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

TEST_CASE("csr from triplets sums duplicates and drops zeros") {
  auto m = CsrMatrix::from_triplets(3, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 3.0}, {1, 1, 1.0}, {1, 1, -1.0}, {2, 0, 5.0}});
  CHECK(m.check_invariants());
  CHECK(m.nnz() == 3);
  CHECK(m.at(0, 2) == 4.0);
  CHECK(m.at(1, 1) == 0.0);
  const Vector x{1, 2, 3};
  CHECK(m.multiply(x) == Vector{14, 0, 5});
  CHECK(m.multiply_transpose(x) == Vector{17, 0, 4});
  CHECK(m.transpose().transpose().to_dense() == m.to_dense());
  CHECK(m.bilinear(x, x) == 1 * 14 + 3 * 5);
  std::ostringstream os;
  m.write_matrix_market(os);
  CHECK(os.str().find("%%MatrixMarket matrix coordinate real general") == 0);
}

TEST_CASE("csr submatrix and append_to respect index maps") {
  auto m = laplacian_1d(4);
  std::vector<std::int32_t> map{-1, 0, 1, -1};
  auto s = m.submatrix(map, 2, map, 2);
  CHECK(s.to_dense() == std::vector<double>{2, -1, -1, 2});
  std::vector<Triplet> out;
  m.append_to(out, map, map, 2.0, 1, 1);
  auto t = CsrMatrix::from_triplets(3, 3, out);
  CHECK(t.at(1, 1) == 4.0);
  CHECK(t.at(2, 1) == -2.0);
  CHECK(t.at(0, 0) == 0.0);
}

TEST_CASE("rcm ordering is a permutation and does not widen a banded matrix") {
  auto m = laplacian_1d(30);
  auto perm = reverse_cuthill_mckee(m);
  std::vector<int> seen(30, 0);
  for (auto p : perm) seen[static_cast<std::size_t>(p)]++;
  for (auto s : seen) CHECK(s == 1);
  auto bw = bandwidth(m, perm);
  CHECK(bw.lower == 1);
  CHECK(bw.upper == 1);
}

TEST_CASE("factorize: identity") {
  auto f = Factorization(CsrMatrix::identity(5));
  Vector b{1, -2, 3, 4.5, 0};
  CHECK(f.solve(b) == b);
}

TEST_CASE("factorize: permutation matrix requires pivoting") {
  auto a = CsrMatrix::from_dense(2, 2, std::vector<double>{0, 1, 1, 0});
  Factorization f(a);
  auto x = f.solve(Vector{1, 2});
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(1.0));
  FactorOptions band;
  band.dense_threshold = 0;
  auto xb = Factorization(a, band).solve(Vector{1, 2});
  CHECK(xb[0] == doctest::Approx(2.0));
  CHECK(xb[1] == doctest::Approx(1.0));
}

TEST_CASE("factorize: 1D Laplacian matches the tridiagonal oracle") {
  const std::size_t n = 10;
  auto a = laplacian_1d(n);
  Vector b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::sin(0.3 * static_cast<double>(i + 1));
  auto oracle = thomas(Vector(n, -1.0), Vector(n, 2.0), Vector(n, -1.0), b);
  for (std::size_t threshold : {std::size_t{500}, std::size_t{0}}) {
    FactorOptions o;
    o.dense_threshold = threshold;
    auto x = Factorization(a, o).solve(b);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - oracle[i]) <= 1e-12);
  }
}

TEST_CASE("factorize: random sparse round trip, dense and banded paths") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {std::size_t{40}, std::size_t{700}}) {
    auto a = random_sparse(rng, n, 6.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector x(n);
    for (auto& v : x) v = u(rng);
    auto b = a.multiply(x);
    Factorization f(a);
    CHECK(f.stats().dense == (n < 500));
    auto y = f.solve(b);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(y[i] - x[i]));
    CHECK(err / norm_inf(x) <= 1e-10);
    CHECK(relative_residual(a, y, b) <= 1e-10);
  }
}

TEST_CASE("factorize: indefinite saddle matrix") {
  // [[2, 0, 1], [0, 2, 1], [1, 1, 0]]
  auto a = CsrMatrix::from_dense(3, 3, std::vector<double>{2, 0, 1, 0, 2, 1, 1, 1, 0});
  FactorOptions band;
  band.dense_threshold = 0;
  for (const auto& o : {FactorOptions{}, band}) {
    auto x = Factorization(a, o).solve(Vector{1, 1, 1});
    CHECK(relative_residual(a, x, Vector{1, 1, 1}) <= 1e-14);
    CHECK(x[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("factorize: singular matrix names the pivot row") {
  auto a = CsrMatrix::from_dense(3, 3, std::vector<double>{1, 2, 0, 2, 4, 0, 0, 0, 1});
  FactorOptions band;
  band.dense_threshold = 0;
  for (const auto& o : {FactorOptions{}, band}) {
    bool thrown = false;
    try {
      Factorization f(a, o);
    } catch (const SingularMatrixError& e) {
      thrown = true;
      CHECK(e.pivot_row() < 3);
    }
    CHECK(thrown);
  }
  CHECK_THROWS_AS(Factorization(CsrMatrix(2, 3)), ValidationError);
}

TEST_CASE("eigen probe: diagonal examples") {
  auto p1 = smallest_gen_eig(CsrMatrix::identity(3), CsrMatrix::diagonal(std::vector<double>{3, 1, 2}));
  CHECK(p1.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(std::abs(p1.vector[1]) - 1.0) < 1e-8);
  auto p2 = smallest_gen_eig(CsrMatrix::diagonal(std::vector<double>{2, 2}), CsrMatrix::diagonal(std::vector<double>{2, 8}));
  CHECK(p2.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigen probe: random 20x20 pencil against a dense Jacobi oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 20;
  std::vector<double> g(n * n), h(n * n);
  for (auto& v : g) v = u(rng);
  for (auto& v : h) v = u(rng);
  std::vector<double> a(n * n, 0.0), b(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        a[i * n + j] += g[i * n + k] * g[j * n + k];
        b[i * n + j] += h[i * n + k] * h[j * n + k];
      }
      if (i == j) a[i * n + j] += 1.0;
    }
  auto oracle = dense_gen_eigs(n, a, b);
  auto pair = smallest_gen_eig(CsrMatrix::from_dense(n, n, a), CsrMatrix::from_dense(n, n, b));
  CHECK(std::abs(pair.value - oracle[0]) <= 1e-8 * std::max(1.0, std::abs(oracle[0])));
  CHECK(pair.residual <= 1e-8);
}

TEST_CASE("eigen probe: singular B gives zero eigenvalue") {
  auto pair = smallest_gen_eig(CsrMatrix::identity(4), CsrMatrix::diagonal(std::vector<double>{1, 0, 2, 3}));
  CHECK(std::abs(pair.value) <= 1e-9);
}

TEST_CASE("symmetric_eigen_small diagonalizes a 2x2 matrix") {
  std::vector<double> values, vectors;
  symmetric_eigen_small(2, {2, 1, 1, 2}, values, vectors);
  CHECK(values[0] == doctest::Approx(1.0));
  CHECK(values[1] == doctest::Approx(3.0));
}
