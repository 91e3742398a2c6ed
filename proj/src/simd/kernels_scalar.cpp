#include "fluidfluid/simd/kernels.hpp"

namespace fluidfluid::simd {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double gather_dot_scalar(const double* vals, const std::int32_t* idx, const double* x,
                         std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += vals[k] * x[idx[k]];
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, dot_scalar, axpy_scalar, gather_dot_scalar};
  return table;
}

}  // namespace fluidfluid::simd
