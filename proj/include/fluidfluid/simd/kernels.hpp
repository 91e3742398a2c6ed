#pragma once

// Data-parallel inner loops shared by the sparse and dense linear algebra.
//
// Every kernel has a scalar reference implementation; wider variants are
// compiled into separate translation units and picked once at runtime from
// the CPU feature flags. Set FLUIDFLUID_SIMD=scalar to force the reference
// path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace fluidfluid::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum_k vals[k] * x[idx[k]]
  double (*gather_dot)(const double* vals, const std::int32_t* idx, const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(FLUIDFLUID_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Kernel table for a specific ISA; throws ValidationError if unavailable.
const KernelTable& kernels_for(Isa isa);

/// The table selected for this process.
const KernelTable& active();

std::string_view isa_name(Isa isa);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

inline double gather_dot(std::span<const double> vals, std::span<const std::int32_t> idx,
                         const double* x) {
  return active().gather_dot(vals.data(), idx.data(), x, vals.size());
}

}  // namespace fluidfluid::simd
