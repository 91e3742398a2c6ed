#include <cstdlib>
#include <string>

#include "fluidfluid/errors.hpp"
#include "fluidfluid/simd/kernels.hpp"

namespace fluidfluid::simd {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FLUIDFLUID_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa))
    throw ValidationError("SIMD variant not available: " + std::string(isa_name(isa)));
#if defined(FLUIDFLUID_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("FLUIDFLUID_SIMD")) {
    if (std::string(env) == "scalar") return scalar_kernels();
  }
  if (isa_available(Isa::Avx2)) return kernels_for(Isa::Avx2);
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace fluidfluid::simd
