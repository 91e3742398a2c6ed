#pragma once

#include <cstdint>
#include <vector>

#include "fluidfluid/linalg/csr.hpp"

namespace fluidfluid::linalg {

/// Reverse Cuthill-McKee ordering of the symmetrized pattern of a square
/// matrix. Returns perm with perm[new_index] = old_index. Deterministic:
/// ties are broken by degree, then by original index.
std::vector<std::int32_t> reverse_cuthill_mckee(const CsrMatrix& a);

struct Bandwidth {
  std::size_t lower = 0;
  std::size_t upper = 0;
};

/// Bandwidth of P A P^T for the permutation perm (perm[new] = old).
Bandwidth bandwidth(const CsrMatrix& a, const std::vector<std::int32_t>& perm);

}  // namespace fluidfluid::linalg
