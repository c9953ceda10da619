#pragma once

// Serial reference implementations. They share nothing with the parallel
// Gray-code kernels beyond the public types, and exist so tests can check the
// fast paths and the benchmark can time them against each other.

#include <cstdint>

#include "badsci/beta.hpp"
#include "badsci/cells.hpp"
#include "badsci/matrix.hpp"

namespace badsci::reference {

/// Direct O(2^n n^2) average over the full cube: no Gray code, no halving.
double beta_naive(const RowNormalizedMatrix& a);

/// Direct classification of every vertex of the full cube.
CellPartition cells_naive(const RowNormalizedMatrix& a);

/// Same Gray-code walk and chunking as beta_exact, run on one thread.
BetaEstimate beta_exact_serial(const RowNormalizedMatrix& a);

/// Same chunks and streams as beta_monte_carlo, run on one thread.
BetaEstimate beta_monte_carlo_serial(const RowNormalizedMatrix& a, std::uint64_t samples,
                                     std::uint64_t seed);

}  // namespace badsci::reference
