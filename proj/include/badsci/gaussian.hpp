#pragma once

#include <cstdint>

#include "badsci/beta.hpp"
#include "badsci/matrix.hpp"

namespace badsci {

/// Sigma = A A^T for row-normalized A; the covariance of A x for Rademacher x.
SquareMatrix covariance(const RowNormalizedMatrix& a);

struct CovarianceDiagnostics {
  std::size_t n = 0;
  double max_offdiag = 0.0;       // max_{j != k} |Sigma_jk|
  double min_det2 = 1.0;          // min over pairs of det Sigma_{jk}
  double min_ratio3 = 1.0;        // min over triples of det Sigma_{jkl} / det Sigma_{jk}
  bool min_ratio3_sampled = false;
  std::uint64_t triples_examined = 0;
  double chatterjee_gamma = 0.0;  // 2 * max_offdiag, for the vector (Z, -Z)
  double chatterjee_bound = 0.0;  // sqrt(gamma log 2n)
};

/// Exact over all pairs. Triples are exhaustive for n <= 64 and otherwise
/// `triple_budget` seeded random triples. A triple whose 2x2 minor vanishes
/// contributes ratio 0.
CovarianceDiagnostics covariance_diagnostics(const SquareMatrix& sigma,
                                             std::uint64_t triple_budget = 100000,
                                             std::uint64_t seed = 0);

/// Monte Carlo estimate of E ||Z||_inf for Z ~ N(0, Sigma), sampled as L g with
/// L the Cholesky factor (jitter escalated up to 1e-8). Sigma = I skips the
/// factorization. Chunk c draws from RngStream(seed, c).
BetaEstimate gaussian_max_mc(const SquareMatrix& sigma, std::uint64_t samples,
                             std::uint64_t seed);

}  // namespace badsci
