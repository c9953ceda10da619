#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "badsci/matrix.hpp"

namespace badsci {

/// Largest n for which exhaustive evaluation over {-1,1}^n is offered.
inline constexpr std::size_t kMaxExactN = 26;
/// Two image coordinates within this distance of the maximum count as a tie.
inline constexpr double kTieTolerance = 1e-12;

enum class BetaMethod { exact, monte_carlo };
std::string to_string(BetaMethod m);

/// beta(A) = 2^-n sum_x ||Ax||_inf, exact or estimated.
struct BetaEstimate {
  double value = 0.0;
  BetaMethod method = BetaMethod::exact;
  std::uint64_t samples = 0;  // 2^n for exact
  double std_error = 0.0;     // zero for exact
  std::optional<std::uint64_t> seed;
};

struct MaxAbsImage {
  double value = 0.0;
  std::size_t argmax_row = 0;  // smallest index within kTieTolerance of the max
  int sign = 1;                // sign of <a_argmax, x>, +1 when zero
  bool tie = false;
};

/// Reduces an image vector y = A x to its max-abs summary.
MaxAbsImage max_abs_of(std::span<const double> y);
MaxAbsImage max_abs_image(const RowNormalizedMatrix& a, SignVector x);

/// Parallel chunk counts are functions of the problem size only, never of the
/// thread count, so results are bitwise reproducible.
std::size_t exact_chunk_count(std::size_t n);
std::size_t monte_carlo_chunk_count(std::uint64_t samples);

/// Gray-code walk over the half cube x_{n-1} = +1, O(n) per vertex.
/// Throws TooLarge for n > 26.
BetaEstimate beta_exact(const RowNormalizedMatrix& a);

/// Mean of ||Ax||_inf over iid Rademacher x. Chunk c draws from RngStream(seed, c).
BetaEstimate beta_monte_carlo(const RowNormalizedMatrix& a, std::uint64_t samples,
                              std::uint64_t seed);

}  // namespace badsci
