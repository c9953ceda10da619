#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "badsci/matrix.hpp"

namespace badsci {

/// The hypercube Voronoi partition induced by the rows of A.
///
/// C_i is the set of vertices where row i attains max_k |<a_k, x>| (smallest
/// index under ties) and S_i = {x in C_i : <a_i, x> >= 0}. The S_i partition
/// one half of the cube; vertices whose image is identically zero go to the
/// representative with x_{n-1} = +1 and are counted as degenerate.
struct CellPartition {
  std::size_t n = 0;
  std::vector<std::uint64_t> sizes;          // |S_i|
  std::vector<std::int64_t> centroid_sums;   // n x n row-major, row i = sum_{x in S_i} x
  std::uint64_t ties = 0;                    // vertices of the full cube with a tie
  std::uint64_t degenerate = 0;              // vertices with max |<a_i,x>| < 1e-12

  std::int64_t centroid_sum(std::size_t i, std::size_t j) const {
    return centroid_sums[i * n + j];
  }
};

struct AnalysisReport {
  std::size_t n = 0;
  double beta = 0.0;
  std::vector<double> w1;
  std::vector<double> alphas;  // |S_i| / 2^n
  double bound_cs = 0.0;       // 2 sum sqrt(W1)
  double bound_level1 = 0.0;   // 2 sum f(alpha_i)
  double bound_jensen = 0.0;   // sqrt(2 log 2n)
  std::vector<double> centroid_alignment;
  double volume_deviation = 0.0;
  double identity_residual = 0.0;
  // Partition bookkeeping carried along for reporting.
  std::vector<std::uint64_t> sizes;
  std::uint64_t ties = 0;
  std::uint64_t degenerate = 0;
};

/// Enumerates the cube once (Gray-code walk, parallel over fixed chunks with
/// integer per-chunk accumulators). Throws TooLarge for n > 26.
CellPartition compute_cells(const RowNormalizedMatrix& a);

/// W1[1_{S_i}] = sum_j (centroid_sums[i][j] / 2^n)^2 for every cell.
std::vector<double> level1_weights(const CellPartition& p);

/// Level-1 weight of a single vertex set given its coordinate sums.
double level1_weight(std::span<const std::int64_t> coordinate_sums, std::size_t n);

AnalysisReport analyze(const RowNormalizedMatrix& a);

/// sqrt(k) / 2^k with k = floor(log2 n) + 1: sqrt(W1) of one codimension-k
/// subcube under the 2^n normalization.
double subcube_w1_reference(std::size_t n);

}  // namespace badsci
