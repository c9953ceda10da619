#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "badsci/matrix.hpp"

namespace badsci {

/// Deterministic 64-bit random stream.
///
/// Generator: xoshiro256** (Blackman & Vigna). The 256-bit state is filled by
/// four SplitMix64 draws started from
///     splitmix_mix(seed) ^ splitmix_mix(stream_id ^ 0xD1B54A32D192ED03),
/// so a (seed, stream_id) pair fully determines the sequence on every
/// platform and under any thread schedule.
///
/// Normal variates use the Marsaglia polar method on 53-bit uniforms
/// u = (next_u64() >> 11) * 2^-53; the second variate of each accepted pair
/// is cached and returned by the following call.
///
/// A stream is single-owner. Parallel kernels give each chunk its own stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double standard_normal();
  /// Fair +/-1 from the top bit of one 64-bit draw.
  int rademacher();
  /// n fair signs packed as SignVector bits, one 64-bit draw per 64 coordinates.
  /// Only n <= 64 fits a SignVector; use fill_signs for longer vectors.
  SignVector sign_vector(std::size_t n);
  /// Writes n fair +/-1 values, consuming one 64-bit draw per 64 coordinates.
  void fill_signs(std::span<double> out);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);

struct QrResult {
  SquareMatrix q;
  SquareMatrix r;
};

/// Householder QR with the sign convention diag(R) > 0, which makes the
/// factorization unique for full-rank input. Throws RankDeficient(k) when the
/// k-th pivot has magnitude below 1e-10.
QrResult qr_positive_diag(const SquareMatrix& u);

/// Lower-triangular L with L L^T = sigma + jitter * I.
/// Throws NotPSD if sigma is not symmetric within 1e-10 or a pivot is not
/// safely positive.
SquareMatrix cholesky_psd(const SquareMatrix& sigma, double jitter);

/// Tries jitter 0, then 1e-12, 1e-11, ..., 1e-8. Returns the first factor that
/// succeeds and reports the jitter used. Throws NotPSD if all fail.
SquareMatrix cholesky_with_escalation(const SquareMatrix& sigma, double* jitter_used = nullptr);

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b);
SquareMatrix multiply_transpose(const SquareMatrix& a);  // a * a^T
double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace badsci
