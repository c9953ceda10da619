#pragma once

// Inner loops shared by the parallel kernels and their serial twins.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "badsci/matrix.hpp"
#include "badsci/numerics.hpp"

namespace badsci::detail {

/// Column-major copy of A so that y +/-= 2 * column_j is a contiguous axpy.
class Columns {
 public:
  explicit Columns(const SquareMatrix& a) : n_(a.n()), data_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) data_[j * n_ + i] = a(i, j);
  }
  std::size_t n() const { return n_; }
  const double* col(std::size_t j) const { return data_.data() + j * n_; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// y = A x for x given as SignVector-style bits.
inline void image_from_bits(const Columns& a, std::uint64_t bits, double* y) {
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double* c = a.col(j);
    if ((bits >> j) & 1U) {
      for (std::size_t i = 0; i < n; ++i) y[i] -= c[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) y[i] += c[i];
    }
  }
}

/// y = A x for x a dense +/-1 vector.
inline void image_from_signs(const Columns& a, const double* x, double* y) {
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double* c = a.col(j);
    if (x[j] < 0.0) {
      for (std::size_t i = 0; i < n; ++i) y[i] -= c[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) y[i] += c[i];
    }
  }
}

inline double max_abs(const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(y[i]));
  return m;
}

inline constexpr std::uint64_t kRecomputeInterval = std::uint64_t{1} << 16;

/// Visits the half-cube vertices with Gray-code indices [begin, end).
/// Coordinate n-1 is pinned to +1, coordinates 0..n-2 follow the reflected
/// Gray code g(k) = k ^ (k >> 1). Flipping coordinate j updates y by -/+ 2
/// column j; y is rebuilt from scratch every 2^16 steps to cap drift.
/// `visit(const double* y, std::uint64_t bits)` is called once per vertex.
template <class Visit>
void gray_walk(const Columns& a, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  const std::size_t n = a.n();
  std::vector<double> y(n);
  std::uint64_t bits = begin ^ (begin >> 1);
  image_from_bits(a, bits, y.data());
  for (std::uint64_t k = begin;;) {
    visit(static_cast<const double*>(y.data()), bits);
    if (++k == end) break;
    const int j = std::countr_zero(k);
    bits ^= std::uint64_t{1} << j;
    if (((k - begin) & (kRecomputeInterval - 1)) == 0) {
      image_from_bits(a, bits, y.data());
      continue;
    }
    const double* c = a.col(static_cast<std::size_t>(j));
    if ((bits >> j) & 1U) {
      for (std::size_t i = 0; i < n; ++i) y[i] -= 2.0 * c[i];
    } else {
      for (std::size_t i = 0; i < n; ++i) y[i] += 2.0 * c[i];
    }
  }
}

/// Running sums for a sample mean and its standard error.
struct MomentSums {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::uint64_t count = 0;

  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
    ++count;
  }
  void merge(const MomentSums& o) {
    sum.add(o.sum);
    sum_sq.add(o.sum_sq);
    count += o.count;
  }
  double mean() const { return count ? sum.value() / static_cast<double>(count) : 0.0; }
  /// Sample standard deviation / sqrt(count).
  double std_error() const {
    if (count < 2) return 0.0;
    const double c = static_cast<double>(count);
    const double s = sum.value();
    double var = (sum_sq.value() - s * s / c) / (c - 1.0);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / c);
  }
};

/// Samples assigned to chunk `c` when `total` samples are split over `chunks`.
inline std::uint64_t chunk_share(std::uint64_t total, std::uint64_t chunks, std::uint64_t c) {
  return total / chunks + (c < total % chunks ? 1 : 0);
}

}  // namespace badsci::detail
