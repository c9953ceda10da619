#include "badsci/numerics.hpp"

#include <algorithm>
#include <vector>

#include "badsci/errors.hpp"

namespace badsci {

namespace {

std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return splitmix_mix(state);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t state = splitmix_mix(seed) ^ splitmix_mix(stream_id ^ 0xD1B54A32D192ED03ULL);
  for (auto& w : s_) w = splitmix_next(state);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double v1, v2, s;
  do {
    v1 = 2.0 * uniform() - 1.0;
    v2 = 2.0 * uniform() - 1.0;
    s = v1 * v1 + v2 * v2;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v2 * factor;
  has_spare_ = true;
  return v1 * factor;
}

int RngStream::rademacher() { return (next_u64() >> 63) ? -1 : 1; }

SignVector RngStream::sign_vector(std::size_t n) {
  if (n > 64) throw TooLarge("SignVector holds at most 64 coordinates");
  std::uint64_t bits = n == 0 ? 0 : next_u64();
  if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
  return {bits, n};
}

void RngStream::fill_signs(std::span<double> out) {
  std::uint64_t word = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if ((j & 63U) == 0) word = next_u64();
    out[j] = (word & 1U) ? -1.0 : 1.0;
    word >>= 1;
  }
}

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

QrResult qr_positive_diag(const SquareMatrix& u) {
  const std::size_t n = u.n();
  // Work column-major so each Householder vector is contiguous.
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[j * n + i] = u(i, j);

  std::vector<std::vector<double>> reflectors(n);
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    double* col = &a[k * n];
    double norm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) norm2 += col[i] * col[i];
    const double norm = std::sqrt(norm2);
    if (norm < 1e-10) throw RankDeficient(k);
    const double alpha = col[k] >= 0.0 ? -norm : norm;
    std::vector<double> v(col + k, col + n);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double x : v) vnorm2 += x * x;
    diag[k] = alpha;
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        double* cj = &a[j * n];
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) dot += v[i - k] * cj[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < n; ++i) cj[i] -= f * v[i - k];
      }
    }
    col[k] = alpha;
    for (std::size_t i = k + 1; i < n; ++i) col[i] = 0.0;
    if (vnorm2 > 0.0) {
      const double scale = 1.0 / std::sqrt(vnorm2);
      for (double& x : v) x *= scale;
    }
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-1}, applied to the identity from the right end.
  std::vector<double> q(n * n, 0.0);  // column-major
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
  for (std::size_t kk = n; kk-- > 0;) {
    const auto& v = reflectors[kk];
    for (std::size_t j = 0; j < n; ++j) {
      double* cj = &q[j * n];
      double dot = 0.0;
      for (std::size_t i = kk; i < n; ++i) dot += v[i - kk] * cj[i];
      for (std::size_t i = kk; i < n; ++i) cj[i] -= 2.0 * dot * v[i - kk];
    }
  }

  // Flip signs so diag(R) > 0: negate row k of R and column k of Q.
  std::vector<double> q_rows(n * n), r_rows(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = diag[k] < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) q_rows[i * n + k] = s * q[k * n + i];
    for (std::size_t j = 0; j < n; ++j) r_rows[k * n + j] = j < k ? 0.0 : s * a[j * n + k];
  }
  return {SquareMatrix(n, std::move(q_rows)), SquareMatrix(n, std::move(r_rows))};
}

SquareMatrix cholesky_psd(const SquareMatrix& sigma, double jitter) {
  const std::size_t n = sigma.n();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(sigma(i, i)));
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(sigma(i, j) - sigma(j, i)) > 1e-10) {
        throw NotPSD("covariance is not symmetric at (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
      }
    }
  }
  // Pivots at roundoff level are treated as failure, so a singular matrix
  // needs explicit jitter instead of succeeding by luck.
  const double pivot_floor = 1e-14 * scale;
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = sigma(j, j) + jitter;
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (!(d > pivot_floor)) {
      throw NotPSD("non-positive pivot " + std::to_string(d) + " at column " +
                   std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    l[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = sigma(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / ljj;
    }
  }
  return SquareMatrix(n, std::move(l));
}

SquareMatrix cholesky_with_escalation(const SquareMatrix& sigma, double* jitter_used) {
  double jitter = 0.0;
  while (true) {
    try {
      SquareMatrix l = cholesky_psd(sigma, jitter);
      if (jitter_used) *jitter_used = jitter;
      return l;
    } catch (const NotPSD& e) {
      if (jitter >= 1e-8) throw;
      jitter = jitter == 0.0 ? 1e-12 : jitter * 10.0;
    }
  }
}

SquareMatrix multiply(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t n = a.n();
  if (b.n() != n) throw DimensionMismatch("multiply: size mismatch");
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b(k, j);
    }
  return SquareMatrix(n, std::move(c));
}

SquareMatrix multiply_transpose(const SquareMatrix& a) {
  const std::size_t n = a.n();
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const auto ri = a.row(i);
      const auto rj = a.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += ri[k] * rj[k];
      c[i * n + j] = s;
      c[j * n + i] = s;
    }
  return SquareMatrix(n, std::move(c));
}

double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

}  // namespace badsci
