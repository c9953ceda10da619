#include "badsci/beta.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "badsci/errors.hpp"
#include "badsci/reference.hpp"
#include "kernels.hpp"

namespace badsci {

std::string to_string(BetaMethod m) {
  return m == BetaMethod::exact ? "exact" : "monte_carlo";
}

MaxAbsImage max_abs_of(std::span<const double> y) {
  MaxAbsImage out;
  const double m = detail::max_abs(y.data(), y.size());
  out.value = m;
  bool found = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i]) >= m - kTieTolerance) {
      if (!found) {
        out.argmax_row = i;
        out.sign = y[i] < 0.0 ? -1 : 1;
        found = true;
      } else {
        out.tie = true;
        break;
      }
    }
  }
  return out;
}

MaxAbsImage max_abs_image(const RowNormalizedMatrix& a, SignVector x) {
  const std::size_t n = a.n();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x.at(j);
    y[i] = s;
  }
  return max_abs_of(y);
}

std::size_t exact_chunk_count(std::size_t n) {
  if (n == 0) return 1;
  return std::min<std::size_t>(std::size_t{1} << (n - 1), 256);
}

std::size_t monte_carlo_chunk_count(std::uint64_t samples) {
  return static_cast<std::size_t>(std::clamp<std::uint64_t>(samples, 1, 256));
}

namespace {

void check_exact_size(std::size_t n) {
  if (n > kMaxExactN) {
    throw TooLarge("exact evaluation supports n <= " + std::to_string(kMaxExactN) + ", got n = " +
                   std::to_string(n) + "; use the monte-carlo method");
  }
  if (n == 0) throw DimensionMismatch("empty matrix");
}

CompensatedSum exact_chunk(const detail::Columns& cols, std::uint64_t begin, std::uint64_t end) {
  CompensatedSum acc;
  const std::size_t n = cols.n();
  detail::gray_walk(cols, begin, end,
                    [&](const double* y, std::uint64_t) { acc.add(detail::max_abs(y, n)); });
  return acc;
}

BetaEstimate exact_impl(const RowNormalizedMatrix& a, bool parallel) {
  const std::size_t n = a.n();
  check_exact_size(n);
  const detail::Columns cols(a.inner());
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const std::size_t chunks = exact_chunk_count(n);
  const std::uint64_t len = half / chunks;
  std::vector<CompensatedSum> partial(chunks);
  const auto body = [&](std::ptrdiff_t c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * len;
    partial[c] = exact_chunk(cols, begin, begin + len);
  };
  const auto chunk_count = static_cast<std::ptrdiff_t>(chunks);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < chunk_count; ++c) body(c);
  } else {
    for (std::ptrdiff_t c = 0; c < chunk_count; ++c) body(c);
  }
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  BetaEstimate out;
  out.value = total.value() / static_cast<double>(half);
  out.method = BetaMethod::exact;
  out.samples = std::uint64_t{1} << n;
  return out;
}

detail::MomentSums mc_chunk(const detail::Columns& cols, std::uint64_t count, std::uint64_t seed,
                            std::uint64_t stream) {
  const std::size_t n = cols.n();
  RngStream rng(seed, stream);
  std::vector<double> x(n), y(n);
  detail::MomentSums m;
  for (std::uint64_t s = 0; s < count; ++s) {
    rng.fill_signs(x);
    detail::image_from_signs(cols, x.data(), y.data());
    m.add(detail::max_abs(y.data(), n));
  }
  return m;
}

BetaEstimate monte_carlo_impl(const RowNormalizedMatrix& a, std::uint64_t samples,
                              std::uint64_t seed, bool parallel) {
  if (samples < 2) throw DimensionMismatch("monte carlo needs at least 2 samples");
  if (a.n() == 0) throw DimensionMismatch("empty matrix");
  const detail::Columns cols(a.inner());
  const std::size_t chunks = monte_carlo_chunk_count(samples);
  std::vector<detail::MomentSums> partial(chunks);
  const auto body = [&](std::ptrdiff_t c) {
    const auto cu = static_cast<std::uint64_t>(c);
    partial[c] = mc_chunk(cols, detail::chunk_share(samples, chunks, cu), seed, cu);
  };
  const auto chunk_count = static_cast<std::ptrdiff_t>(chunks);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < chunk_count; ++c) body(c);
  } else {
    for (std::ptrdiff_t c = 0; c < chunk_count; ++c) body(c);
  }
  detail::MomentSums total;
  for (const auto& p : partial) total.merge(p);
  BetaEstimate out;
  out.value = total.mean();
  out.method = BetaMethod::monte_carlo;
  out.samples = samples;
  out.std_error = total.std_error();
  out.seed = seed;
  return out;
}

}  // namespace

BetaEstimate beta_exact(const RowNormalizedMatrix& a) { return exact_impl(a, true); }

BetaEstimate beta_monte_carlo(const RowNormalizedMatrix& a, std::uint64_t samples,
                              std::uint64_t seed) {
  return monte_carlo_impl(a, samples, seed, true);
}

namespace reference {

BetaEstimate beta_exact_serial(const RowNormalizedMatrix& a) { return exact_impl(a, false); }

BetaEstimate beta_monte_carlo_serial(const RowNormalizedMatrix& a, std::uint64_t samples,
                                     std::uint64_t seed) {
  return monte_carlo_impl(a, samples, seed, false);
}

double beta_naive(const RowNormalizedMatrix& a) {
  const std::size_t n = a.n();
  if (n > 20) throw TooLarge("naive reference is limited to n <= 20");
  const std::uint64_t vertices = std::uint64_t{1} << n;
  CompensatedSum acc;
  for (std::uint64_t bits = 0; bits < vertices; ++bits) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += ((bits >> j) & 1U) ? -a(i, j) : a(i, j);
      best = std::max(best, std::abs(s));
    }
    acc.add(best);
  }
  return acc.value() / static_cast<double>(vertices);
}

}  // namespace reference

}  // namespace badsci
