#include "badsci/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "badsci/errors.hpp"
#include "badsci/numerics.hpp"
#include "kernels.hpp"

namespace badsci {

SquareMatrix covariance(const RowNormalizedMatrix& a) { return multiply_transpose(a.inner()); }

namespace {

double det2(const SquareMatrix& s, std::size_t j, std::size_t k) {
  return s(j, j) * s(k, k) - s(j, k) * s(k, j);
}

double det3(const SquareMatrix& s, std::size_t a, std::size_t b, std::size_t c) {
  return s(a, a) * (s(b, b) * s(c, c) - s(b, c) * s(c, b)) -
         s(a, b) * (s(b, a) * s(c, c) - s(b, c) * s(c, a)) +
         s(a, c) * (s(b, a) * s(c, b) - s(b, b) * s(c, a));
}

// Conditional variance of coordinate l given (j, k).
double ratio3(const SquareMatrix& s, std::size_t j, std::size_t k, std::size_t l) {
  const double d2 = det2(s, j, k);
  if (d2 <= 1e-300) return 0.0;
  return det3(s, j, k, l) / d2;
}

}  // namespace

CovarianceDiagnostics covariance_diagnostics(const SquareMatrix& sigma,
                                             std::uint64_t triple_budget, std::uint64_t seed) {
  const std::size_t n = sigma.n();
  CovarianceDiagnostics d;
  d.n = n;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      d.max_offdiag = std::max(d.max_offdiag, std::abs(sigma(j, k)));
      d.min_det2 = std::min(d.min_det2, det2(sigma, j, k));
    }
  if (n >= 3) {
    if (n <= 64) {
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            if (l == j || l == k) continue;
            d.min_ratio3 = std::min(d.min_ratio3, ratio3(sigma, j, k, l));
            ++d.triples_examined;
          }
    } else {
      d.min_ratio3_sampled = true;
      RngStream rng(seed, 0);
      for (std::uint64_t t = 0; t < triple_budget; ++t) {
        const std::size_t j = rng.next_u64() % n;
        std::size_t k = rng.next_u64() % (n - 1);
        if (k >= j) ++k;
        std::size_t l;
        do {
          l = rng.next_u64() % n;
        } while (l == j || l == k);
        d.min_ratio3 = std::min(d.min_ratio3, ratio3(sigma, j, k, l));
        ++d.triples_examined;
      }
    }
  }
  d.chatterjee_gamma = 2.0 * d.max_offdiag;
  d.chatterjee_bound = std::sqrt(d.chatterjee_gamma * std::log(2.0 * static_cast<double>(n)));
  return d;
}

namespace {

bool is_identity(const SquareMatrix& s) {
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j)
      if (std::abs(s(i, j) - (i == j ? 1.0 : 0.0)) > 1e-12) return false;
  return true;
}

}  // namespace

BetaEstimate gaussian_max_mc(const SquareMatrix& sigma, std::uint64_t samples,
                             std::uint64_t seed) {
  if (samples < 2) throw DimensionMismatch("monte carlo needs at least 2 samples");
  const std::size_t n = sigma.n();
  const bool identity = is_identity(sigma);
  // Column-major Cholesky factor: z += g_k * L[:, k] over rows i >= k.
  std::vector<double> lcols;
  if (!identity) {
    const SquareMatrix l = cholesky_with_escalation(sigma);
    lcols.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k <= i; ++k) lcols[k * n + i] = l(i, k);
  }

  const std::size_t chunks = monte_carlo_chunk_count(samples);
  std::vector<detail::MomentSums> partial(chunks);
  const auto chunk_count = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < chunk_count; ++c) {
    const auto cu = static_cast<std::uint64_t>(c);
    RngStream rng(seed, cu);
    std::vector<double> g(n), z(n);
    detail::MomentSums m;
    const std::uint64_t count = detail::chunk_share(samples, chunks, cu);
    for (std::uint64_t s = 0; s < count; ++s) {
      for (double& v : g) v = rng.standard_normal();
      if (identity) {
        m.add(detail::max_abs(g.data(), n));
        continue;
      }
      std::fill(z.begin(), z.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const double gk = g[k];
        const double* col = lcols.data() + k * n;
        for (std::size_t i = k; i < n; ++i) z[i] += gk * col[i];
      }
      m.add(detail::max_abs(z.data(), n));
    }
    partial[c] = m;
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

}  // namespace badsci
