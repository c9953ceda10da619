#include "badsci/cells.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "badsci/asymptotics.hpp"
#include "badsci/beta.hpp"
#include "badsci/errors.hpp"
#include "badsci/reference.hpp"
#include "kernels.hpp"

namespace badsci {

namespace {

constexpr double kDegenerateTolerance = 1e-12;

struct CellAccumulator {
  explicit CellAccumulator(std::size_t n) : n(n), sizes(n, 0), sums(n * n, 0) {}

  // Files vertex x (bits, coordinate n-1 = +1) under its max-abs row; the
  // member of {x, -x} with nonnegative inner product joins S_argmax.
  void add(const double* y, std::uint64_t bits, std::uint64_t weight) {
    const MaxAbsImage img = max_abs_of({y, n});
    const bool degenerate_vertex = img.value < kDegenerateTolerance;
    const int s = degenerate_vertex ? 1 : img.sign;
    ++sizes[img.argmax_row];
    std::int64_t* row = sums.data() + img.argmax_row * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += ((bits >> j) & 1U) ? -s : s;
    if (img.tie) ties += weight;
    if (degenerate_vertex) degenerate += weight;
  }

  void merge(const CellAccumulator& o) {
    for (std::size_t i = 0; i < n; ++i) sizes[i] += o.sizes[i];
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += o.sums[k];
    ties += o.ties;
    degenerate += o.degenerate;
  }

  CellPartition finish() && {
    return CellPartition{n, std::move(sizes), std::move(sums), ties, degenerate};
  }

  std::size_t n;
  std::vector<std::uint64_t> sizes;
  std::vector<std::int64_t> sums;
  std::uint64_t ties = 0;
  std::uint64_t degenerate = 0;
};

}  // namespace

CellPartition compute_cells(const RowNormalizedMatrix& a) {
  const std::size_t n = a.n();
  if (n > kMaxExactN) {
    throw TooLarge("cell enumeration supports n <= " + std::to_string(kMaxExactN));
  }
  if (n == 0) throw DimensionMismatch("empty matrix");
  const detail::Columns cols(a.inner());
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const std::size_t chunks = exact_chunk_count(n);
  const std::uint64_t len = half / chunks;
  std::vector<CellAccumulator> partial(chunks, CellAccumulator(n));
  const auto chunk_count = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < chunk_count; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * len;
    auto& acc = partial[c];
    // Each half-cube vertex stands for itself and its negation.
    detail::gray_walk(cols, begin, begin + len,
                      [&acc](const double* y, std::uint64_t bits) { acc.add(y, bits, 2); });
  }
  CellAccumulator total(n);
  for (const auto& p : partial) total.merge(p);
  return std::move(total).finish();
}

double level1_weight(std::span<const std::int64_t> coordinate_sums, std::size_t n) {
  const double scale = std::ldexp(1.0, -static_cast<int>(n));
  double w = 0.0;
  for (std::int64_t s : coordinate_sums) {
    const double c = static_cast<double>(s) * scale;
    w += c * c;
  }
  return w;
}

std::vector<double> level1_weights(const CellPartition& p) {
  std::vector<double> w(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    w[i] = level1_weight({p.centroid_sums.data() + i * p.n, p.n}, p.n);
  }
  return w;
}

AnalysisReport analyze(const RowNormalizedMatrix& a) {
  const std::size_t n = a.n();
  const CellPartition cells = compute_cells(a);
  AnalysisReport r;
  r.n = n;
  r.beta = beta_exact(a).value;
  r.w1 = level1_weights(cells);
  r.sizes = cells.sizes;
  r.ties = cells.ties;
  r.degenerate = cells.degenerate;

  const double cube = std::ldexp(1.0, static_cast<int>(n));
  const double target = 1.0 / (2.0 * static_cast<double>(n));
  CompensatedSum identity, cs, level1, deviation;
  r.alphas.resize(n);
  r.centroid_alignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = a.row(i);
    double dot = 0.0, norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = static_cast<double>(cells.centroid_sum(i, j));
      dot += row[j] * s;
      norm2 += s * s;
    }
    // <A_i, B_i> with B_i = 2 * centroid sum.
    identity.add(2.0 * dot / cube);
    r.centroid_alignment[i] = norm2 > 0.0 ? std::clamp(dot / std::sqrt(norm2), -1.0, 1.0) : 0.0;

    r.alphas[i] = static_cast<double>(cells.sizes[i]) / cube;
    cs.add(2.0 * std::sqrt(r.w1[i]));
    level1.add(2.0 * f_level1(r.alphas[i]));
    const double d = r.alphas[i] - target;
    deviation.add(d * d);
  }
  r.bound_cs = cs.value();
  r.bound_level1 = level1.value();
  r.bound_jensen = jensen_upper(n);
  r.volume_deviation = deviation.value();
  r.identity_residual = std::abs(r.beta - identity.value());
  return r;
}

double subcube_w1_reference(std::size_t n) {
  if (n == 0) throw Unsupported("subcube_w1_reference requires n >= 1");
  const int k = std::bit_width(n);  // floor(log2 n) + 1
  return std::sqrt(static_cast<double>(k)) * std::ldexp(1.0, -k);
}

namespace reference {

CellPartition cells_naive(const RowNormalizedMatrix& a) {
  const std::size_t n = a.n();
  if (n > 20) throw TooLarge("naive reference is limited to n <= 20");
  const std::uint64_t vertices = std::uint64_t{1} << n;
  const std::uint64_t last = std::uint64_t{1} << (n - 1);
  CellPartition p{n, std::vector<std::uint64_t>(n, 0), std::vector<std::int64_t>(n * n, 0), 0, 0};
  std::vector<double> y(n);
  for (std::uint64_t bits = 0; bits < vertices; ++bits) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += ((bits >> j) & 1U) ? -a(i, j) : a(i, j);
      y[i] = s;
    }
    const MaxAbsImage img = max_abs_of(y);
    const bool degenerate_vertex = img.value < kDegenerateTolerance;
    if (img.tie) ++p.ties;
    if (degenerate_vertex) ++p.degenerate;
    const bool member = degenerate_vertex ? (bits & last) == 0 : img.sign > 0;
    if (!member) continue;
    ++p.sizes[img.argmax_row];
    for (std::size_t j = 0; j < n; ++j)
      p.centroid_sums[img.argmax_row * n + j] += ((bits >> j) & 1U) ? -1 : 1;
  }
  return p;
}

}  // namespace reference

}  // namespace badsci
