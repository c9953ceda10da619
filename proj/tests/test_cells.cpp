#include <doctest.h>

#include <cmath>

#include "badsci/asymptotics.hpp"
#include "badsci/cells.hpp"
#include "badsci/constructions.hpp"
#include "badsci/errors.hpp"
#include "badsci/reference.hpp"
#include "oracles.hpp"

using namespace badsci;

namespace {

CellPartition single_set(std::size_t n, const std::function<bool(const oracle::Vertex&)>& member) {
  CellPartition p{n, std::vector<std::uint64_t>(n, 0), std::vector<std::int64_t>(n * n, 0), 0, 0};
  for (const auto& x : oracle::all_vertices(n)) {
    if (!member(x)) continue;
    ++p.sizes[0];
    for (std::size_t j = 0; j < n; ++j) p.centroid_sums[j] += x[j];
  }
  return p;
}

bool same_partition(const CellPartition& a, const CellPartition& b) {
  return a.n == b.n && a.sizes == b.sizes && a.centroid_sums == b.centroid_sums &&
         a.ties == b.ties && a.degenerate == b.degenerate;
}

}  // namespace

TEST_CASE("compute_cells fixtures") {
  SUBCASE("known_optimal(3) partition") {
    const auto p = compute_cells(known_optimal(3));
    CHECK(p.sizes == std::vector<std::uint64_t>{1, 1, 2});
    CHECK(p.ties == 0);
    CHECK(p.degenerate == 0);
    // S_1 = {(1,1,1)}, S_2 = {(1,-1,1)}.
    CHECK(p.centroid_sum(0, 0) == 1);
    CHECK(p.centroid_sum(0, 1) == 1);
    CHECK(p.centroid_sum(0, 2) == 1);
    CHECK(p.centroid_sum(1, 1) == -1);
  }
  SUBCASE("tree_matrix(4): four codim-3 subcubes") {
    const auto p = compute_cells(tree_matrix(4).matrix);
    CHECK(p.sizes == std::vector<std::uint64_t>{2, 2, 2, 2});
    CHECK(p.ties == 0);
  }
  SUBCASE("identity 2x2: everything ties") {
    const auto p = compute_cells(RowNormalizedMatrix(SquareMatrix::identity(2)));
    CHECK(p.ties == 4);
    CHECK(p.sizes[0] + p.sizes[1] == 2);
  }
  SUBCASE("identity 4x4 counts 16 tied vertices") {
    CHECK(compute_cells(RowNormalizedMatrix(SquareMatrix::identity(4))).ties == 16);
  }
  SUBCASE("degenerate vertices") {
    // Identical rows orthogonal to (1,1): x = +/-(1,1) has a zero image.
    const double s = 1.0 / std::sqrt(2.0);
    const RowNormalizedMatrix a(SquareMatrix::from_rows({{s, -s}, {s, -s}}));
    const auto p = compute_cells(a);
    CHECK(p.degenerate == 2);
    CHECK(p.sizes[0] == 2);
    CHECK(same_partition(p, reference::cells_naive(a)));
  }
  CHECK_THROWS_AS(compute_cells(RowNormalizedMatrix(SquareMatrix::identity(27))), TooLarge);
}

TEST_CASE("compute_cells agrees with the serial reference") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 12;
    const auto a = oracle::random_unit_rows(n, 900 + seed);
    REQUIRE(same_partition(compute_cells(a), reference::cells_naive(a)));
  }
  for (std::size_t n : {3, 5, 8}) {
    const auto a = orthonormal_almost_hadamard(n);
    CHECK(same_partition(compute_cells(a), reference::cells_naive(a)));
  }
  CHECK(same_partition(compute_cells(RowNormalizedMatrix(SquareMatrix::identity(6))),
                       reference::cells_naive(RowNormalizedMatrix(SquareMatrix::identity(6)))));
}

TEST_CASE("partition invariants") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2 + seed % 11;
    const auto p = compute_cells(oracle::random_unit_rows(n, seed));
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      total += p.sizes[i];
      for (std::size_t j = 0; j < n; ++j)
        CHECK(static_cast<std::uint64_t>(std::abs(p.centroid_sum(i, j))) <= p.sizes[i]);
    }
    CHECK(p.ties == 0);
    CHECK(total == (std::uint64_t{1} << (n - 1)));
  }
}

TEST_CASE("level1_weights") {
  SUBCASE("codim-3 subcube in n = 4") {
    const auto p = single_set(4, [](const oracle::Vertex& x) {
      return x[0] == 1 && x[1] == 1 && x[2] == 1;
    });
    const double w = level1_weights(p)[0];
    CHECK(w == 3.0 / 64.0);
    CHECK(std::sqrt(w) == doctest::Approx(std::sqrt(3.0) / 8.0).epsilon(1e-15));
    CHECK(w == doctest::Approx(oracle::level1_weight_direct(4, [](const oracle::Vertex& x) {
                return x[0] == 1 && x[1] == 1 && x[2] == 1;
              })).epsilon(1e-15));
  }
  SUBCASE("empty set and full cube") {
    CHECK(level1_weights(single_set(5, [](const oracle::Vertex&) { return false; }))[0] == 0.0);
    CHECK(level1_weights(single_set(5, [](const oracle::Vertex&) { return true; }))[0] == 0.0);
  }
  SUBCASE("agrees with direct Fourier sums on real cells") {
    const auto a = oracle::random_unit_rows(7, 3);
    const auto p = compute_cells(a);
    const auto w = level1_weights(p);
    for (std::size_t i = 0; i < 7; ++i) {
      const double direct = oracle::level1_weight_direct(7, [&](const oracle::Vertex& x) {
        SignVector sv{0, 7};
        for (std::size_t j = 0; j < 7; ++j)
          if (x[j] < 0) sv.bits |= std::uint64_t{1} << j;
        const auto img = max_abs_image(a, sv);
        return img.argmax_row == i && img.sign > 0;
      });
      CHECK(w[i] == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("analyze fixtures") {
  SUBCASE("known_optimal(3)") {
    const auto r = analyze(known_optimal(3));
    CHECK(r.identity_residual <= 1e-12);
    CHECK(std::abs(r.beta - (std::sqrt(2.0) + std::sqrt(3.0)) / 2.0) <= 1e-12);
    CHECK(r.sizes == std::vector<std::uint64_t>{1, 1, 2});
  }
  SUBCASE("tree_matrix(4): Cauchy-Schwarz is tight") {
    const auto r = analyze(tree_matrix(4).matrix);
    CHECK(std::abs(r.beta - std::sqrt(3.0)) <= 1e-12);
    CHECK(std::abs(r.bound_cs - r.beta) <= 1e-12);
    for (double c : r.centroid_alignment) CHECK(std::abs(c - 1.0) <= 1e-12);
  }
  SUBCASE("identity 4x4") {
    const auto r = analyze(RowNormalizedMatrix(SquareMatrix::identity(4)));
    double sum = 0.0;
    for (double a : r.alphas) sum += a;
    CHECK(sum == 0.5);
    CHECK(r.ties == 16);
    CHECK(r.identity_residual <= 1e-12);
  }
}

TEST_CASE("identity and bound chain on random matrices") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 4 + seed % 11;
    const auto r = analyze(oracle::random_unit_rows(n, 7000 + seed));
    INFO("seed " << seed << " n " << n);
    REQUIRE(r.identity_residual <= 1e-9);
    bool all_small = true;
    for (double a : r.alphas) all_small = all_small && a <= 0.5;
    REQUIRE(all_small);
    CHECK(r.beta <= r.bound_cs + 1e-9);
    CHECK(r.bound_cs <= r.bound_level1 + 1e-9);
    CHECK(r.bound_level1 <= r.bound_jensen + 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = r.alphas[i];
      if (a > 0.0) CHECK(r.w1[i] <= 2.0 * a * a * std::log(1.0 / a) + 1e-12);
      CHECK(std::abs(r.centroid_alignment[i]) <= 1.0);
    }
  }
}

TEST_CASE("tree matrices with n a power of two have aligned centroids") {
  for (std::size_t n : {1, 2, 4, 8, 16}) {
    const auto r = analyze(tree_matrix(n).matrix);
    for (double c : r.centroid_alignment) CHECK(std::abs(c - 1.0) <= 1e-12);
    CHECK(std::abs(r.beta - subcube_rate(n)) <= 1e-12);
  }
}

TEST_CASE("volume deviation diagnostic for OAH") {
  for (std::size_t n : {8, 16, 24}) {
    const auto r = analyze(orthonormal_almost_hadamard(n));
    MESSAGE("OAH(" << n << ") volume_deviation = " << r.volume_deviation << ", ties = " << r.ties);
    CHECK(std::isfinite(r.volume_deviation));
    CHECK(r.volume_deviation <= 1.0);
  }
}

TEST_CASE("subcube_w1_reference") {
  const auto sub4 = single_set(4, [](const oracle::Vertex& x) {
    return x[0] == 1 && x[1] == -1 && x[2] == 1;
  });
  CHECK(std::abs(subcube_w1_reference(4) - std::sqrt(level1_weights(sub4)[0])) <= 1e-15);
  const auto half1 = single_set(1, [](const oracle::Vertex& x) { return x[0] == 1; });
  CHECK(subcube_w1_reference(1) == std::sqrt(level1_weights(half1)[0]));
  CHECK(subcube_w1_reference(1) == 0.5);
  CHECK(2.0 * 8.0 * subcube_w1_reference(8) == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t n : {2, 4, 16, 64, 1024})
    CHECK(2.0 * n * subcube_w1_reference(n) ==
          doctest::Approx(std::sqrt(std::log2(static_cast<double>(n)) + 1.0)).epsilon(1e-14));
}
