#include <doctest.h>

#include <cmath>
#include <numbers>

#include "badsci/asymptotics.hpp"
#include "badsci/constructions.hpp"
#include "badsci/errors.hpp"
#include "badsci/gaussian.hpp"
#include "badsci/numerics.hpp"
#include "oracles.hpp"

using namespace badsci;

namespace {

double combined(const BetaEstimate& a, const BetaEstimate& b) {
  return std::hypot(a.std_error, b.std_error);
}

}  // namespace

TEST_CASE("covariance") {
  for (std::size_t n : {3, 5, 12, 20}) {
    const auto s = covariance(orthonormal_almost_hadamard(n));
    CHECK(max_abs_diff(s, SquareMatrix::identity(n)) <= 1e-12);
  }
  CHECK(max_abs_diff(covariance(RowNormalizedMatrix(SquareMatrix::identity(5))),
                     SquareMatrix::identity(5)) == 0.0);
  const auto d = covariance_diagnostics(covariance(random_sign(64, 7)));
  CHECK(d.max_offdiag <= std::sqrt(10.0 * std::log(64.0) / 64.0));
  const auto s = covariance(oracle::random_unit_rows(9, 4));
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(s(i, i) - 1.0) <= 1e-12);
}

TEST_CASE("covariance_diagnostics") {
  SUBCASE("identity") {
    const auto d = covariance_diagnostics(SquareMatrix::identity(8));
    CHECK(d.max_offdiag == 0.0);
    CHECK(d.min_det2 == 1.0);
    CHECK(d.min_ratio3 == 1.0);
    CHECK(d.chatterjee_bound == 0.0);
    CHECK_FALSE(d.min_ratio3_sampled);
    CHECK(d.triples_examined == 8 * 7 / 2 * 6);
  }
  SUBCASE("2x2") {
    const auto d = covariance_diagnostics(SquareMatrix::from_rows({{1, 0.5}, {0.5, 1}}));
    CHECK(d.min_det2 == 0.75);
    CHECK(d.max_offdiag == 0.5);
    CHECK(d.chatterjee_gamma == 1.0);
    CHECK(d.chatterjee_bound == doctest::Approx(std::sqrt(std::log(4.0))).epsilon(1e-15));
  }
  SUBCASE("random sign n = 32") {
    const auto d = covariance_diagnostics(covariance(random_sign(32, 5)));
    CHECK(d.min_det2 >= 1.0 - 10.0 * std::log(32.0) / 32.0);
    CHECK(d.min_det2 == doctest::Approx(1.0 - d.max_offdiag * d.max_offdiag).epsilon(1e-12));
    CHECK(d.min_ratio3 <= 1.0);
  }
  SUBCASE("conditional variance of an explicit triple") {
    // Sigma with rho = 0.5 everywhere: det3 / det2 = (1 - 3/4 + 2/8) / (3/4) = 2/3.
    const auto d = covariance_diagnostics(
        SquareMatrix::from_rows({{1, 0.5, 0.5}, {0.5, 1, 0.5}, {0.5, 0.5, 1}}));
    CHECK(d.min_ratio3 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("rank-deficient pair gives ratio zero") {
    const double t = 1.0 / 3.0;
    const auto d = covariance_diagnostics(SquareMatrix::from_rows({{t, t, t}, {t, t, t}, {t, t, t}}));
    CHECK(d.min_ratio3 == 0.0);
  }
  SUBCASE("large n samples triples") {
    const auto d = covariance_diagnostics(SquareMatrix::identity(80), 5000, 3);
    CHECK(d.min_ratio3_sampled);
    CHECK(d.triples_examined == 5000);
    CHECK(d.min_ratio3 == 1.0);
  }
}

TEST_CASE("gaussian_max_mc") {
  SUBCASE("half-normal mean at n = 1") {
    const auto e = gaussian_max_mc(SquareMatrix::identity(1), 1000000, 3);
    CHECK(std::abs(e.value - std::sqrt(2.0 / std::numbers::pi)) <= 4.0 * e.std_error);
  }
  SUBCASE("determinism") {
    const auto s = covariance(random_sign(16, 2));
    CHECK(gaussian_max_mc(s, 5000, 9).value == gaussian_max_mc(s, 5000, 9).value);
  }
  SUBCASE("n = 1000 against quadrature") {
    const auto e = gaussian_max_mc(SquareMatrix::identity(1000), 100000, 1);
    const double exact = oracle::gaussian_abs_max_quadrature(1000);
    MESSAGE("MC " << e.value << " quadrature " << exact << " expansion " << gaussian_max_expansion(1000));
    CHECK(std::abs(e.value - exact) <= 4.0 * e.std_error);
  }
  SUBCASE("quadrature oracle sanity") {
    CHECK(oracle::gaussian_abs_max_quadrature(1) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-9));
  }
  SUBCASE("not PSD") {
    CHECK_THROWS_AS(gaussian_max_mc(SquareMatrix::from_rows({{1, 2}, {2, 1}}), 100, 0), NotPSD);
  }
  SUBCASE("rank-deficient covariance samples with jitter") {
    const double t = 1.0 / 3.0;
    const auto e =
        gaussian_max_mc(SquareMatrix::from_rows({{t, t, t}, {t, t, t}, {t, t, t}}), 200000, 4);
    // All coordinates equal: E|N(0, 1/3)|.
    CHECK(std::abs(e.value - std::sqrt(2.0 / std::numbers::pi / 3.0)) <= 4.0 * e.std_error + 1e-4);
  }
}

TEST_CASE("correlation lowers the expected maximum") {
  const std::size_t n = 64;
  const auto id = gaussian_max_mc(SquareMatrix::identity(n), 40000, 11);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = covariance(random_sign(n, seed));
    const auto corr = gaussian_max_mc(s, 40000, 11 + seed);
    CHECK(corr.value <= id.value + 4.0 * combined(id, corr));
    const auto d = covariance_diagnostics(s);
    CHECK(std::abs(corr.value - id.value) <= d.chatterjee_bound + 5.0 * combined(id, corr));
  }
}

TEST_CASE("Cholesky samples reproduce the covariance") {
  for (std::size_t n : {4, 9, 16}) {
    const auto sigma = covariance(oracle::random_unit_rows(n, 40 + n));
    const auto l = cholesky_with_escalation(sigma);
    RngStream rng(n, 0);
    const int samples = 100000;
    std::vector<double> acc(n * n, 0.0), g(n), z(n);
    for (int t = 0; t < samples; ++t) {
      for (double& v : g) v = rng.standard_normal();
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k <= i; ++k) s += l(i, k) * g[k];
        z[i] = s;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += z[i] * z[j];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(acc[i * n + j] / samples - sigma(i, j)));
    CHECK(worst <= 0.05);
  }
}
