// Wall-clock comparison of the OpenMP kernels against their serial references.
// Usage: bench_kernels [exact_n=22] [mc_n=256] [mc_samples=200000]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "badsci/beta.hpp"
#include "badsci/cells.hpp"
#include "badsci/constructions.hpp"
#include "badsci/gaussian.hpp"
#include "badsci/reference.hpp"

using namespace badsci;

namespace {

double seconds(const std::function<double()>& f, double* result) {
  const auto t = std::chrono::steady_clock::now();
  *result = f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void compare(const char* label, const std::function<double()>& parallel,
             const std::function<double()>& serial) {
  double p = 0, s = 0;
  const double tp = seconds(parallel, &p);
  const double ts = seconds(serial, &s);
  std::printf("%-28s parallel %8.3f s  serial %8.3f s  speedup %5.2fx  |diff| %.1e\n", label, tp, ts,
              ts / tp, std::abs(p - s));
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t exact_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 22;
  const std::size_t mc_n = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 256;
  const std::uint64_t samples = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 200000;
  std::printf("threads: %d\n", omp_get_max_threads());

  const auto a = random_sign(exact_n, 1);
  char label[64];
  std::snprintf(label, sizeof label, "beta_exact n=%zu", exact_n);
  compare(label, [&] { return beta_exact(a).value; },
          [&] { return reference::beta_exact_serial(a).value; });

  const auto q = orthonormal_almost_hadamard(mc_n);
  std::snprintf(label, sizeof label, "beta_monte_carlo n=%zu", mc_n);
  compare(label, [&] { return beta_monte_carlo(q, samples, 3).value; },
          [&] { return reference::beta_monte_carlo_serial(q, samples, 3).value; });

  if (exact_n <= 20) {
    std::snprintf(label, sizeof label, "beta_exact vs naive n=%zu", exact_n);
    compare(label, [&] { return beta_exact(a).value; }, [&] { return reference::beta_naive(a); });
  }

  double r = 0;
  std::printf("%-28s %8.3f s\n", "compute_cells", seconds([&] {
                return static_cast<double>(compute_cells(a).ties);
              }, &r));
  std::printf("%-28s %8.3f s\n", "gaussian_max_mc (Sigma=I)", seconds([&] {
                return gaussian_max_mc(SquareMatrix::identity(mc_n), samples, 4).value;
              }, &r));
}
