#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace badsci {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// f(x) = x sqrt(2 log(1/x)) on (0, 1], extended by f(0) = 0.
double f_level1(double x);

/// sqrt(2 log 2n): the universal upper bound on beta.
double jensen_upper(std::size_t n);

/// sqrt(2 log 2n) - log log 2n / (2 sqrt(2 log 2n)), defined for n >= 3.
double beta_expansion(std::size_t n);

/// sqrt(log2(n) + 1), the rate of subcube (tree) partitions.
double subcube_rate(std::size_t n);

/// (1 - log log 2n / (4 log 2n)) sqrt(2 log 2n).
double abstract_lower(std::size_t n);

/// Three-term expansion of E max_i |Z_i| for n iid standard normals, n >= 2:
/// sqrt(2 log 2n) - (log log 2n + log 4 pi) / (2 sqrt(2 log 2n)) + gamma / sqrt(2 log 2n).
double gaussian_max_expansion(std::size_t n);

struct AsymptoticCurvePoint {
  std::size_t n = 0;
  double beta_expansion = 0.0;
  double jensen_upper = 0.0;
  double subcube_rate = 0.0;
  double gaussian_max = 0.0;
  double abstract_lower = 0.0;
};

/// One point per n; every n must be >= 3.
std::vector<AsymptoticCurvePoint> curve_sweep(const std::vector<std::size_t>& ns);

/// CSV with header n,beta_expansion,jensen_upper,subcube_rate,gaussian_max,abstract_lower.
std::string curve_csv(const std::vector<AsymptoticCurvePoint>& points);

}  // namespace badsci
