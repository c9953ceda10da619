#include "badsci/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "badsci/errors.hpp"

namespace badsci {

namespace {

double log2n(std::size_t n) { return std::log(2.0 * static_cast<double>(n)); }

}  // namespace

double f_level1(double x) {
  if (x < 0.0 || x > 1.0) throw Unsupported("f_level1 is defined on [0, 1]");
  if (x == 0.0) return 0.0;
  return x * std::sqrt(2.0 * std::log(1.0 / x));
}

double jensen_upper(std::size_t n) { return std::sqrt(2.0 * log2n(n)); }

double beta_expansion(std::size_t n) {
  if (n < 3) throw Unsupported("beta_expansion requires n >= 3");
  const double root = jensen_upper(n);
  return root - std::log(log2n(n)) / (2.0 * root);
}

double subcube_rate(std::size_t n) { return std::sqrt(std::log2(static_cast<double>(n)) + 1.0); }

double abstract_lower(std::size_t n) {
  const double l = log2n(n);
  return (1.0 - std::log(l) / (4.0 * l)) * std::sqrt(2.0 * l);
}

double gaussian_max_expansion(std::size_t n) {
  if (n < 2) throw Unsupported("gaussian_max_expansion requires n >= 2");
  const double root = jensen_upper(n);
  const double log4pi = std::log(4.0 * std::numbers::pi);
  return root - (std::log(log2n(n)) + log4pi) / (2.0 * root) + kEulerGamma / root;
}

std::vector<AsymptoticCurvePoint> curve_sweep(const std::vector<std::size_t>& ns) {
  std::vector<AsymptoticCurvePoint> out;
  out.reserve(ns.size());
  for (std::size_t n : ns) {
    if (n < 3) throw Unsupported("curve_sweep requires n >= 3");
    out.push_back({n, beta_expansion(n), jensen_upper(n), subcube_rate(n),
                   gaussian_max_expansion(n), abstract_lower(n)});
  }
  return out;
}

std::string curve_csv(const std::vector<AsymptoticCurvePoint>& points) {
  std::string out = "n,beta_expansion,jensen_upper,subcube_rate,gaussian_max,abstract_lower\n";
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.n, p.beta_expansion,
                  p.jensen_upper, p.subcube_rate, p.gaussian_max, p.abstract_lower);
    out += buf;
  }
  return out;
}

}  // namespace badsci
