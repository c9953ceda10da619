#include "badsci/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "badsci/asymptotics.hpp"
#include "badsci/errors.hpp"

namespace badsci {

nlohmann::ordered_json to_json(const BetaEstimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["method"] = to_string(e.method);
  j["samples"] = e.samples;
  j["stderr"] = e.std_error;
  if (e.seed) {
    j["seed"] = *e.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["beta"] = r.beta;
  j["w1"] = r.w1;
  j["alphas"] = r.alphas;
  j["bound_cs"] = r.bound_cs;
  j["bound_level1"] = r.bound_level1;
  j["bound_jensen"] = r.bound_jensen;
  j["centroid_alignment"] = r.centroid_alignment;
  j["volume_deviation"] = r.volume_deviation;
  j["identity_residual"] = r.identity_residual;
  j["sizes"] = r.sizes;
  j["ties"] = r.ties;
  j["degenerate"] = r.degenerate;
  return j;
}

nlohmann::ordered_json to_json(const CovarianceDiagnostics& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n;
  j["max_offdiag"] = d.max_offdiag;
  j["min_det2"] = d.min_det2;
  j["min_ratio3"] = d.min_ratio3;
  j["min_ratio3_sampled"] = d.min_ratio3_sampled;
  j["triples_examined"] = d.triples_examined;
  j["chatterjee_gamma"] = d.chatterjee_gamma;
  j["chatterjee_bound"] = d.chatterjee_bound;
  return j;
}

std::vector<SweepRow> run_sweep(const std::vector<ConstructionKind>& kinds,
                                const std::vector<std::size_t>& ns, BetaMethod method,
                                std::uint64_t samples, std::uint64_t seed) {
  for (std::size_t n : ns) {
    if (n == 0) throw Unsupported("sweep sizes must be positive");
    if (method == BetaMethod::exact && n > kMaxExactN) {
      throw TooLarge("exact sweep supports n <= " + std::to_string(kMaxExactN) + ", got n = " +
                     std::to_string(n) + "; use the monte-carlo method");
    }
  }
  std::vector<SweepRow> rows;
  for (ConstructionKind kind : kinds) {
    for (std::size_t n : ns) {
      const RowNormalizedMatrix a = construct({kind, n, seed});
      const BetaEstimate e =
          method == BetaMethod::exact ? beta_exact(a) : beta_monte_carlo(a, samples, seed);
      SweepRow row;
      row.construction = to_string(kind);
      row.n = n;
      row.method = method;
      row.beta = e.value;
      row.std_error = e.std_error;
      row.samples = e.samples;
      row.seed = seed;
      row.beta_expansion = n >= 3 ? beta_expansion(n) : std::numeric_limits<double>::quiet_NaN();
      row.jensen_upper = jensen_upper(n);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%s,%.17g,%.17g,%llu,%llu,%.17g,%.17g\n",
                  r.construction.c_str(), r.n, to_string(r.method).c_str(), r.beta, r.std_error,
                  static_cast<unsigned long long>(r.samples),
                  static_cast<unsigned long long>(r.seed), r.beta_expansion, r.jensen_upper);
    out += buf;
  }
  return out;
}

}  // namespace badsci
