#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "badsci/beta.hpp"
#include "badsci/cells.hpp"
#include "badsci/constructions.hpp"
#include "badsci/gaussian.hpp"

namespace badsci {

nlohmann::ordered_json to_json(const BetaEstimate& e);
nlohmann::ordered_json to_json(const AnalysisReport& r);
nlohmann::ordered_json to_json(const CovarianceDiagnostics& d);

struct SweepRow {
  std::string construction;
  std::size_t n = 0;
  BetaMethod method = BetaMethod::exact;
  double beta = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double beta_expansion = 0.0;  // NaN for n < 3
  double jensen_upper = 0.0;
};

inline constexpr const char* kSweepHeader =
    "construction,n,method,beta,stderr,samples,seed,beta_expansion,jensen_upper";

/// One row per (kind, n), kinds outermost. `seed` feeds both random_sign and
/// the Monte Carlo streams. Exact requests are validated for every n before
/// any work starts.
std::vector<SweepRow> run_sweep(const std::vector<ConstructionKind>& kinds,
                                const std::vector<std::size_t>& ns, BetaMethod method,
                                std::uint64_t samples, std::uint64_t seed);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace badsci
