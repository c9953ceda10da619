// Command-line front end. JSON goes to stdout, CSV/matrix files via --out.
// Exit codes: 0 success, 1 I/O or malformed input, 2 domain guard.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "badsci/asymptotics.hpp"
#include "badsci/beta.hpp"
#include "badsci/cells.hpp"
#include "badsci/constructions.hpp"
#include "badsci/errors.hpp"
#include "badsci/gaussian.hpp"
#include "badsci/report.hpp"

namespace fs = std::filesystem;
using namespace badsci;

namespace {

struct Options {
  std::string kind;
  std::vector<std::string> kinds;
  std::size_t n = 0;
  std::vector<std::size_t> ns;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::string method = "exact";
  std::string matrix;
  std::string out;
  bool normalize = false;
};

BetaMethod parse_method(const std::string& m) {
  if (m == "exact") return BetaMethod::exact;
  if (m == "monte-carlo" || m == "monte_carlo") return BetaMethod::monte_carlo;
  throw Unsupported("unknown method '" + m + "' (use exact or monte-carlo)");
}

RowNormalizedMatrix read_input(const Options& o) {
  const SquareMatrix m = load_matrix(o.matrix);
  return o.normalize ? normalize_rows(m) : RowNormalizedMatrix(m);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

int cmd_construct(const Options& o) {
  const ConstructionSpec spec{parse_construction_kind(o.kind), o.n, o.seed};
  nlohmann::ordered_json info;
  info["kind"] = to_string(spec.kind);
  info["n"] = spec.n;
  info["seed"] = spec.seed;
  std::optional<RowNormalizedMatrix> m;
  if (spec.kind == ConstructionKind::orthonormal_almost_hadamard) {
    auto c = orthonormal_almost_hadamard_detailed(spec.n);
    info["hadamard_order"] = c.hadamard_order;
    info["recipe"] = c.recipe.describe();
    info["order_gap_warning"] = c.order_gap_warning;
    if (c.order_gap_warning)
      std::cerr << "warning: Hadamard order " << c.hadamard_order << " exceeds n by "
                << c.hadamard_order - spec.n << "; flatness is only expected for a gap below 4\n";
    m = std::move(c.matrix);
  } else {
    m = construct(spec);
  }
  if (o.out.empty()) {
    std::cout << format_matrix(m->inner());
    std::cerr << info.dump() << "\n";
  } else {
    save_matrix(m->inner(), o.out);
    info["out"] = o.out;
    std::cout << info.dump(2) << "\n";
  }
  return 0;
}

int cmd_beta(const Options& o) {
  const auto a = read_input(o);
  const auto method = parse_method(o.method);
  const auto e = method == BetaMethod::exact ? beta_exact(a) : beta_monte_carlo(a, o.samples, o.seed);
  std::cout << to_json(e).dump(2) << "\n";
  return 0;
}

int cmd_analyze(const Options& o) {
  const auto r = analyze(read_input(o));
  if (r.ties > 0)
    std::cerr << "warning: ties detected: " << r.ties
              << " (the cell bounds assume a unique maximizing row at every vertex)\n";
  if (r.degenerate > 0) std::cerr << "warning: degenerate vertices: " << r.degenerate << "\n";
  std::cout << to_json(r).dump(2) << "\n";
  return 0;
}

int cmd_sweep(const Options& o) {
  std::vector<ConstructionKind> kinds;
  for (const auto& k : o.kinds) kinds.push_back(parse_construction_kind(k));
  const auto method = parse_method(o.method);
  std::cerr << "sweep: method " << to_string(method) << ", samples " << o.samples << ", seed "
            << o.seed << "\n";
  if (o.out.empty()) {
    std::cout << sweep_csv(run_sweep(kinds, o.ns, method, o.samples, o.seed));
    return 0;
  }
  try {
    write_text(o.out, sweep_csv(run_sweep(kinds, o.ns, method, o.samples, o.seed)));
  } catch (...) {
    std::error_code ec;
    fs::remove(o.out, ec);
    throw;
  }
  return 0;
}

int cmd_gaussian(const Options& o) {
  const auto a = read_input(o);
  const auto sigma = covariance(a);
  nlohmann::ordered_json j;
  j["diagnostics"] = to_json(covariance_diagnostics(sigma, 100000, o.seed));
  j["gaussian_max"] = to_json(gaussian_max_mc(sigma, o.samples, o.seed));
  j["gaussian_max_identity_expansion"] =
      a.n() >= 2 ? nlohmann::ordered_json(gaussian_max_expansion(a.n())) : nlohmann::ordered_json();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_curve(const Options& o) {
  const auto csv = curve_csv(curve_sweep(o.ns));
  if (o.out.empty())
    std::cout << csv;
  else
    write_text(o.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo evaluation of the average max-abs image over the hypercube"};
  app.require_subcommand(1);
  Options o;

  auto* construct_cmd = app.add_subcommand("construct", "Build a matrix family and write it");
  construct_cmd->add_option("--kind", o.kind, "identity|random-sign|oah|tree|known-optimal|hadamard")
      ->required();
  construct_cmd->add_option("--n", o.n, "Dimension")->required()->check(CLI::PositiveNumber);
  construct_cmd->add_option("--seed", o.seed, "Seed (random-sign only)")->capture_default_str();
  construct_cmd->add_option("--out", o.out, "Matrix file (default: stdout)");

  auto add_matrix = [&](CLI::App* c) {
    c->add_option("matrix", o.matrix, "Matrix file")->required();
    c->add_flag("--normalize", o.normalize, "Normalize rows instead of rejecting non-unit rows");
  };
  auto* beta_cmd = app.add_subcommand("beta", "Evaluate beta for a matrix file");
  add_matrix(beta_cmd);
  beta_cmd->add_option("--method", o.method, "exact|monte-carlo")->capture_default_str();
  beta_cmd->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  beta_cmd->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();

  auto* analyze_cmd = app.add_subcommand("analyze", "Cell partition, level-1 weights and bounds");
  add_matrix(analyze_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Beta over constructions and dimensions as CSV");
  sweep_cmd->add_option("--kind", o.kinds, "Comma-separated constructions")->required()->delimiter(',');
  sweep_cmd->add_option("--n", o.ns, "Comma-separated dimensions")->delimiter(',');
  sweep_cmd->add_option("--method", o.method, "exact|monte-carlo")->capture_default_str();
  sweep_cmd->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  sweep_cmd->add_option("--seed", o.seed, "Seed for random-sign and Monte Carlo")->capture_default_str();
  sweep_cmd->add_option("--out", o.out, "CSV file (default: stdout)");

  auto* gaussian_cmd = app.add_subcommand("gaussian", "Covariance diagnostics and Gaussian max");
  add_matrix(gaussian_cmd);
  gaussian_cmd->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  gaussian_cmd->add_option("--seed", o.seed, "Seed")->capture_default_str();

  auto* curve_cmd = app.add_subcommand("curve", "Reference curves as CSV");
  curve_cmd->add_option("--n", o.ns, "Comma-separated dimensions (each >= 3)")->delimiter(',');
  curve_cmd->add_option("--out", o.out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*construct_cmd) return cmd_construct(o);
    if (*beta_cmd) return cmd_beta(o);
    if (*analyze_cmd) return cmd_analyze(o);
    if (*sweep_cmd) return cmd_sweep(o);
    if (*gaussian_cmd) return cmd_gaussian(o);
    if (*curve_cmd) return cmd_curve(o);
  } catch (const NotNormalized& e) {
    std::cerr << "error: " << e.what() << "; pass --normalize to rescale rows\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.domain_guard() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
