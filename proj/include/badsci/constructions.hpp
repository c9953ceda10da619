#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "badsci/matrix.hpp"

namespace badsci {

/// +/-1 matrix with H H^T = m I.
class HadamardMatrix {
 public:
  HadamardMatrix(std::size_t m, std::vector<std::int8_t> entries);

  std::size_t order() const { return m_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * m_ + j]; }

  /// Exact integer check of H H^T = m I.
  bool verify() const;
  /// H / sqrt(m), which has orthonormal rows.
  SquareMatrix scaled() const;

 private:
  std::size_t m_;
  std::vector<std::int8_t> entries_;
};

HadamardMatrix sylvester(unsigned k);
/// Paley construction I, order q + 1. Requires q prime, q = 3 mod 4.
HadamardMatrix paley_i(std::uint64_t q);
/// Paley construction II, order 2(q + 1). Requires q prime, q = 1 mod 4.
HadamardMatrix paley_ii(std::uint64_t q);
HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

/// How to build a Hadamard matrix of a given order from the generators above.
struct HadamardRecipe {
  enum class Kind { sylvester, paley_i, paley_ii, kronecker };
  Kind kind = Kind::sylvester;
  std::uint64_t param = 0;  // k for sylvester, q for Paley
  std::shared_ptr<const HadamardRecipe> left, right;

  std::size_t order() const;
  HadamardMatrix build() const;
  std::string describe() const;
};

/// Recipe for exactly order m, if our generators can produce it.
std::optional<HadamardRecipe> recipe_for_order(std::size_t m);

/// Smallest m >= n our generators produce, with its recipe. Prefers Sylvester,
/// then Paley I, then Paley II, then Kronecker products with the smallest
/// left factor. Because Paley is restricted to prime q this can exceed the true
/// smallest Hadamard order; the next power of two bounds the search.
std::pair<std::size_t, HadamardRecipe> smallest_constructible_order(std::size_t n);

bool is_prime(std::uint64_t q);

struct OahConstruction {
  RowNormalizedMatrix matrix;
  std::size_t hadamard_order = 0;
  HadamardRecipe recipe;
  /// Set when m - n >= 4; the flatness guarantee assumes a closer order.
  bool order_gap_warning = false;
};

/// QR factor of the top-left n x n block of H / sqrt(m), with diag(R) > 0.
OahConstruction orthonormal_almost_hadamard_detailed(std::size_t n);
RowNormalizedMatrix orthonormal_almost_hadamard(std::size_t n);

/// Entries xi_ij / sqrt(n), xi iid fair signs from RngStream(seed, 0), filled
/// row by row.
RowNormalizedMatrix random_sign(std::size_t n, std::uint64_t seed);

struct TreeMatrix {
  RowNormalizedMatrix matrix;
  /// Per leaf, left to right: (coordinate index, edge label) along the root path.
  std::vector<std::vector<std::pair<std::size_t, int>>> paths;
};

/// Rows from root-to-leaf paths of the balanced binary tree with n leaves,
/// filled left to right, with a +1 edge into the root.
TreeMatrix tree_matrix(std::size_t n);

/// Hard-coded optimal matrices for n = 1..5.
RowNormalizedMatrix known_optimal(std::size_t n);

enum class ConstructionKind {
  identity,
  random_sign,
  orthonormal_almost_hadamard,
  tree,
  known_optimal,
  hadamard
};

struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::identity;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

/// Accepts the CLI spellings: identity, random-sign, oah, tree, known-optimal,
/// hadamard (underscored forms too).
ConstructionKind parse_construction_kind(const std::string& name);
std::string to_string(ConstructionKind kind);

/// Builds any construction. `hadamard` requires n to be a constructible order.
RowNormalizedMatrix construct(const ConstructionSpec& spec);

}  // namespace badsci
