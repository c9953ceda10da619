#include "badsci/constructions.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "badsci/errors.hpp"
#include "badsci/numerics.hpp"

namespace badsci {

HadamardMatrix::HadamardMatrix(std::size_t m, std::vector<std::int8_t> entries)
    : m_(m), entries_(std::move(entries)) {
  if (entries_.size() != m_ * m_) throw DimensionMismatch("Hadamard entries size mismatch");
}

bool HadamardMatrix::verify() const {
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < m_; ++k) dot += (*this)(i, k) * (*this)(j, k);
      if (dot != (i == j ? static_cast<std::int64_t>(m_) : 0)) return false;
    }
  return true;
}

SquareMatrix HadamardMatrix::scaled() const {
  const double s = 1.0 / std::sqrt(static_cast<double>(m_));
  std::vector<double> e(m_ * m_);
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = entries_[k] * s;
  return SquareMatrix(m_, std::move(e));
}

HadamardMatrix sylvester(unsigned k) {
  if (k > 24) throw TooLarge("sylvester: k must be <= 24");
  std::size_t m = 1;
  std::vector<std::int8_t> h{1};
  for (unsigned step = 0; step < k; ++step) {
    const std::size_t m2 = 2 * m;
    std::vector<std::int8_t> next(m2 * m2);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const std::int8_t v = h[i * m + j];
        next[i * m2 + j] = v;
        next[i * m2 + j + m] = v;
        next[(i + m) * m2 + j] = v;
        next[(i + m) * m2 + j + m] = static_cast<std::int8_t>(-v);
      }
    h = std::move(next);
    m = m2;
  }
  return HadamardMatrix(m, std::move(h));
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

namespace {

// Quadratic character of GF(q), q an odd prime.
std::vector<int> quadratic_character(std::uint64_t q) {
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (std::uint64_t x = 1; x < q; ++x) chi[(x * x) % q] = 1;
  return chi;
}

// Jacobsthal-bordered core: C(0,0) = 0, first row +1, first column `border`,
// C(i+1, j+1) = chi(j - i).
std::vector<int> bordered_jacobsthal(std::uint64_t q, int border) {
  const auto chi = quadratic_character(q);
  const std::size_t m = q + 1;
  std::vector<int> c(m * m, 0);
  for (std::size_t j = 1; j < m; ++j) {
    c[j] = 1;
    c[j * m] = border;
  }
  for (std::uint64_t i = 0; i < q; ++i)
    for (std::uint64_t j = 0; j < q; ++j) c[(i + 1) * m + (j + 1)] = chi[(j + q - i) % q];
  return c;
}

void check_paley_prime(std::uint64_t q, std::uint64_t residue) {
  if (!is_prime(q) || q == 2) throw NotPrime(std::to_string(q) + " is not an odd prime");
  if (q % 4 != residue) {
    throw BadResidue(std::to_string(q) + " is not " + std::to_string(residue) + " mod 4");
  }
}

}  // namespace

HadamardMatrix paley_i(std::uint64_t q) {
  check_paley_prime(q, 3);
  // H = I + S with S the skew conference matrix.
  const std::size_t m = q + 1;
  const auto s = bordered_jacobsthal(q, -1);
  std::vector<std::int8_t> h(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      h[i * m + j] = static_cast<std::int8_t>(s[i * m + j] + (i == j ? 1 : 0));
  return HadamardMatrix(m, std::move(h));
}

HadamardMatrix paley_ii(std::uint64_t q) {
  check_paley_prime(q, 1);
  // Symmetric conference matrix C; 0 -> [[1,-1],[-1,-1]], +/-1 -> +/-[[1,1],[1,-1]].
  const std::size_t c_order = q + 1;
  const auto c = bordered_jacobsthal(q, 1);
  const std::size_t m = 2 * c_order;
  std::vector<std::int8_t> h(m * m);
  for (std::size_t i = 0; i < c_order; ++i)
    for (std::size_t j = 0; j < c_order; ++j) {
      const int v = c[i * c_order + j];
      int block[2][2];
      if (v == 0) {
        block[0][0] = 1, block[0][1] = -1, block[1][0] = -1, block[1][1] = -1;
      } else {
        block[0][0] = v, block[0][1] = v, block[1][0] = v, block[1][1] = -v;
      }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          h[(2 * i + a) * m + 2 * j + b] = static_cast<std::int8_t>(block[a][b]);
    }
  return HadamardMatrix(m, std::move(h));
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
  const std::size_t ma = a.order(), mb = b.order(), m = ma * mb;
  std::vector<std::int8_t> h(m * m);
  for (std::size_t i = 0; i < ma; ++i)
    for (std::size_t j = 0; j < ma; ++j)
      for (std::size_t k = 0; k < mb; ++k)
        for (std::size_t l = 0; l < mb; ++l)
          h[(i * mb + k) * m + j * mb + l] = static_cast<std::int8_t>(a(i, j) * b(k, l));
  return HadamardMatrix(m, std::move(h));
}

std::size_t HadamardRecipe::order() const {
  switch (kind) {
    case Kind::sylvester:
      return std::size_t{1} << param;
    case Kind::paley_i:
      return param + 1;
    case Kind::paley_ii:
      return 2 * (param + 1);
    case Kind::kronecker:
      return left->order() * right->order();
  }
  return 0;
}

HadamardMatrix HadamardRecipe::build() const {
  switch (kind) {
    case Kind::sylvester:
      return sylvester(static_cast<unsigned>(param));
    case Kind::paley_i:
      return paley_i(param);
    case Kind::paley_ii:
      return paley_ii(param);
    case Kind::kronecker:
      return kronecker(left->build(), right->build());
  }
  throw Error("unknown Hadamard recipe");
}

std::string HadamardRecipe::describe() const {
  switch (kind) {
    case Kind::sylvester:
      return "sylvester(" + std::to_string(param) + ")";
    case Kind::paley_i:
      return "paley_i(" + std::to_string(param) + ")";
    case Kind::paley_ii:
      return "paley_ii(" + std::to_string(param) + ")";
    case Kind::kronecker:
      return "kronecker(" + left->describe() + ", " + right->describe() + ")";
  }
  return "?";
}

namespace {

std::optional<HadamardRecipe> recipe_memo(std::size_t m,
                                          std::map<std::size_t, std::optional<HadamardRecipe>>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  std::optional<HadamardRecipe> out;
  using Kind = HadamardRecipe::Kind;
  if (m == 0) {
    // no recipe
  } else if (std::has_single_bit(m)) {
    out = HadamardRecipe{Kind::sylvester, static_cast<std::uint64_t>(std::countr_zero(m)), {}, {}};
  } else if (m % 4 != 0) {
    // Orders other than 1, 2 and multiples of 4 are impossible.
  } else if (is_prime(m - 1) && (m - 1) % 4 == 3) {
    out = HadamardRecipe{Kind::paley_i, m - 1, {}, {}};
  } else if (is_prime(m / 2 - 1) && (m / 2 - 1) % 4 == 1) {
    out = HadamardRecipe{Kind::paley_ii, m / 2 - 1, {}, {}};
  } else {
    for (std::size_t d = 2; d * d <= m; ++d) {
      if (m % d) continue;
      auto left = recipe_memo(d, memo);
      if (!left) continue;
      auto right = recipe_memo(m / d, memo);
      if (!right) continue;
      out = HadamardRecipe{Kind::kronecker, 0, std::make_shared<const HadamardRecipe>(*left),
                           std::make_shared<const HadamardRecipe>(*right)};
      break;
    }
  }
  memo[m] = out;
  return out;
}

}  // namespace

std::optional<HadamardRecipe> recipe_for_order(std::size_t m) {
  std::map<std::size_t, std::optional<HadamardRecipe>> memo;
  return recipe_memo(m, memo);
}

std::pair<std::size_t, HadamardRecipe> smallest_constructible_order(std::size_t n) {
  if (n == 0) n = 1;
  if (n > (std::size_t{1} << 20)) throw TooLarge("smallest_constructible_order: n <= 2^20");
  std::map<std::size_t, std::optional<HadamardRecipe>> memo;
  for (std::size_t m = n;; ++m) {
    if (auto r = recipe_memo(m, memo)) return {m, *r};
  }
}

OahConstruction orthonormal_almost_hadamard_detailed(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be positive");
  auto [m, recipe] = smallest_constructible_order(n);
  const HadamardMatrix h = recipe.build();
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<double> block(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) block[i * n + j] = h(i, j) * s;
  QrResult qr = qr_positive_diag(SquareMatrix(n, std::move(block)));
  return {RowNormalizedMatrix(std::move(qr.q)), m, recipe, m - n >= 4};
}

RowNormalizedMatrix orthonormal_almost_hadamard(std::size_t n) {
  return orthonormal_almost_hadamard_detailed(n).matrix;
}

RowNormalizedMatrix random_sign(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionMismatch("n must be positive");
  RngStream rng(seed, 0);
  std::vector<double> e(n * n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> row(e.data() + i * n, n);
    rng.fill_signs(row);
    for (double& v : row) v *= s;
  }
  return RowNormalizedMatrix(SquareMatrix(n, std::move(e)));
}

TreeMatrix tree_matrix(std::size_t n) {
  if (n == 0) throw DimensionMismatch("n must be positive");
  // Heap numbering of the tree with 2n - 1 nodes: node 1 is the root, the
  // children of v are 2v (left) and 2v + 1 (right), leaves are n .. 2n - 1.
  // Deepest-level leaves sit left of the shallower ones.
  const std::size_t nodes = 2 * n - 1;
  const std::size_t deep_start = std::bit_floor(nodes);
  std::vector<std::size_t> leaves;
  for (std::size_t v = std::max(deep_start, n); v <= nodes; ++v) leaves.push_back(v);
  for (std::size_t v = n; v < deep_start; ++v) leaves.push_back(v);

  TreeMatrix out;
  std::vector<double> e(n * n, 0.0);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t leaf = leaves[row];
    const int depth = std::bit_width(leaf) - 1;
    std::vector<std::pair<std::size_t, int>> path{{0, 1}};
    for (int t = depth - 1; t >= 0; --t) {
      const int label = ((leaf >> t) & 1U) ? 1 : -1;
      path.emplace_back(path.size(), label);
    }
    for (auto [coord, label] : path) e[row * n + coord] = label;
    out.paths.push_back(std::move(path));
  }
  out.matrix = normalize_rows(SquareMatrix(n, std::move(e)));
  return out;
}

RowNormalizedMatrix known_optimal(std::size_t n) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
  switch (n) {
    case 1:
      return RowNormalizedMatrix(SquareMatrix::identity(1));
    case 2:
      return RowNormalizedMatrix(SquareMatrix::from_rows({{1 / r2, 1 / r2}, {1 / r2, -1 / r2}}));
    case 3:
      return RowNormalizedMatrix(SquareMatrix::from_rows(
          {{1 / r3, 1 / r3, 1 / r3}, {1 / r3, -1 / r3, 1 / r3}, {-1 / r2, 0, 1 / r2}}));
    case 4:
      return RowNormalizedMatrix(SquareMatrix::from_rows({{1 / r3, 1 / r3, 1 / r3, 0},
                                                          {1 / r3, 1 / r3, -1 / r3, 0},
                                                          {1 / r3, -1 / r3, 1 / r3, 0},
                                                          {1 / r3, -1 / r3, -1 / r3, 0}}));
    case 5: {
      const double s = 1.0 / (2.0 * r3);
      const std::vector<std::vector<double>> raw{{2, 2, 0, 0, 2},
                                                 {-2, 2, 0, 2, 0},
                                                 {-2, 0, 0, -2, 2},
                                                 {0, -r3, r3, r3, r3},
                                                 {0, r3, r3, -r3, -r3}};
      std::vector<std::vector<double>> rows = raw;
      for (auto& row : rows)
        for (double& v : row) v *= s;
      return RowNormalizedMatrix(SquareMatrix::from_rows(rows));
    }
    default:
      throw Unsupported("known_optimal: supported n: 1..5");
  }
}

ConstructionKind parse_construction_kind(const std::string& name) {
  std::string s = name;
  for (char& c : s)
    if (c == '_') c = '-';
  if (s == "identity") return ConstructionKind::identity;
  if (s == "random-sign") return ConstructionKind::random_sign;
  if (s == "oah" || s == "orthonormal-almost-hadamard")
    return ConstructionKind::orthonormal_almost_hadamard;
  if (s == "tree") return ConstructionKind::tree;
  if (s == "known-optimal") return ConstructionKind::known_optimal;
  if (s == "hadamard") return ConstructionKind::hadamard;
  throw Unsupported("unknown construction kind '" + name + "'");
}

std::string to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::identity:
      return "identity";
    case ConstructionKind::random_sign:
      return "random-sign";
    case ConstructionKind::orthonormal_almost_hadamard:
      return "oah";
    case ConstructionKind::tree:
      return "tree";
    case ConstructionKind::known_optimal:
      return "known-optimal";
    case ConstructionKind::hadamard:
      return "hadamard";
  }
  return "?";
}

RowNormalizedMatrix construct(const ConstructionSpec& spec) {
  if (spec.n == 0) throw Unsupported("n must be positive");
  switch (spec.kind) {
    case ConstructionKind::identity:
      return RowNormalizedMatrix(SquareMatrix::identity(spec.n));
    case ConstructionKind::random_sign:
      return random_sign(spec.n, spec.seed);
    case ConstructionKind::orthonormal_almost_hadamard:
      return orthonormal_almost_hadamard(spec.n);
    case ConstructionKind::tree:
      return tree_matrix(spec.n).matrix;
    case ConstructionKind::known_optimal:
      return known_optimal(spec.n);
    case ConstructionKind::hadamard: {
      auto recipe = recipe_for_order(spec.n);
      if (!recipe) {
        throw Unsupported("no Hadamard matrix of order " + std::to_string(spec.n) +
                          " from sylvester/paley/kronecker");
      }
      return RowNormalizedMatrix(recipe->build().scaled());
    }
  }
  throw Unsupported("unknown construction");
}

}  // namespace badsci
