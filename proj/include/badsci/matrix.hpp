#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace badsci {

/// Dense n x n real matrix, row-major, with cached row l2 norms.
/// Immutable once built; every constructor rejects non-finite entries.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  /// n x n zero matrix.
  explicit SquareMatrix(std::size_t n);
  /// Takes ownership of `entries` (row-major, size n*n).
  SquareMatrix(std::size_t n, std::vector<double> entries);

  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SquareMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> entries() const { return entries_; }
  std::span<const double> row_norms() const { return row_norms_; }
  double row_norm(std::size_t i) const { return row_norms_[i]; }

  SquareMatrix transposed() const;
  double max_abs_entry() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
  std::vector<double> row_norms_;
};

/// A SquareMatrix whose rows all have unit l2 norm (within 1e-12).
class RowNormalizedMatrix {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  RowNormalizedMatrix() = default;
  /// Validates that `m` already has unit rows; throws NotNormalized otherwise.
  explicit RowNormalizedMatrix(SquareMatrix m);

  const SquareMatrix& inner() const { return inner_; }
  std::size_t n() const { return inner_.n(); }
  double operator()(std::size_t i, std::size_t j) const { return inner_(i, j); }
  std::span<const double> row(std::size_t i) const { return inner_.row(i); }

 private:
  SquareMatrix inner_;
};

/// Vertex of {-1,1}^n. Bit j clear encodes x_j = +1, bit j set encodes x_j = -1.
struct SignVector {
  std::uint64_t bits = 0;
  std::size_t n = 0;

  int at(std::size_t j) const { return ((bits >> j) & 1U) ? -1 : 1; }
  SignVector negated() const {
    const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    return {~bits & mask, n};
  }
  std::vector<double> to_doubles() const;
};

/// Divides each row by its l2 norm. Throws ZeroRow for rows with norm < 1e-300.
RowNormalizedMatrix normalize_rows(const SquareMatrix& m);

/// Applies a row permutation with row signs and a column permutation with
/// column signs: out(i, j) = row_signs[i] * col_signs[j] * m(row_perm[i], col_perm[j]).
/// Every such map leaves beta unchanged.
SquareMatrix transform(const SquareMatrix& m, std::span<const std::size_t> row_perm,
                       std::span<const int> row_signs, std::span<const std::size_t> col_perm,
                       std::span<const int> col_signs);

/// True iff some row permutation, row sign flips and column sign flips map a
/// onto b entrywise within `tol`. Exhaustive backtracking search; n <= 8.
bool equivalent_up_to_symmetry(const RowNormalizedMatrix& a, const RowNormalizedMatrix& b,
                               double tol = 1e-12);

/// Cheap comparison for sizes beyond the exhaustive search: sorted absolute
/// entries agree within `tol`. Necessary, not sufficient, for equivalence.
bool same_abs_fingerprint(const SquareMatrix& a, const SquareMatrix& b, double tol = 1e-12);

/// Text format: first line n, then n lines of n comma-separated values
/// printed with 17 significant digits.
SquareMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const SquareMatrix& m, const std::filesystem::path& path);

SquareMatrix parse_matrix(std::string_view text);
std::string format_matrix(const SquareMatrix& m);

}  // namespace badsci
