#include "badsci/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "badsci/errors.hpp"

namespace badsci {

namespace {

std::vector<double> compute_row_norms(std::size_t n, std::span<const double> entries) {
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Scaled accumulation keeps the norm accurate for very small or large rows.
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(entries[i * n + j]));
    if (scale == 0.0) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = entries[i * n + j] / scale;
      sum += v * v;
    }
    norms[i] = scale * std::sqrt(sum);
  }
  return norms;
}

}  // namespace

SquareMatrix::SquareMatrix(std::size_t n)
    : n_(n), entries_(n * n, 0.0), row_norms_(n, 0.0) {}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) {
    throw DimensionMismatch("expected " + std::to_string(n_ * n_) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw DimensionMismatch("matrix entries must be finite");
  }
  row_norms_ = compute_row_norms(n_, entries_);
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw DimensionMismatch("row " + std::to_string(i) + " has " +
                              std::to_string(rows[i].size()) + " entries, expected " +
                              std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return SquareMatrix(n, std::move(flat));
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return SquareMatrix(n, std::move(e));
}

SquareMatrix SquareMatrix::transposed() const {
  std::vector<double> t(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t[j * n_ + i] = entries_[i * n_ + j];
  return SquareMatrix(n_, std::move(t));
}

double SquareMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

RowNormalizedMatrix::RowNormalizedMatrix(SquareMatrix m) : inner_(std::move(m)) {
  for (std::size_t i = 0; i < inner_.n(); ++i) {
    if (std::abs(inner_.row_norm(i) - 1.0) > kUnitTolerance) {
      throw NotNormalized("row " + std::to_string(i) + " is not unit norm");
    }
  }
}

std::vector<double> SignVector::to_doubles() const {
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = at(j);
  return x;
}

RowNormalizedMatrix normalize_rows(const SquareMatrix& m) {
  const std::size_t n = m.n();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double norm = m.row_norm(i);
    if (!(norm >= 1e-300)) throw ZeroRow(i);
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = m(i, j) / norm;
  }
  return RowNormalizedMatrix(SquareMatrix(n, std::move(out)));
}

SquareMatrix transform(const SquareMatrix& m, std::span<const std::size_t> row_perm,
                       std::span<const int> row_signs, std::span<const std::size_t> col_perm,
                       std::span<const int> col_signs) {
  const std::size_t n = m.n();
  if (row_perm.size() != n || row_signs.size() != n || col_perm.size() != n ||
      col_signs.size() != n) {
    throw DimensionMismatch("transform: permutation/sign sizes must equal n");
  }
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = row_signs[i] * col_signs[j] * m(row_perm[i], col_perm[j]);
  return SquareMatrix(n, std::move(out));
}

namespace {

// Matches rows of `b` in order against unused rows of `a`. Column signs are
// fixed the first time a column is non-negligible in a matched pair.
class SymmetrySearch {
 public:
  SymmetrySearch(const SquareMatrix& a, const SquareMatrix& b, double tol)
      : a_(a), b_(b), tol_(tol), n_(a.n()), used_(n_, false), col_sign_(n_, 0) {}

  bool run() { return match(0); }

 private:
  bool match(std::size_t r) {
    if (r == n_) return true;
    for (std::size_t p = 0; p < n_; ++p) {
      if (used_[p]) continue;
      for (int sigma : {1, -1}) {
        std::vector<std::size_t> fixed;
        if (try_pair(p, r, sigma, fixed)) {
          used_[p] = true;
          if (match(r + 1)) return true;
          used_[p] = false;
        }
        for (std::size_t j : fixed) col_sign_[j] = 0;
      }
    }
    return false;
  }

  bool try_pair(std::size_t p, std::size_t r, int sigma, std::vector<std::size_t>& fixed) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double av = sigma * a_(p, j);
      const double bv = b_(r, j);
      if (col_sign_[j] != 0) {
        if (std::abs(col_sign_[j] * av - bv) > tol_) return false;
        continue;
      }
      const bool plus = std::abs(av - bv) <= tol_;
      const bool minus = std::abs(-av - bv) <= tol_;
      if (plus && minus) continue;
      if (!plus && !minus) return false;
      col_sign_[j] = plus ? 1 : -1;
      fixed.push_back(j);
    }
    return true;
  }

  const SquareMatrix& a_;
  const SquareMatrix& b_;
  double tol_;
  std::size_t n_;
  std::vector<bool> used_;
  std::vector<int> col_sign_;
};

}  // namespace

bool equivalent_up_to_symmetry(const RowNormalizedMatrix& a, const RowNormalizedMatrix& b,
                               double tol) {
  if (a.n() != b.n()) return false;
  if (a.n() > 8) {
    throw TooLarge("symmetry search supports n <= 8, got n = " + std::to_string(a.n()));
  }
  return SymmetrySearch(a.inner(), b.inner(), tol).run();
}

bool same_abs_fingerprint(const SquareMatrix& a, const SquareMatrix& b, double tol) {
  if (a.n() != b.n()) return false;
  auto sorted_abs = [](const SquareMatrix& m) {
    std::vector<double> v(m.entries().begin(), m.entries().end());
    for (double& x : v) x = std::abs(x);
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto fa = sorted_abs(a);
  const auto fb = sorted_abs(b);
  for (std::size_t k = 0; k < fa.size(); ++k)
    if (std::abs(fa[k] - fb[k]) > tol) return false;
  return true;
}

// ---- I/O ------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  offset = 0;
  while (offset < s.size() && (s[offset] == ' ' || s[offset] == '\t')) ++offset;
  std::size_t end = s.size();
  while (end > offset && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r')) --end;
  return s.substr(offset, end - offset);
}

double parse_double(std::string_view token, std::size_t line, std::size_t col) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ParseError(line, col, "invalid number '" + std::string(token) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, col, "non-finite value");
  return v;
}

}  // namespace

SquareMatrix parse_matrix(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  // Blank trailing lines are allowed; blank lines elsewhere are not.
  while (!lines.empty()) {
    std::size_t off = 0;
    if (!trim(lines.back(), off).empty()) break;
    lines.pop_back();
  }
  if (lines.empty()) throw ParseError(1, 1, "empty file");

  std::size_t off = 0;
  const std::string_view header = trim(lines[0], off);
  std::size_t n = 0;
  {
    auto [ptr, ec] = std::from_chars(header.data(), header.data() + header.size(), n);
    if (ec != std::errc() || ptr != header.data() + header.size() || header.empty()) {
      throw ParseError(1, off + 1, "expected matrix dimension");
    }
  }
  if (n == 0) throw ParseError(1, off + 1, "dimension must be positive");

  if (lines.size() - 1 != n) {
    throw DimensionMismatch("header declares " + std::to_string(n) + " rows, file has " +
                            std::to_string(lines.size() - 1));
  }

  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string_view line = lines[i + 1];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      const std::size_t stop = comma == std::string_view::npos ? line.size() : comma;
      std::size_t lead = 0;
      const std::string_view token = trim(line.substr(start, stop - start), lead);
      entries.push_back(parse_double(token, i + 2, start + lead + 1));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != n) {
      throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(count) +
                              " values, expected " + std::to_string(n));
    }
  }
  return SquareMatrix(n, std::move(entries));
}

std::string format_matrix(const SquareMatrix& m) {
  std::string out = std::to_string(m.n()) + "\n";
  char buf[32];
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

SquareMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

void save_matrix(const SquareMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << format_matrix(m);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace badsci
