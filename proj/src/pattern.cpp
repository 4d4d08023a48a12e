#include "spr/pattern.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace spr {

SignPattern::SignPattern(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), signs_(rows * cols, Sign::Zero) {}

SignPattern::SignPattern(std::size_t rows, std::size_t cols, std::vector<Sign> signs)
    : rows_(rows), cols_(cols), signs_(std::move(signs)) {
  if (signs_.size() != rows * cols) throw ShapeMismatch("sign grid size does not match shape");
}

SignPattern SignPattern::from_strings(const std::vector<std::string>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<Sign> signs;
  signs.reserve(m * n);
  std::size_t offset = 0;
  for (const std::string& r : rows) {
    if (r.size() != n) throw ShapeMismatch("pattern rows have different lengths");
    for (std::size_t j = 0; j < n; ++j) {
      switch (r[j]) {
        case '+':
          signs.push_back(Sign::Plus);
          break;
        case '-':
          signs.push_back(Sign::Minus);
          break;
        case '0':
          signs.push_back(Sign::Zero);
          break;
        default:
          throw ParseError(std::string("bad sign character '") + r[j] + "'", offset + j);
      }
    }
    offset += n;
  }
  return SignPattern(m, n, std::move(signs));
}

std::size_t SignPattern::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(signs_.begin(), signs_.end(), [](Sign s) { return s != Sign::Zero; }));
}

IndexList SignPattern::row_support(std::size_t i) const {
  IndexList s;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (nonzero(i, j)) s.push_back(j);
  }
  return s;
}

std::vector<std::string> SignPattern::to_strings() const {
  std::vector<std::string> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(to_char((*this)(i, j)));
  }
  return out;
}

SignPattern SignPattern::transpose() const {
  std::vector<Sign> t;
  t.reserve(signs_.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) t.push_back((*this)(i, j));
  }
  return SignPattern(cols_, rows_, std::move(t));
}

SignPattern SignPattern::submatrix(const IndexList& row_idx, const IndexList& col_idx) const {
  for (std::size_t i : row_idx) {
    if (i >= rows_) throw ShapeMismatch("submatrix row index out of range");
  }
  for (std::size_t j : col_idx) {
    if (j >= cols_) throw ShapeMismatch("submatrix column index out of range");
  }
  std::vector<Sign> s;
  s.reserve(row_idx.size() * col_idx.size());
  for (std::size_t i : row_idx) {
    for (std::size_t j : col_idx) s.push_back((*this)(i, j));
  }
  return SignPattern(row_idx.size(), col_idx.size(), std::move(s));
}

SignPattern SignPattern::with_sign(std::size_t i, std::size_t j, Sign s) const {
  SignPattern out(*this);
  out.signs_[i * cols_ + j] = s;
  return out;
}

SignPattern sign_of(const ExactMatrix& a) {
  std::vector<Sign> s;
  s.reserve(a.entries().size());
  for (const Scalar& x : a.entries()) s.push_back(sign(x));
  return SignPattern(a.rows(), a.cols(), std::move(s));
}

SignPattern negate_lines(const SignPattern& s, const IndexList& rows, const IndexList& cols) {
  std::vector<bool> flip_row(s.rows(), false), flip_col(s.cols(), false);
  for (std::size_t i : rows) flip_row.at(i) = !flip_row.at(i);
  for (std::size_t j : cols) flip_col.at(j) = !flip_col.at(j);
  std::vector<Sign> out;
  out.reserve(s.rows() * s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const bool flip = flip_row[i] != flip_col[j];
      out.push_back(flip ? -s(i, j) : s(i, j));
    }
  }
  return SignPattern(s.rows(), s.cols(), std::move(out));
}

bool is_matching(const SignPattern& s, const Matching& m) {
  std::set<std::size_t> rows, cols;
  for (const auto& [i, j] : m.edges) {
    if (i >= s.rows() || j >= s.cols() || !s.nonzero(i, j)) return false;
    if (!rows.insert(i).second || !cols.insert(j).second) return false;
  }
  return true;
}

bool is_cover(const SignPattern& s, const LineCover& c) {
  std::vector<bool> row(s.rows(), false), col(s.cols(), false);
  for (std::size_t i : c.rows) {
    if (i >= s.rows()) return false;
    row[i] = true;
  }
  for (std::size_t j : c.cols) {
    if (j >= s.cols()) return false;
    col[j] = true;
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (s.nonzero(i, j) && !row[i] && !col[j]) return false;
    }
  }
  return true;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct BipartiteMatcher {
  const SignPattern& s;
  std::vector<std::size_t> match_of_row, match_of_col;
  std::vector<bool> seen_col;

  explicit BipartiteMatcher(const SignPattern& pattern)
      : s(pattern), match_of_row(pattern.rows(), kNone), match_of_col(pattern.cols(), kNone) {}

  bool augment(std::size_t i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (!s.nonzero(i, j) || seen_col[j]) continue;
      seen_col[j] = true;
      if (match_of_col[j] == kNone || augment(match_of_col[j])) {
        match_of_col[j] = i;
        match_of_row[i] = j;
        return true;
      }
    }
    return false;
  }

  void run() {
    for (std::size_t i = 0; i < s.rows(); ++i) {
      seen_col.assign(s.cols(), false);
      augment(i);
    }
  }
};

}  // namespace

TermRank term_rank(const SignPattern& s) {
  BipartiteMatcher bm(s);
  bm.run();

  TermRank tr;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (bm.match_of_row[i] != kNone) tr.matching.edges.emplace_back(i, bm.match_of_row[i]);
  }
  tr.t = tr.matching.edges.size();

  // Konig: Z = vertices reachable from unmatched rows by alternating paths.
  std::vector<bool> z_row(s.rows(), false), z_col(s.cols(), false);
  std::queue<std::size_t> frontier;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (bm.match_of_row[i] == kNone) {
      z_row[i] = true;
      frontier.push(i);
    }
  }
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (!s.nonzero(i, j) || z_col[j]) continue;
      z_col[j] = true;
      const std::size_t k = bm.match_of_col[j];
      if (k != kNone && !z_row[k]) {
        z_row[k] = true;
        frontier.push(k);
      }
    }
  }
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (!z_row[i]) tr.cover.rows.push_back(i);
  }
  for (std::size_t j = 0; j < s.cols(); ++j) {
    if (z_col[j]) tr.cover.cols.push_back(j);
  }

  if (!is_matching(s, tr.matching) || !is_cover(s, tr.cover) || tr.cover.size() != tr.t) {
    throw InternalVerificationFailed("term rank certificates do not verify");
  }
  return tr;
}

BlockDecomposition block_decompose(const SignPattern& s) {
  const TermRank tr = term_rank(s);
  BlockDecomposition bd;
  bd.p = tr.cover.rows.size();
  bd.q = tr.cover.cols.size();

  std::vector<bool> row_cov(s.rows(), false), col_cov(s.cols(), false);
  for (std::size_t i : tr.cover.rows) row_cov[i] = true;
  for (std::size_t j : tr.cover.cols) col_cov[j] = true;
  IndexList free_rows, free_cols;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    (row_cov[i] ? bd.row_perm : free_rows).push_back(i);
  }
  for (std::size_t j = 0; j < s.cols(); ++j) {
    (col_cov[j] ? bd.col_perm : free_cols).push_back(j);
  }

  for (std::size_t i : free_rows) {
    for (std::size_t j : free_cols) {
      if (s.nonzero(i, j)) throw InternalVerificationFailed("uncovered block is not zero");
    }
  }

  // Each matching edge has exactly one covered endpoint: covered columns pair with uncovered
  // rows (the D block) and covered rows with uncovered columns (the C block).
  for (const auto& [i, j] : tr.matching.edges) {
    if (col_cov[j] && !row_cov[i]) {
      bd.d_matching.edges.emplace_back(i, j);
    } else if (row_cov[i] && !col_cov[j]) {
      bd.c_matching.edges.emplace_back(i, j);
    } else {
      throw InternalVerificationFailed("matching edge with both or no endpoints covered");
    }
  }
  const SignPattern d = s.submatrix(free_rows, tr.cover.cols);
  const SignPattern c = s.submatrix(tr.cover.rows, free_cols);
  if (bd.d_matching.edges.size() != bd.q || bd.c_matching.edges.size() != bd.p ||
      term_rank(d).t != bd.q || term_rank(c).t != bd.p) {
    throw InternalVerificationFailed("off-diagonal blocks do not attain the cover sizes");
  }

  bd.row_perm.insert(bd.row_perm.end(), free_rows.begin(), free_rows.end());
  bd.col_perm.insert(bd.col_perm.end(), free_cols.begin(), free_cols.end());
  return bd;
}

namespace {

using Wide = __int128;

// Rank of a small integer matrix by fraction-free (Bareiss) elimination.
std::size_t small_integer_rank(std::vector<Wide> a, std::size_t m, std::size_t n) {
  std::size_t r = 0;
  Wide prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p * n + c] == 0) ++p;
    if (p == m) continue;
    if (p != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[r * n + j]);
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        a[i * n + j] = (a[r * n + c] * a[i * n + j] - a[i * n + c] * a[r * n + j]) / prev;
      }
      a[i * n + c] = 0;
    }
    prev = a[r * n + c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t brute_min_rank(const SignPattern& s, long denominator_bound) {
  if (s.rows() > 3 || s.cols() > 3 || denominator_bound < 1 || denominator_bound > 8) {
    throw InstanceTooLarge("brute_min_rank supports at most 3x3 patterns and bounds 1..8");
  }
  const std::size_t m = s.rows(), n = s.cols();
  if (s.support_size() == 0) return 0;

  long scale = 1;
  for (long q = 2; q <= denominator_bound; ++q) scale = std::lcm(scale, q);
  std::set<long> magnitudes;
  for (long p = 1; p <= denominator_bound; ++p) {
    for (long q = 1; q <= denominator_bound; ++q) {
      if ((p * scale) % q == 0) magnitudes.insert(p * scale / q);
    }
  }
  const std::vector<long> values(magnitudes.begin(), magnitudes.end());

  // Spanning forest of the bipartite support graph: rows 0..m-1, columns m..m+n-1.
  std::vector<std::size_t> parent(m + n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<bool> fixed(m * n, false);
  IndexList free_positions;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!s.nonzero(i, j)) continue;
      const std::size_t a = find(i), b = find(m + j);
      if (a != b) {
        parent[a] = b;
        fixed[i * n + j] = true;
      } else {
        free_positions.push_back(i * n + j);
      }
    }
  }

  std::vector<Wide> grid(m * n, 0);
  for (std::size_t k = 0; k < m * n; ++k) {
    if (fixed[k]) grid[k] = static_cast<Wide>(static_cast<int>(s(k / n, k % n))) * scale;
  }
  std::size_t best = std::min(m, n);
  std::vector<std::size_t> digit(free_positions.size(), 0);
  while (true) {
    for (std::size_t f = 0; f < free_positions.size(); ++f) {
      const std::size_t k = free_positions[f];
      grid[k] = static_cast<Wide>(static_cast<int>(s(k / n, k % n))) * values[digit[f]];
    }
    best = std::min(best, small_integer_rank(grid, m, n));
    if (best == 1) break;
    std::size_t f = 0;
    while (f < digit.size() && ++digit[f] == values.size()) digit[f++] = 0;
    if (f == digit.size()) break;
  }
  return best;
}

}  // namespace spr
