#ifndef SPR_PATTERN_HPP
#define SPR_PATTERN_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spr/matrix.hpp"

namespace spr {

/// A {+,-,0} grid.
class SignPattern {
 public:
  SignPattern() = default;
  SignPattern(std::size_t rows, std::size_t cols);
  SignPattern(std::size_t rows, std::size_t cols, std::vector<Sign> signs);
  /// One string per row over the alphabet {'+','-','0'}.
  static SignPattern from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Sign operator()(std::size_t i, std::size_t j) const { return signs_[i * cols_ + j]; }
  bool nonzero(std::size_t i, std::size_t j) const { return (*this)(i, j) != Sign::Zero; }
  std::size_t support_size() const;
  IndexList row_support(std::size_t i) const;

  std::vector<std::string> to_strings() const;
  SignPattern transpose() const;
  SignPattern submatrix(const IndexList& row_idx, const IndexList& col_idx) const;
  SignPattern with_sign(std::size_t i, std::size_t j, Sign s) const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Sign> signs_;
};

SignPattern sign_of(const ExactMatrix& a);

/// Flips + and - on every listed row and column. A position on both a listed row and a listed
/// column is flipped twice.
SignPattern negate_lines(const SignPattern& s, const IndexList& rows, const IndexList& cols);

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

struct LineCover {
  IndexList rows;
  IndexList cols;
  std::size_t size() const { return rows.size() + cols.size(); }
};

struct TermRank {
  std::size_t t = 0;
  Matching matching;
  LineCover cover;
};

/// Maximum matching by augmenting paths plus the Konig cover read off the final matching.
/// Both certificates are checked before returning.
TermRank term_rank(const SignPattern& s);

bool is_matching(const SignPattern& s, const Matching& m);
bool is_cover(const SignPattern& s, const LineCover& c);

/// Row/column order placing the covered lines of a minimum cover first, so that the pattern
/// reads [[B, C], [D, 0]] with B of size p x q and p + q = term rank.
struct BlockDecomposition {
  IndexList row_perm;
  IndexList col_perm;
  std::size_t p = 0;
  std::size_t q = 0;
  /// Restricted matchings certifying term_rank(D) = q and term_rank(C) = p.
  Matching d_matching;
  Matching c_matching;
};
BlockDecomposition block_decompose(const SignPattern& s);

/// Smallest rank among bounded-entry realizations of a pattern with at most 3 rows and columns.
/// Row and column scaling fixes a spanning forest of the support to +-1; every other support
/// entry ranges over +-p/q with 1 <= p, q <= denominator_bound. The result is an upper bound
/// on the true minimum rank. Throws InstanceTooLarge outside those limits.
std::size_t brute_min_rank(const SignPattern& s, long denominator_bound);

}  // namespace spr

#endif  // SPR_PATTERN_HPP
