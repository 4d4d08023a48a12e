#ifndef SPR_MATRIX_HPP
#define SPR_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spr/scalar.hpp"

namespace spr {

using Vector = std::vector<Scalar>;
using IndexList = std::vector<std::size_t>;

enum class Side { Right, Left };
enum class Line { Row, Column };

/// Dense row-major matrix over a single field. Immutable: every operation returns a new value.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  /// Zero matrix.
  ExactMatrix(const FieldTag& field, std::size_t rows, std::size_t cols);
  /// Throws FieldMismatch if an entry is over another field, ShapeMismatch on a size mismatch.
  ExactMatrix(const FieldTag& field, std::size_t rows, std::size_t cols,
              std::vector<Scalar> entries);

  static ExactMatrix from_rows(const FieldTag& field, const std::vector<Vector>& rows);
  /// Convenience for small rational fixtures.
  static ExactMatrix from_ints(const std::vector<std::vector<long>>& rows);
  static ExactMatrix identity(const FieldTag& field, std::size_t n);

  const FieldTag& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const noexcept { return entries_; }
  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  ExactMatrix with_entry(std::size_t i, std::size_t j, const Scalar& value) const;
  ExactMatrix transpose() const;
  ExactMatrix submatrix(const IndexList& row_idx, const IndexList& col_idx) const;
  /// Row i of the result is row row_perm[i] of this matrix; likewise for columns.
  ExactMatrix permuted(const IndexList& row_perm, const IndexList& col_perm) const;
  /// Inverse of permuted(): places row i of this matrix at position row_perm[i].
  ExactMatrix unpermuted(const IndexList& row_perm, const IndexList& col_perm) const;

  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  FieldTag field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
Vector operator*(const ExactMatrix& a, std::span<const Scalar> v);
/// v^T A.
Vector left_multiply(std::span<const Scalar> v, const ExactMatrix& a);
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y);
bool is_zero_vector(std::span<const Scalar> v);

/// Reduced row echelon form with first-nonzero pivoting in column order.
struct Echelon {
  ExactMatrix reduced;
  IndexList pivot_columns;
};
Echelon reduced_row_echelon(const ExactMatrix& a);

std::size_t rank(const ExactMatrix& a);

/// Basis of {v : A v = 0} (Right) or {v : v^T A = 0} (Left). Vectors are in reduced echelon
/// form: each has a leading 1 in its own coordinate, and that coordinate is zero in the others.
struct KernelBasis {
  Side side = Side::Right;
  std::vector<Vector> vectors;
};
KernelBasis kernel(const ExactMatrix& a, Side side);

/// Splits the unknowns of x^T * C[support, :] = 0 into pivots and free coordinates, with pivots
/// chosen by elimination on the transposed restricted system.
struct UnknownSplit {
  IndexList pivots;
  IndexList free;
};
UnknownSplit split_unknowns(const ExactMatrix& c, const IndexList& support);

/// Solves x^T * C[support, :] = 0 for a vector x of length C.rows() that vanishes outside
/// `support`. `free_values` must give values for exactly the free unknowns of split_unknowns;
/// assigning a pivot (or leaving a free unknown open) is a StructuralError.
Vector solve_with_free(const ExactMatrix& c, const std::vector<std::optional<Scalar>>& free_values,
                       const IndexList& support);

/// Multiplies one line by a nonzero scalar.
ExactMatrix scale_line(const ExactMatrix& a, std::size_t index, Line which, const Scalar& lambda);

/// [[W, C], [D, 0]].
ExactMatrix assemble_block(const ExactMatrix& w, const ExactMatrix& c, const ExactMatrix& d);

ExactMatrix embed_rationals(const ExactMatrix& a, const FieldTag& target);
/// Relabels a matrix whose entries all have zero radical part as a matrix over Q.
ExactMatrix restrict_to_rationals(const ExactMatrix& a);
bool has_rational_entries(const ExactMatrix& a);

}  // namespace spr

#endif  // SPR_MATRIX_HPP
