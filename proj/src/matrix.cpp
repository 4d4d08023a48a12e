#include "spr/matrix.hpp"

#include <algorithm>
#include <string>

namespace spr {

namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Mutable row-major workspace used by the elimination routines.
struct Grid {
  std::size_t rows, cols;
  std::vector<Scalar> a;

  explicit Grid(const ExactMatrix& m) : rows(m.rows()), cols(m.cols()), a(m.entries()) {}
  Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(i, j), at(k, j));
  }
};

}  // namespace

ExactMatrix::ExactMatrix(const FieldTag& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar(field)) {}

ExactMatrix::ExactMatrix(const FieldTag& field, std::size_t rows, std::size_t cols,
                         std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw ShapeMismatch("expected " + std::to_string(rows * cols) + " entries for shape " +
                        shape(rows, cols) + ", got " + std::to_string(entries_.size()));
  }
  for (const Scalar& s : entries_) {
    if (!(s.field() == field)) {
      throw FieldMismatch("entry over " + s.field().to_string() + " in matrix over " +
                          field.to_string());
    }
  }
}

ExactMatrix ExactMatrix::from_rows(const FieldTag& field, const std::vector<Vector>& rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.front().size();
  std::vector<Scalar> entries;
  entries.reserve(m * n);
  for (const Vector& r : rows) {
    if (r.size() != n) throw ShapeMismatch("ragged rows");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return ExactMatrix(field, m, n, std::move(entries));
}

ExactMatrix ExactMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  std::vector<Vector> out;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.push_back(Scalar::rational(x));
    out.push_back(std::move(v));
  }
  return from_rows(FieldTag::rationals(), out);
}

ExactMatrix ExactMatrix::identity(const FieldTag& field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = Scalar::one(field);
  return m;
}

Vector ExactMatrix::row(std::size_t i) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector ExactMatrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

ExactMatrix ExactMatrix::with_entry(std::size_t i, std::size_t j, const Scalar& value) const {
  if (!(value.field() == field_)) throw FieldMismatch("entry field differs from matrix field");
  ExactMatrix out(*this);
  out.entries_[i * cols_ + j] = value;
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  std::vector<Scalar> t;
  t.reserve(entries_.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) t.push_back((*this)(i, j));
  }
  return ExactMatrix(field_, cols_, rows_, std::move(t));
}

ExactMatrix ExactMatrix::submatrix(const IndexList& row_idx, const IndexList& col_idx) const {
  for (std::size_t i : row_idx) {
    if (i >= rows_) throw ShapeMismatch("submatrix row index out of range");
  }
  for (std::size_t j : col_idx) {
    if (j >= cols_) throw ShapeMismatch("submatrix column index out of range");
  }
  std::vector<Scalar> s;
  s.reserve(row_idx.size() * col_idx.size());
  for (std::size_t i : row_idx) {
    for (std::size_t j : col_idx) s.push_back((*this)(i, j));
  }
  return ExactMatrix(field_, row_idx.size(), col_idx.size(), std::move(s));
}

ExactMatrix ExactMatrix::permuted(const IndexList& row_perm, const IndexList& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) {
    throw ShapeMismatch("permutation length does not match " + shape(rows_, cols_));
  }
  return submatrix(row_perm, col_perm);
}

ExactMatrix ExactMatrix::unpermuted(const IndexList& row_perm, const IndexList& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) {
    throw ShapeMismatch("permutation length does not match " + shape(rows_, cols_));
  }
  std::vector<Scalar> s(entries_.size(), Scalar(field_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) s[row_perm[i] * cols_ + col_perm[j]] = (*this)(i, j);
  }
  return ExactMatrix(field_, rows_, cols_, std::move(s));
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeMismatch("cannot multiply " + shape(a.rows(), a.cols()) + " by " +
                        shape(b.rows(), b.cols()));
  }
  if (!(a.field() == b.field())) throw FieldMismatch("matrix product across fields");
  std::vector<Scalar> out(a.rows() * b.cols(), Scalar(a.field()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out[i * b.cols() + j] += a(i, k) * b(k, j);
      }
    }
  }
  return ExactMatrix(a.field(), a.rows(), b.cols(), std::move(out));
}

Vector operator*(const ExactMatrix& a, std::span<const Scalar> v) {
  if (v.size() != a.cols()) throw ShapeMismatch("vector length differs from column count");
  Vector out(a.rows(), Scalar(a.field()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

Vector left_multiply(std::span<const Scalar> v, const ExactMatrix& a) {
  if (v.size() != a.rows()) throw ShapeMismatch("vector length differs from row count");
  Vector out(a.cols(), Scalar(a.field()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  }
  return out;
}

Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.size() != y.size()) throw ShapeMismatch("dot product of unequal lengths");
  if (x.empty()) return Scalar();
  Scalar s(x.front().field());
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool is_zero_vector(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Echelon reduced_row_echelon(const ExactMatrix& a) {
  Grid g(a);
  IndexList pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < g.cols && r < g.rows; ++c) {
    std::size_t p = r;
    while (p < g.rows && g.at(p, c).is_zero()) ++p;
    if (p == g.rows) continue;
    g.swap_rows(r, p);
    const Scalar inv = g.at(r, c).inv();
    for (std::size_t j = c; j < g.cols; ++j) g.at(r, j) *= inv;
    for (std::size_t i = 0; i < g.rows; ++i) {
      if (i == r || g.at(i, c).is_zero()) continue;
      const Scalar f = g.at(i, c);
      for (std::size_t j = c; j < g.cols; ++j) {
        if (!g.at(r, j).is_zero()) g.at(i, j) -= f * g.at(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {ExactMatrix(a.field(), g.rows, g.cols, std::move(g.a)), std::move(pivots)};
}

std::size_t rank(const ExactMatrix& a) {
  Grid g(a);
  std::size_t r = 0;
  for (std::size_t c = 0; c < g.cols && r < g.rows; ++c) {
    std::size_t p = r;
    while (p < g.rows && g.at(p, c).is_zero()) ++p;
    if (p == g.rows) continue;
    g.swap_rows(r, p);
    const Scalar inv = g.at(r, c).inv();
    for (std::size_t i = r + 1; i < g.rows; ++i) {
      if (g.at(i, c).is_zero()) continue;
      const Scalar f = g.at(i, c) * inv;
      for (std::size_t j = c + 1; j < g.cols; ++j) {
        if (!g.at(r, j).is_zero()) g.at(i, j) -= f * g.at(r, j);
      }
    }
    ++r;
  }
  return r;
}

KernelBasis kernel(const ExactMatrix& a, Side side) {
  if (side == Side::Left) {
    KernelBasis k = kernel(a.transpose(), Side::Right);
    k.side = Side::Left;
    return k;
  }
  const std::size_t n = a.cols();
  const Echelon e = reduced_row_echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivot_columns) is_pivot[c] = true;

  std::vector<Vector> raw;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, Scalar(a.field()));
    v[f] = Scalar::one(a.field());
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) v[e.pivot_columns[i]] = -e.reduced(i, f);
    raw.push_back(std::move(v));
  }

  KernelBasis basis;
  basis.side = Side::Right;
  if (raw.empty()) return basis;
  // Re-express the basis in reduced echelon form so leading coordinates are distinct ones.
  const Echelon normal = reduced_row_echelon(ExactMatrix::from_rows(a.field(), raw));
  for (std::size_t i = 0; i < raw.size(); ++i) basis.vectors.push_back(normal.reduced.row(i));

  for (const Vector& v : basis.vectors) {
    if (!is_zero_vector(a * v)) throw InternalVerificationFailed("kernel vector not annihilated");
  }
  return basis;
}

namespace {

ExactMatrix restricted_system(const ExactMatrix& c, const IndexList& support) {
  IndexList all_cols(c.cols());
  for (std::size_t j = 0; j < c.cols(); ++j) all_cols[j] = j;
  return c.submatrix(support, all_cols).transpose();
}

}  // namespace

UnknownSplit split_unknowns(const ExactMatrix& c, const IndexList& support) {
  const Echelon e = reduced_row_echelon(restricted_system(c, support));
  UnknownSplit split;
  std::size_t next = 0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (next < e.pivot_columns.size() && e.pivot_columns[next] == k) {
      split.pivots.push_back(support[k]);
      ++next;
    } else {
      split.free.push_back(support[k]);
    }
  }
  return split;
}

Vector solve_with_free(const ExactMatrix& c, const std::vector<std::optional<Scalar>>& free_values,
                       const IndexList& support) {
  if (free_values.size() != c.rows()) {
    throw ShapeMismatch("free assignment length differs from row count of C");
  }
  const Echelon e = reduced_row_echelon(restricted_system(c, support));
  std::vector<bool> is_pivot(support.size(), false);
  for (std::size_t k : e.pivot_columns) is_pivot[k] = true;
  std::vector<bool> in_support(c.rows(), false);
  for (std::size_t s : support) in_support[s] = true;

  Vector x(c.rows(), Scalar(c.field()));
  for (std::size_t idx = 0; idx < c.rows(); ++idx) {
    if (free_values[idx] && !in_support[idx]) {
      throw StructuralError("value assigned to coordinate " + std::to_string(idx) +
                            " outside the unknown support");
    }
  }
  for (std::size_t k = 0; k < support.size(); ++k) {
    const auto& val = free_values[support[k]];
    if (is_pivot[k]) {
      if (val) {
        throw StructuralError("value assigned to pivot coordinate " + std::to_string(support[k]));
      }
    } else {
      if (!val) throw StructuralError("free coordinate " + std::to_string(support[k]) + " unset");
      x[support[k]] = val->in_field(c.field());
    }
  }
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
    Scalar v(c.field());
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (!is_pivot[k] && !e.reduced(i, k).is_zero()) v -= e.reduced(i, k) * x[support[k]];
    }
    x[support[e.pivot_columns[i]]] = v;
  }
  return x;
}

ExactMatrix scale_line(const ExactMatrix& a, std::size_t index, Line which, const Scalar& lambda) {
  if (lambda.is_zero()) throw ZeroScalar();
  std::vector<Scalar> e = a.entries();
  if (which == Line::Row) {
    if (index >= a.rows()) throw ShapeMismatch("row index out of range");
    for (std::size_t j = 0; j < a.cols(); ++j) e[index * a.cols() + j] *= lambda;
  } else {
    if (index >= a.cols()) throw ShapeMismatch("column index out of range");
    for (std::size_t i = 0; i < a.rows(); ++i) e[i * a.cols() + index] *= lambda;
  }
  return ExactMatrix(a.field(), a.rows(), a.cols(), std::move(e));
}

ExactMatrix assemble_block(const ExactMatrix& w, const ExactMatrix& c, const ExactMatrix& d) {
  if (w.rows() != c.rows() || w.cols() != d.cols()) {
    throw ShapeMismatch("block shapes W " + shape(w.rows(), w.cols()) + ", C " +
                        shape(c.rows(), c.cols()) + ", D " + shape(d.rows(), d.cols()) +
                        " do not fit");
  }
  if (!(w.field() == c.field()) || !(w.field() == d.field())) {
    throw FieldMismatch("blocks over different fields");
  }
  const std::size_t m = w.rows() + d.rows();
  const std::size_t n = w.cols() + c.cols();
  std::vector<Scalar> e(m * n, Scalar(w.field()));
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) e[i * n + j] = w(i, j);
    for (std::size_t j = 0; j < c.cols(); ++j) e[i * n + w.cols() + j] = c(i, j);
  }
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) e[(w.rows() + i) * n + j] = d(i, j);
  }
  return ExactMatrix(w.field(), m, n, std::move(e));
}

ExactMatrix embed_rationals(const ExactMatrix& a, const FieldTag& target) {
  std::vector<Scalar> e;
  e.reserve(a.entries().size());
  for (const Scalar& s : a.entries()) e.push_back(s.in_field(target));
  return ExactMatrix(target, a.rows(), a.cols(), std::move(e));
}

ExactMatrix restrict_to_rationals(const ExactMatrix& a) {
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).has_rational_value()) bad.emplace_back(i, j);
    }
  }
  if (!bad.empty()) throw NotRational(std::move(bad));
  return embed_rationals(a, FieldTag::rationals());
}

bool has_rational_entries(const ExactMatrix& a) {
  return a.field().is_rationals() ||
         std::all_of(a.entries().begin(), a.entries().end(),
                     [](const Scalar& s) { return s.has_rational_value(); });
}

}  // namespace spr
