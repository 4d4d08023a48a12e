#include "spr/matroid.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

namespace spr {

std::vector<std::size_t> elements_of(ElementSet s) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; s != 0; ++e, s >>= 1) {
    if (s & 1u) out.push_back(e);
  }
  return out;
}

ElementSet set_of(const std::vector<std::size_t>& elements) {
  ElementSet s = 0;
  for (std::size_t e : elements) {
    if (e >= kMaxGround) throw InstanceTooLarge("element index beyond the supported ground size");
    s |= ElementSet{1} << e;
  }
  return s;
}

bool lex_less(ElementSet a, ElementSet b) {
  const auto ea = elements_of(a), eb = elements_of(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

namespace {

std::string describe(ElementSet s) {
  std::string out = "{";
  for (std::size_t e : elements_of(s)) out += (out.size() > 1 ? "," : "") + std::to_string(e + 1);
  return out + "}";
}

void sort_lex(std::vector<ElementSet>& sets) {
  std::sort(sets.begin(), sets.end(), lex_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

// independent[S] for every subset S of the ground set.
std::vector<bool> independent_sets(const Matroid& m) {
  std::vector<bool> indep(std::size_t{1} << m.ground_size(), false);
  for (ElementSet b : m.bases()) indep[b] = true;
  for (std::size_t s = indep.size(); s-- > 0;) {
    if (!indep[s]) continue;
    for (ElementSet rest = static_cast<ElementSet>(s); rest != 0; rest &= rest - 1) {
      indep[s & ~(rest & -rest)] = true;
    }
  }
  return indep;
}

}  // namespace

Matroid::Matroid(std::size_t ground_size, std::vector<ElementSet> bases)
    : n_(ground_size), bases_(std::move(bases)) {
  if (n_ > kMaxGround) {
    throw InstanceTooLarge("ground sets larger than " + std::to_string(kMaxGround) +
                           " are not supported");
  }
  for (ElementSet b : bases_) {
    if ((b & ~ground()) != 0) throw AxiomViolation("basis " + describe(b) + " leaves the ground set");
  }
  sort_lex(bases_);
}

bool Matroid::is_basis(ElementSet s) const {
  return std::binary_search(bases_.begin(), bases_.end(), s, lex_less);
}

std::size_t Matroid::rank() const {
  return bases_.empty() ? 0 : static_cast<std::size_t>(std::popcount(bases_.front()));
}

void validate(const Matroid& m) {
  if (m.bases().empty()) throw AxiomViolation("basis family is empty");
  const int r = std::popcount(m.bases().front());
  for (ElementSet b : m.bases()) {
    if (std::popcount(b) != r) {
      throw AxiomViolation("cardinality: bases " + describe(m.bases().front()) + " and " +
                           describe(b) + " differ in size");
    }
  }
  for (ElementSet a : m.bases()) {
    for (ElementSet b : m.bases()) {
      for (std::size_t x : elements_of(a & ~b)) {
        const ElementSet removed = a & ~(ElementSet{1} << x);
        bool exchanged = false;
        for (std::size_t y : elements_of(b & ~a)) {
          if (m.is_basis(removed | (ElementSet{1} << y))) {
            exchanged = true;
            break;
          }
        }
        if (!exchanged) {
          throw AxiomViolation("exchange: A=" + describe(a) + ", B=" + describe(b) +
                               ", a=" + std::to_string(x + 1) + " has no valid b");
        }
      }
    }
  }
}

Matroid dual(const Matroid& m) {
  std::vector<ElementSet> co;
  co.reserve(m.bases().size());
  for (ElementSet b : m.bases()) co.push_back(m.ground() & ~b);
  return Matroid(m.ground_size(), std::move(co));
}

Matroid uniform_matroid(std::size_t rank, std::size_t n) {
  std::vector<ElementSet> bases;
  for (ElementSet s = 0; s < (ElementSet{1} << n); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) == rank) bases.push_back(s);
  }
  return Matroid(n, std::move(bases));
}

std::vector<ElementSet> circuits(const Matroid& m) {
  const std::vector<bool> indep = independent_sets(m);
  std::vector<ElementSet> out;
  for (std::size_t s = 1; s < indep.size(); ++s) {
    if (indep[s]) continue;
    bool minimal = true;
    for (ElementSet rest = static_cast<ElementSet>(s); rest != 0 && minimal; rest &= rest - 1) {
      minimal = indep[s & ~(rest & -rest)];
    }
    if (minimal) out.push_back(static_cast<ElementSet>(s));
  }
  sort_lex(out);
  return out;
}

std::vector<ElementSet> cocircuits(const Matroid& m) { return circuits(dual(m)); }

CocircuitMatrix cocircuit_matrix(const Matroid& m) {
  CocircuitMatrix cm;
  cm.cocircuits = cocircuits(m);
  const std::size_t n = m.ground_size(), k = cm.cocircuits.size();
  std::vector<Sign> signs(n * k, Sign::Zero);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t e : elements_of(cm.cocircuits[j])) signs[e * k + j] = Sign::Plus;
  }
  cm.incidence = SignPattern(n, k, std::move(signs));
  return cm;
}

namespace {

IndexList all_rows(const ExactMatrix& a) {
  IndexList v(a.rows());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::size_t subset_rank(const ExactMatrix& vectors, ElementSet s) {
  return rank(vectors.submatrix(all_rows(vectors), elements_of(s)));
}

}  // namespace

void validate_representation(const Matroid& m, const Representation& rep) {
  if (rep.vectors.cols() != m.ground_size()) {
    throw RepresentationMismatch("representation has " + std::to_string(rep.vectors.cols()) +
                                 " vectors for a ground set of size " +
                                 std::to_string(m.ground_size()));
  }
  if (!(rep.vectors.field() == rep.field)) {
    throw RepresentationMismatch("vector entries are not over the declared field");
  }
  const std::size_t r = m.rank();
  if (rep.dim() != r) {
    throw RepresentationMismatch("dimension " + std::to_string(rep.dim()) +
                                 " differs from matroid rank " + std::to_string(r));
  }
  for (ElementSet s = 0; s <= m.ground(); ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) != r) continue;
    const bool independent = subset_rank(rep.vectors, s) == r;
    if (independent != m.is_basis(s)) {
      throw RepresentationMismatch("subset " + describe(s) +
                                   (independent ? " is independent but not a basis"
                                                : " is a basis but dependent"));
    }
    if (s == m.ground()) break;
  }
}

Matroid matroid_of(const Representation& rep) {
  const std::size_t n = rep.vectors.cols();
  if (n > kMaxGround) throw InstanceTooLarge("too many vectors for matroid enumeration");
  const std::size_t r = rank(rep.vectors);
  std::vector<ElementSet> bases;
  const ElementSet ground = n == 0 ? 0u : (ElementSet{1} << n) - 1;
  for (ElementSet s = 0; s <= ground; ++s) {
    if (static_cast<std::size_t>(std::popcount(s)) == r && subset_rank(rep.vectors, s) == r) {
      bases.push_back(s);
    }
    if (s == ground) break;
  }
  return Matroid(n, std::move(bases));
}

Representation dual_representation(const Matroid& m, const Representation& rep) {
  validate_representation(m, rep);
  const std::size_t n = m.ground_size(), r = m.rank();
  const Echelon e = reduced_row_echelon(rep.vectors);
  if (e.pivot_columns.size() != r) throw RepresentationMismatch("vectors do not span");

  IndexList non_pivots;
  std::vector<std::optional<std::size_t>> pivot_row(n);
  for (std::size_t i = 0; i < r; ++i) pivot_row[e.pivot_columns[i]] = i;
  for (std::size_t j = 0; j < n; ++j) {
    if (!pivot_row[j]) non_pivots.push_back(j);
  }

  // [I | A] -> [-A^T | I]: element at pivot row i gets column -A(i, :)^T.
  const std::size_t k = n - r;
  std::vector<Scalar> out(k * n, Scalar(rep.field));
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pivot_row[j]) {
        out[c * n + j] = -e.reduced(*pivot_row[j], non_pivots[c]);
      } else if (j == non_pivots[c]) {
        out[c * n + j] = Scalar::one(rep.field);
      }
    }
  }
  Representation dual_rep{rep.field, ExactMatrix(rep.field, k, n, std::move(out))};
  validate_representation(dual(m), dual_rep);
  return dual_rep;
}

ExactMatrix cocircuit_realization(const Matroid& m, const Representation& rep) {
  validate_representation(m, rep);
  const std::size_t n = m.ground_size(), r = m.rank();
  ElementSet covered = 0;
  for (ElementSet b : m.bases()) covered |= b;
  if (covered != m.ground()) {
    throw PreconditionViolated("matroid has a loop; cocircuit realization needs none");
  }

  const CocircuitMatrix cm = cocircuit_matrix(m);
  const std::size_t k = cm.cocircuits.size();
  std::vector<Scalar> out(n * k, Scalar(rep.field));
  for (std::size_t c = 0; c < k; ++c) {
    const ElementSet hyperplane = m.ground() & ~cm.cocircuits[c];
    const ExactMatrix span = rep.vectors.submatrix(all_rows(rep.vectors), elements_of(hyperplane));
    const KernelBasis normal = kernel(span, Side::Left);
    if (normal.vectors.size() != 1) {
      throw InternalVerificationFailed("complement of cocircuit " + describe(cm.cocircuits[c]) +
                                       " is not a hyperplane");
    }
    // The echelon basis vector already has its first nonzero coordinate equal to 1.
    const Vector values = left_multiply(normal.vectors.front(), rep.vectors);
    for (std::size_t e = 0; e < n; ++e) out[e * k + c] = values[e];
  }
  ExactMatrix result(rep.field, n, k, std::move(out));

  SignPattern support = sign_of(result);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (support.nonzero(i, j) != cm.incidence.nonzero(i, j)) {
        throw InternalVerificationFailed("realization support differs from cocircuit matrix");
      }
    }
  }
  if (spr::rank(result) != r) {
    throw InternalVerificationFailed("realization rank differs from matroid rank");
  }
  return result;
}

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a)) {
    if (e & 1) r = mul_mod(r, a);
  }
  return r;
}

std::uint64_t residue(const mpq_class& q) {
  auto reduce = [](const mpz_class& z) {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(kPrime));
    if (r < 0) r += static_cast<unsigned long>(kPrime);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  return mul_mod(reduce(q.get_num()), pow_mod(reduce(q.get_den()), kPrime - 2));
}

// Rank modulo a prime; never exceeds the rank over Q.
std::size_t modular_rank(std::vector<std::uint64_t> a, std::size_t m, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p * n + c] == 0) ++p;
    if (p == m) continue;
    if (p != r) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[p * n + j], a[r * n + j]);
    }
    const std::uint64_t pivot = a[r * n + c];
    for (std::size_t i = r + 1; i < m; ++i) {
      const std::uint64_t f = a[i * n + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        const std::uint64_t lhs = mul_mod(a[i * n + j], pivot);
        const std::uint64_t rhs = mul_mod(a[r * n + j], f);
        a[i * n + j] = lhs >= rhs ? lhs - rhs : lhs + kPrime - rhs;
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

KapranovSearchResult kapranov_search(const SignPattern& support, std::size_t target_rank,
                                     const FieldTag& field, long bound,
                                     std::uint64_t max_candidates) {
  if (bound < 1) throw PreconditionViolated("search bound must be positive");
  const std::size_t m = support.rows(), n = support.cols();

  std::set<mpq_class> magnitudes;
  for (long p = 1; p <= bound; ++p) {
    for (long q = 1; q <= bound; ++q) {
      mpq_class v(p, q);
      v.canonicalize();
      magnitudes.insert(v);
    }
  }
  std::vector<mpq_class> values;
  for (auto it = magnitudes.rbegin(); it != magnitudes.rend(); ++it) values.push_back(-*it);
  values.insert(values.end(), magnitudes.begin(), magnitudes.end());
  std::vector<std::uint64_t> value_residues;
  for (const mpq_class& v : values) value_residues.push_back(residue(v));

  std::vector<std::size_t> parent(m + n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::vector<std::size_t> free_positions;
  std::vector<std::uint64_t> grid(m * n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!support.nonzero(i, j)) continue;
      const std::size_t a = find(i), b = find(m + j);
      if (a != b) {
        parent[a] = b;
        grid[i * n + j] = 1;
      } else {
        free_positions.push_back(i * n + j);
      }
    }
  }

  KapranovSearchResult result;
  result.search_space = 1;
  for (std::size_t f = 0; f < free_positions.size(); ++f) {
    if (result.search_space > max_candidates / values.size()) {
      throw InstanceTooLarge("search space " + std::to_string(values.size()) + "^" +
                             std::to_string(free_positions.size()) + " exceeds " +
                             std::to_string(max_candidates) + " candidates");
    }
    result.search_space *= values.size();
  }

  std::vector<std::size_t> digit(free_positions.size(), 0);
  while (true) {
    for (std::size_t f = 0; f < free_positions.size(); ++f) {
      grid[free_positions[f]] = value_residues[digit[f]];
    }
    ++result.candidates_examined;
    if (modular_rank(grid, m, n) <= target_rank) {
      std::vector<Scalar> entries(m * n, Scalar(field));
      for (std::size_t k = 0; k < m * n; ++k) {
        if (support.nonzero(k / n, k % n)) entries[k] = Scalar::one(field);
      }
      for (std::size_t f = 0; f < free_positions.size(); ++f) {
        entries[free_positions[f]] = Scalar(field, values[digit[f]]);
      }
      ExactMatrix candidate(field, m, n, std::move(entries));
      if (rank(candidate) <= target_rank) {
        result.found = true;
        result.witness = std::move(candidate);
        return result;
      }
    }
    // Odometer with the first free position most significant.
    std::size_t f = digit.size();
    while (f > 0 && ++digit[f - 1] == values.size()) digit[--f] = 0;
    if (f == 0) break;
  }
  return result;
}

WitnessReport irrationality_witness(const Matroid& m3, const Representation& rep,
                                    const WitnessOptions& options) {
  validate(m3);
  if (m3.rank() != 3) throw PreconditionViolated("witness construction needs a rank-3 matroid");
  validate_representation(m3, rep);

  WitnessReport w;
  w.dual_matroid = dual(m3);
  w.dual_rep = dual_representation(m3, rep);
  w.comatrix = cocircuit_matrix(w.dual_matroid);
  w.realization = cocircuit_realization(w.dual_matroid, w.dual_rep);
  w.pattern = sign_of(w.realization);
  w.realization_rank = rank(w.realization);
  w.term_rank = term_rank(w.pattern).t;
  w.gap = static_cast<long>(w.term_rank) - static_cast<long>(w.realization_rank);

  if (options.search_bound) {
    IndexList cols = options.search_columns;
    if (cols.empty()) {
      cols.resize(w.comatrix.incidence.cols());
      std::iota(cols.begin(), cols.end(), 0);
    }
    for (std::size_t j : cols) {
      if (j >= w.comatrix.incidence.cols()) {
        throw PreconditionViolated("search column " + std::to_string(j + 1) + " out of range 1.." +
                                   std::to_string(w.comatrix.incidence.cols()));
      }
    }
    IndexList rows(w.comatrix.incidence.rows());
    std::iota(rows.begin(), rows.end(), 0);
    const SignPattern sub = w.comatrix.incidence.submatrix(rows, cols);
    try {
      w.search = kapranov_search(sub, w.realization_rank, FieldTag::rationals(),
                                 *options.search_bound);
      w.search_note = w.search->found ? "rational realization found within bounds"
                                      : "no rational realization within bounds (evidence only)";
    } catch (const InstanceTooLarge& e) {
      w.search_note = std::string("search skipped: ") + e.what();
    }
  }
  return w;
}

}  // namespace spr
