#ifndef SPR_MATROID_HPP
#define SPR_MATROID_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spr/matrix.hpp"
#include "spr/pattern.hpp"

namespace spr {

/// Subsets of the ground set {0..n-1} as bitmasks; n is limited to 12 for enumeration.
using ElementSet = std::uint32_t;
inline constexpr std::size_t kMaxGround = 12;

std::vector<std::size_t> elements_of(ElementSet s);
ElementSet set_of(const std::vector<std::size_t>& elements);
/// Lexicographic order on sorted element lists.
bool lex_less(ElementSet a, ElementSet b);

/// A matroid stored by its list of bases (sorted lexicographically, deduplicated).
class Matroid {
 public:
  Matroid() = default;
  Matroid(std::size_t ground_size, std::vector<ElementSet> bases);

  std::size_t ground_size() const noexcept { return n_; }
  const std::vector<ElementSet>& bases() const noexcept { return bases_; }
  bool is_basis(ElementSet s) const;
  /// Common basis size. Meaningful once validate() has passed.
  std::size_t rank() const;
  ElementSet ground() const { return n_ == 0 ? 0u : (ElementSet{1} << n_) - 1; }

  friend bool operator==(const Matroid&, const Matroid&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<ElementSet> bases_;
};

/// Throws AxiomViolation naming the failing condition (empty, cardinality, or exchange triple).
void validate(const Matroid& m);
Matroid dual(const Matroid& m);
Matroid uniform_matroid(std::size_t rank, std::size_t n);

/// Minimal dependent sets, lexicographically ordered.
std::vector<ElementSet> circuits(const Matroid& m);
std::vector<ElementSet> cocircuits(const Matroid& m);

struct CocircuitMatrix {
  std::vector<ElementSet> cocircuits;
  /// Rows are ground elements, columns cocircuits; '+' marks membership.
  SignPattern incidence;
};
CocircuitMatrix cocircuit_matrix(const Matroid& m);

/// Column j of `vectors` (dim x n) is the vector assigned to element j.
struct Representation {
  FieldTag field;
  ExactMatrix vectors;
  std::size_t dim() const { return vectors.rows(); }
};

/// Throws RepresentationMismatch naming the first subset whose independence disagrees.
void validate_representation(const Matroid& m, const Representation& rep);
Matroid matroid_of(const Representation& rep);
/// [I | A] -> [-A^T | I] after a basis-revealing column permutation; checked against dual(m).
Representation dual_representation(const Matroid& m, const Representation& rep);

/// Matrix over the representation's field with support equal to the cocircuit matrix and
/// rank equal to rank(m): each column is the normal of the complementary hyperplane, applied
/// to every element's vector.
ExactMatrix cocircuit_realization(const Matroid& m, const Representation& rep);

struct KapranovSearchResult {
  bool found = false;
  std::optional<ExactMatrix> witness;
  std::uint64_t candidates_examined = 0;
  std::uint64_t search_space = 0;
};

/// Exhaustive search for a matrix with the given zero pattern and rank <= target. Row and column
/// scalings fix a spanning forest of the support to 1; every remaining support entry ranges over
/// the nonzero fractions +-p/q, 1 <= p, q <= bound. Not finding a witness is evidence only.
/// Throws InstanceTooLarge when the space exceeds `max_candidates`.
KapranovSearchResult kapranov_search(const SignPattern& support, std::size_t target_rank,
                                     const FieldTag& field, long bound,
                                     std::uint64_t max_candidates = 10'000'000);

struct WitnessOptions {
  /// Bound for the rational search at rank n - 3; no search when unset.
  std::optional<long> search_bound;
  /// Columns of the cocircuit pattern to search over; all when empty.
  IndexList search_columns;
};

struct WitnessReport {
  Matroid dual_matroid;
  Representation dual_rep;
  CocircuitMatrix comatrix;
  ExactMatrix realization;
  SignPattern pattern;
  std::size_t realization_rank = 0;
  std::size_t term_rank = 0;
  /// term_rank - realization_rank; 3 or more means the pattern lies past the t - 2 bound.
  long gap = 0;
  std::optional<KapranovSearchResult> search;
  std::string search_note;
};

/// From a rank-3 matroid with a representation: dual, dual representation, cocircuit
/// realization of rank n - 3 and its sign pattern, plus optional bounded rational search.
WitnessReport irrationality_witness(const Matroid& m3, const Representation& rep,
                                   const WitnessOptions& options = {});

}  // namespace spr

#endif  // SPR_MATROID_HPP
