#ifndef SPR_REALIZATION_HPP
#define SPR_REALIZATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spr/matrix.hpp"
#include "spr/pattern.hpp"

namespace spr {

/// Rounding scales N = 2^k for k = start_exponent .. max_exponent.
struct RoundingSchedule {
  int start_exponent = 4;
  int max_exponent = 64;
};

enum class Stage { Corank2, Corank1, Generic, DeficitTwo, Padding, Walk, Rationalize, Fallback };
std::string to_string(Stage s);

struct StageRecord {
  Stage stage;
  /// Accepted rounding exponent k (N = 2^k) for stages that round.
  std::optional<int> exponent;
  std::string note;
};

/// Append-only record of the stages a construction went through.
using StageLog = std::vector<StageRecord>;

struct Verdict {
  bool pattern_equal = false;
  bool rank_equal = false;
  bool rational = false;
  bool pass() const { return pattern_equal && rank_equal && rational; }
};

/// Exact comparison of a candidate realization against the matrix it should realize.
Verdict verify_realization(const ExactMatrix& original, const ExactMatrix& candidate);

struct RealizationReport {
  FieldTag input_field;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  TermRank term;
  ExactMatrix output;  // over Q
  StageLog stages;
  Verdict verdict;
};

/// Rational X with the pattern of A and rank n - 2, where n = cols(A) and rank(A) = n - 2.
/// Rounds a normalized kernel basis at increasing scales and solves each row against it.
ExactMatrix corank2_realize(const ExactMatrix& a, const RoundingSchedule& schedule = {},
                            StageLog* log = nullptr);

/// As corank2_realize for rank(A) = n - 1.
ExactMatrix corank1_realize(const ExactMatrix& a, const RoundingSchedule& schedule = {},
                            StageLog* log = nullptr);

/// For C (p x s, rank p-1) and D (r x q, rank q-1): u spans the left kernel of C and v the
/// right kernel of D, so that rank [[W, C], [D, 0]] = rank C + rank D + [u^T W v != 0].
struct BlockCondition {
  Vector u;
  Vector v;
};
BlockCondition block_rank_condition(const ExactMatrix& c, const ExactMatrix& d);

/// Rational M0 with the pattern and rank of M and M0 w = 0 (Right) or w^T M0 = 0 (Left),
/// given a rational annihilating vector w. Needs rank(M) to be one less than the dimension of w.
ExactMatrix rationalize_kernel_constrained(const ExactMatrix& m, const Vector& w, Side side,
                                          const RoundingSchedule& schedule = {},
                                          StageLog* log = nullptr);

/// Rational realization for inputs with rank(A) = term_rank(sign_of(A)) - 2.
ExactMatrix realize_deficit_two(const ExactMatrix& a, const RoundingSchedule& schedule = {},
                              std::uint64_t seed = 0, StageLog* log = nullptr);

/// Same field, same pattern, rank exactly `target`, by swapping entries of X for those of a
/// generic same-pattern matrix one at a time.
ExactMatrix pattern_rank_adjust(const ExactMatrix& x, std::size_t target, std::uint64_t seed = 0,
                                StageLog* log = nullptr);

/// Matrix with pattern S and rank equal to its term rank; entries +-k/256 with 1 <= k <= 2^16.
ExactMatrix generic_realize(const SignPattern& s, const FieldTag& field, std::uint64_t seed = 0);

/// Full pipeline: rational matrix with the sign pattern and rank of A, for any A with
/// rank(A) >= term rank - 2. Throws PreconditionViolated below that bound.
RealizationReport realize(const ExactMatrix& a, const RoundingSchedule& schedule = {},
                          std::uint64_t seed = 0);

/// Message attached to PreconditionViolated when the input rank is below term rank - 2.
extern const char* const kRankBelowBoundMessage;

}  // namespace spr

#endif  // SPR_REALIZATION_HPP
