#include "spr/realization.hpp"

#include <random>
#include <sstream>

namespace spr {

const char* const kRankBelowBoundMessage =
    "rank below t-2: rational realization may not exist (cocircuit-matrix witnesses show it can "
    "fail)";

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Corank2:
      return "corank2";
    case Stage::Corank1:
      return "corank1";
    case Stage::Generic:
      return "generic";
    case Stage::DeficitTwo:
      return "deficit2";
    case Stage::Padding:
      return "padding";
    case Stage::Walk:
      return "walk";
    case Stage::Rationalize:
      return "rationalize";
    case Stage::Fallback:
      return "fallback";
  }
  return "unknown";
}

Verdict verify_realization(const ExactMatrix& original, const ExactMatrix& candidate) {
  Verdict v;
  v.rational = has_rational_entries(candidate);
  if (original.rows() != candidate.rows() || original.cols() != candidate.cols()) return v;
  v.pattern_equal = sign_of(original) == sign_of(candidate);
  v.rank_equal = rank(original) == rank(candidate);
  return v;
}

namespace {

const FieldTag kQ = FieldTag::rationals();

mpz_class scale_for(int exponent) {
  mpz_class n = 1;
  n <<= static_cast<unsigned long>(exponent);
  return n;
}

// floor(N x) / N as an element of Q.
Scalar rounded(const Scalar& x, const mpz_class& n) {
  return Scalar(kQ, mpq_class(floor_scaled(x, n), n));
}

void record(StageLog* log, Stage stage, std::optional<int> exponent, std::string note = {}) {
  if (log) log->push_back({stage, exponent, std::move(note)});
}

void check_schedule(const RoundingSchedule& s) {
  if (s.start_exponent < 0 || s.start_exponent > s.max_exponent) {
    throw PreconditionViolated("rounding schedule needs 0 <= start_exponent <= max_exponent");
  }
}

IndexList iota_list(std::size_t n, std::size_t from = 0) {
  IndexList v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = from + i;
  return v;
}

std::string smallest_magnitude(const std::vector<Scalar>& xs) {
  const Scalar* best = nullptr;
  for (const Scalar& x : xs) {
    if (x.is_zero()) continue;
    if (!best || compare(abs(x), abs(*best)) < 0) best = &x;
  }
  if (!best) return "none";
  std::ostringstream os;
  os << to_string(abs(*best)) << " (~" << approximate(abs(*best)) << ")";
  return os.str();
}

// Shared body of corank1/corank2: rank(A) = n - k with k in {1, 2}.
ExactMatrix kernel_rounding_realize(const ExactMatrix& a, std::size_t k,
                                    const RoundingSchedule& schedule, StageLog* log, Stage stage) {
  check_schedule(schedule);
  const std::size_t m = a.rows(), n = a.cols();
  if (n < k || rank(a) != n - k) {
    throw PreconditionViolated(to_string(stage) + " needs rank equal to column count minus " +
                               std::to_string(k));
  }

  const KernelBasis kb = kernel(a, Side::Right);
  // Kernel matrix B (n x k); normalize its first column to 0/1 by scaling rows of B, i.e.
  // scaling column j of A by B(j,0). Negative factors flip column signs, undone on output.
  std::vector<Vector> b_rows(n, Vector(k, Scalar(a.field())));
  std::vector<Scalar> col_factor(n, Scalar::one(a.field()));
  std::vector<bool> flipped(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < k; ++c) b_rows[j][c] = kb.vectors[c][j];
    const Scalar lead = b_rows[j][0];
    if (lead.is_zero()) continue;
    const Scalar inv = lead.inv();
    for (Scalar& x : b_rows[j]) x *= inv;
    col_factor[j] = lead;
    flipped[j] = sign(lead) == Sign::Minus;
  }
  const ExactMatrix b = ExactMatrix::from_rows(a.field(), b_rows);
  ExactMatrix scaled = a;
  for (std::size_t j = 0; j < n; ++j) scaled = scale_line(scaled, j, Line::Column, col_factor[j]);
  const SignPattern target = sign_of(scaled);

  std::vector<IndexList> support(m);
  std::vector<std::size_t> support_rank(m);
  for (std::size_t i = 0; i < m; ++i) {
    support[i] = target.row_support(i);
    support_rank[i] = rank(b.submatrix(support[i], iota_list(k)));
  }

  for (int e = schedule.start_exponent; e <= schedule.max_exponent; ++e) {
    const mpz_class scale = scale_for(e);
    std::vector<Scalar> c_entries;
    c_entries.reserve(n * k);
    for (const Scalar& x : b.entries()) c_entries.push_back(rounded(x, scale));
    const ExactMatrix c(kQ, n, k, std::move(c_entries));
    if (rank(c) != k) continue;

    bool supports_agree = true;
    for (std::size_t i = 0; i < m && supports_agree; ++i) {
      supports_agree = rank(c.submatrix(support[i], iota_list(k))) == support_rank[i];
    }
    if (!supports_agree) continue;

    std::vector<Scalar> x_entries;
    x_entries.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      const UnknownSplit split = split_unknowns(c, support[i]);
      std::vector<std::optional<Scalar>> free(n);
      for (std::size_t g : split.free) free[g] = rounded(scaled(i, g), scale);
      const Vector x = solve_with_free(c, free, support[i]);
      x_entries.insert(x_entries.end(), x.begin(), x.end());
    }
    const ExactMatrix x(kQ, m, n, std::move(x_entries));
    if (!(sign_of(x) == target) || rank(x) != n - k) continue;
    if (!is_zero_vector((x * c).entries())) {
      throw InternalVerificationFailed("rounded realization is not annihilated by rounded kernel");
    }

    ExactMatrix out = x;
    for (std::size_t j = 0; j < n; ++j) {
      if (flipped[j]) out = scale_line(out, j, Line::Column, Scalar::from_int(kQ, -1));
    }
    record(log, stage, e);
    return out;
  }

  std::vector<Scalar> all = scaled.entries();
  all.insert(all.end(), b.entries().begin(), b.entries().end());
  throw RoundingExhausted(to_string(stage) + ": no accepted rounding up to 2^" +
                          std::to_string(schedule.max_exponent) +
                          "; smallest nonzero magnitude " + smallest_magnitude(all));
}

// Entries of M on the support of its row, rounded at scale N, with one pivot entry per row
// solved so that the row stays orthogonal to w.
ExactMatrix round_against_vector(const ExactMatrix& m, const Vector& w_q,
                                 const std::vector<std::optional<std::size_t>>& pivot,
                                 const mpz_class& scale) {
  std::vector<Scalar> out(m.rows() * m.cols(), Scalar(kQ));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero() || (pivot[i] && *pivot[i] == j)) continue;
      out[i * m.cols() + j] = rounded(m(i, j), scale);
    }
    if (pivot[i]) {
      const std::size_t p = *pivot[i];
      Scalar s(kQ);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j != p) s += out[i * m.cols() + j] * w_q[j];
      }
      out[i * m.cols() + p] = -s / w_q[p];
    }
  }
  return ExactMatrix(kQ, m.rows(), m.cols(), std::move(out));
}

Vector to_rational_vector(const Vector& v) {
  Vector out;
  out.reserve(v.size());
  for (const Scalar& s : v) {
    if (!s.has_rational_value()) throw PreconditionViolated("vector is not rational");
    out.push_back(s.in_field(kQ));
  }
  return out;
}

ExactMatrix to_rationals(const ExactMatrix& a) {
  return a.field().is_rationals() ? a : restrict_to_rationals(a);
}

// Index of a largest-magnitude nonzero coordinate among `candidates`, first on ties.
std::optional<std::size_t> dominant(const std::vector<Scalar>& values, const IndexList& candidates) {
  std::optional<std::size_t> best;
  for (std::size_t c : candidates) {
    if (values[c].is_zero()) continue;
    if (!best || compare(abs(values[c]), abs(values[*best])) > 0) best = c;
  }
  return best;
}

ExactMatrix block(const ExactMatrix& a, std::size_t r0, std::size_t r1, std::size_t c0,
                  std::size_t c1) {
  return a.submatrix(iota_list(r1 - r0, r0), iota_list(c1 - c0, c0));
}

// Case rank(D) <= q - 2: realize D rationally at rank q - 2, fill B and C generically, then walk
// the assembled rank up to p + q - 2.
ExactMatrix low_rank_block_case(const ExactMatrix& b, const ExactMatrix& c, const ExactMatrix& d,
                                const RoundingSchedule& schedule, std::uint64_t seed,
                                StageLog* log) {
  const std::size_t p = b.rows(), q = b.cols();
  const ExactMatrix d_adjusted = pattern_rank_adjust(d, q - 2, seed, log);
  const ExactMatrix d_rational = corank2_realize(d_adjusted, schedule, log);
  const ExactMatrix b_rational = generic_realize(sign_of(b), kQ, seed + 1);
  const ExactMatrix c_rational = generic_realize(sign_of(c), kQ, seed + 2);
  const ExactMatrix assembled = assemble_block(b_rational, c_rational, d_rational);
  return pattern_rank_adjust(assembled, p + q - 2, seed + 3, log);
}

ExactMatrix corank_one_blocks_case(const ExactMatrix& permuted, std::size_t p, std::size_t q,
                                   const RoundingSchedule& schedule, StageLog* log) {
  const std::size_t m = permuted.rows(), n = permuted.cols();
  if (p == 0 || q == 0) throw InternalVerificationFailed("degenerate block reached corank-1 case");
  const ExactMatrix c = block(permuted, 0, p, q, n);
  const ExactMatrix d = block(permuted, p, m, 0, q);
  const BlockCondition cond = block_rank_condition(c, d);

  // Positive line scalings by |u_i| and |v_j| turn the dependency coefficients into signs.
  ExactMatrix scaled = permuted;
  Vector u_sign(p, Scalar(permuted.field())), v_sign(q, Scalar(permuted.field()));
  for (std::size_t i = 0; i < p; ++i) {
    const Sign s = sign(cond.u[i]);
    if (s == Sign::Zero) continue;
    scaled = scale_line(scaled, i, Line::Row, abs(cond.u[i]));
    u_sign[i] = Scalar::from_int(permuted.field(), static_cast<int>(s));
  }
  for (std::size_t j = 0; j < q; ++j) {
    const Sign s = sign(cond.v[j]);
    if (s == Sign::Zero) continue;
    scaled = scale_line(scaled, j, Line::Column, abs(cond.v[j]));
    v_sign[j] = Scalar::from_int(permuted.field(), static_cast<int>(s));
  }
  const ExactMatrix b_s = block(scaled, 0, p, 0, q);
  const ExactMatrix c_s = block(scaled, 0, p, q, n);
  const ExactMatrix d_s = block(scaled, p, m, 0, q);

  const ExactMatrix c_rat = rationalize_kernel_constrained(c_s, u_sign, Side::Left, schedule, log);
  const ExactMatrix d_rat = rationalize_kernel_constrained(d_s, v_sign, Side::Right, schedule, log);
  const BlockCondition rat = block_rank_condition(c_rat, d_rat);

  // Round B onto the rational hyperplane u^T W v = 0, solving one support entry exactly.
  std::optional<std::pair<std::size_t, std::size_t>> pivot;
  Scalar best_weight(kQ);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      if (b_s(i, j).is_zero()) continue;
      const Scalar weight = abs(rat.u[i] * rat.v[j]);
      if (!weight.is_zero() && (!pivot || compare(weight, best_weight) > 0)) {
        pivot = {i, j};
        best_weight = weight;
      }
    }
  }
  const SignPattern target = sign_of(permuted);
  for (int e = schedule.start_exponent; e <= schedule.max_exponent; ++e) {
    const mpz_class scale = scale_for(e);
    std::vector<Scalar> w(p * q, Scalar(kQ));
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        if (!b_s(i, j).is_zero() && !(pivot && pivot->first == i && pivot->second == j)) {
          w[i * q + j] = rounded(b_s(i, j), scale);
        }
      }
    }
    if (pivot) {
      Scalar s(kQ);
      for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < q; ++j) s += rat.u[i] * w[i * q + j] * rat.v[j];
      }
      const auto [pi, pj] = *pivot;
      w[pi * q + pj] = -s / (rat.u[pi] * rat.v[pj]);
    }
    const ExactMatrix x = assemble_block(ExactMatrix(kQ, p, q, std::move(w)), c_rat, d_rat);
    if (sign_of(x) == target && rank(x) == p + q - 2) {
      record(log, Stage::DeficitTwo, e, "hyperplane rounding of the covered block");
      return x;
    }
  }
  throw RoundingExhausted("deficit2: covered block rounding not accepted up to 2^" +
                          std::to_string(schedule.max_exponent) +
                          "; smallest nonzero magnitude " + smallest_magnitude(b_s.entries()));
}

}  // namespace

ExactMatrix corank2_realize(const ExactMatrix& a, const RoundingSchedule& schedule,
                            StageLog* log) {
  return kernel_rounding_realize(a, 2, schedule, log, Stage::Corank2);
}

ExactMatrix corank1_realize(const ExactMatrix& a, const RoundingSchedule& schedule,
                            StageLog* log) {
  return kernel_rounding_realize(a, 1, schedule, log, Stage::Corank1);
}

BlockCondition block_rank_condition(const ExactMatrix& c, const ExactMatrix& d) {
  if (c.rows() == 0 || rank(c) + 1 != c.rows()) {
    throw PreconditionViolated("block_rank_condition: C must have rank rows(C) - 1");
  }
  if (d.cols() == 0 || rank(d) + 1 != d.cols()) {
    throw PreconditionViolated("block_rank_condition: D must have rank cols(D) - 1");
  }
  return {kernel(c, Side::Left).vectors.front(), kernel(d, Side::Right).vectors.front()};
}

ExactMatrix rationalize_kernel_constrained(const ExactMatrix& m, const Vector& w, Side side,
                                          const RoundingSchedule& schedule, StageLog* log) {
  if (side == Side::Left) {
    return rationalize_kernel_constrained(m.transpose(), w, Side::Right, schedule, log)
        .transpose();
  }
  check_schedule(schedule);
  if (w.size() != m.cols()) throw ShapeMismatch("annihilating vector length differs from cols");
  const Vector w_q = to_rational_vector(w);
  if (is_zero_vector(w_q)) throw PreconditionViolated("annihilating vector is zero");
  Vector w_m;
  for (const Scalar& x : w_q) w_m.push_back(x.in_field(m.field()));
  if (!is_zero_vector(m * w_m)) {
    throw PreconditionViolated("vector does not annihilate the matrix");
  }
  if (has_rational_entries(m)) return to_rationals(m);

  const std::size_t target_rank = rank(m);
  if (target_rank + 1 != m.cols()) {
    throw PreconditionViolated("rationalize_kernel_constrained needs rank cols - 1");
  }
  const SignPattern target = sign_of(m);
  std::vector<std::optional<std::size_t>> pivot(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) pivot[i] = dominant(w_q, target.row_support(i));

  for (int e = schedule.start_exponent; e <= schedule.max_exponent; ++e) {
    const ExactMatrix x = round_against_vector(m, w_q, pivot, scale_for(e));
    if (sign_of(x) == target && rank(x) == target_rank) {
      if (!is_zero_vector(x * w_q)) {
        throw InternalVerificationFailed("rationalized matrix lost its kernel vector");
      }
      record(log, Stage::Rationalize, e);
      return x;
    }
  }
  throw RoundingExhausted("rationalize: no accepted rounding up to 2^" +
                          std::to_string(schedule.max_exponent) + "; smallest nonzero magnitude " +
                          smallest_magnitude(m.entries()));
}

ExactMatrix generic_realize(const SignPattern& s, const FieldTag& field, std::uint64_t seed) {
  const std::size_t t = term_rank(s).t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> numerator(1, 1L << 16);
  const mpz_class den = 256;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Scalar> e;
    e.reserve(s.rows() * s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        const Sign sg = s(i, j);
        if (sg == Sign::Zero) {
          e.emplace_back(field);
        } else {
          e.emplace_back(field, mpq_class(static_cast<int>(sg) * numerator(rng), den));
        }
      }
    }
    ExactMatrix g(field, s.rows(), s.cols(), std::move(e));
    if (rank(g) == t) return g;
  }
  throw SamplingExhausted("generic_realize: no full term rank sample in 100 draws");
}

ExactMatrix pattern_rank_adjust(const ExactMatrix& x, std::size_t target, std::uint64_t seed,
                                StageLog* log) {
  const SignPattern s = sign_of(x);
  const std::size_t t = term_rank(s).t;
  const std::size_t r = rank(x);
  if (target < r || target > t) {
    throw PreconditionViolated("pattern_rank_adjust: target " + std::to_string(target) +
                               " outside [" + std::to_string(r) + ", " + std::to_string(t) + "]");
  }
  if (target == r) return x;

  const ExactMatrix g = generic_realize(s, x.field(), seed);
  ExactMatrix current = x;
  std::size_t steps = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!s.nonzero(i, j) || current(i, j) == g(i, j)) continue;
      current = current.with_entry(i, j, g(i, j));
      ++steps;
      if (rank(current) == target) {
        record(log, Stage::Walk, std::nullopt,
               "rank " + std::to_string(r) + " -> " + std::to_string(target) + " in " +
                   std::to_string(steps) + " replacements");
        return current;
      }
    }
  }
  throw InternalVerificationFailed("rank walk ended without reaching the target");
}

ExactMatrix realize_deficit_two(const ExactMatrix& a, const RoundingSchedule& schedule,
                              std::uint64_t seed, StageLog* log) {
  check_schedule(schedule);
  const SignPattern s = sign_of(a);
  const std::size_t r = rank(a);
  const std::size_t t = term_rank(s).t;
  if (r + 2 != t) {
    throw PreconditionViolated("realize_deficit_two needs rank = term rank - 2 (rank " +
                               std::to_string(r) + ", term rank " + std::to_string(t) + ")");
  }

  const BlockDecomposition bd = block_decompose(s);
  const ExactMatrix permuted = a.permuted(bd.row_perm, bd.col_perm);
  const std::size_t m = a.rows(), n = a.cols(), p = bd.p, q = bd.q;
  const ExactMatrix b = block(permuted, 0, p, 0, q);
  const ExactMatrix c = block(permuted, 0, p, q, n);
  const ExactMatrix d = block(permuted, p, m, 0, q);

  ExactMatrix x;
  if (rank(d) + 1 < q) {
    record(log, Stage::DeficitTwo, std::nullopt, "low-rank D block");
    x = low_rank_block_case(b, c, d, schedule, seed, log);
  } else if (rank(c) + 1 < p) {
    record(log, Stage::DeficitTwo, std::nullopt, "low-rank C block (transposed)");
    x = low_rank_block_case(b.transpose(), d.transpose(), c.transpose(), schedule, seed, log)
            .transpose();
  } else {
    record(log, Stage::DeficitTwo, std::nullopt, "corank-one C and D blocks");
    x = corank_one_blocks_case(permuted, p, q, schedule, log);
  }

  const ExactMatrix out = x.unpermuted(bd.row_perm, bd.col_perm);
  if (!verify_realization(a, out).pass()) {
    throw InternalVerificationFailed("deficit2 output failed verification");
  }
  return out;
}

namespace {

ExactMatrix with_duplicate_row(const ExactMatrix& a, std::size_t i) {
  IndexList rows = iota_list(a.rows());
  rows.push_back(i);
  return a.submatrix(rows, iota_list(a.cols()));
}

// Essential submatrix route for inputs whose nonzero lines leave no room for padding.
ExactMatrix essential_realize(const ExactMatrix& a, std::size_t r, const RoundingSchedule& schedule,
                              std::uint64_t seed, StageLog* log) {
  const SignPattern s = sign_of(a);
  IndexList rows, cols;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!s.row_support(i).empty()) rows.push_back(i);
  }
  const SignPattern st = s.transpose();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (!st.row_support(j).empty()) cols.push_back(j);
  }
  const ExactMatrix core = a.submatrix(rows, cols);
  ExactMatrix core_x;
  if (r + 1 == core.cols()) {
    core_x = corank1_realize(core, schedule, log);
  } else if (r + 1 == core.rows()) {
    core_x = corank1_realize(core.transpose(), schedule, log).transpose();
  } else {
    core_x = pattern_rank_adjust(generic_realize(sign_of(core), kQ, seed), r, seed, log);
  }
  record(log, Stage::Fallback, std::nullopt,
         "essential " + std::to_string(core.rows()) + "x" + std::to_string(core.cols()) + " core");
  std::vector<Scalar> e(a.rows() * a.cols(), Scalar(kQ));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) e[rows[i] * a.cols() + cols[j]] = core_x(i, j);
  }
  return ExactMatrix(kQ, a.rows(), a.cols(), std::move(e));
}

}  // namespace

RealizationReport realize(const ExactMatrix& a, const RoundingSchedule& schedule,
                          std::uint64_t seed) {
  check_schedule(schedule);
  RealizationReport rep;
  rep.input_field = a.field();
  rep.rows = a.rows();
  rep.cols = a.cols();
  const SignPattern s = sign_of(a);
  rep.rank = rank(a);
  rep.term = term_rank(s);
  const std::size_t r = rep.rank, t = rep.term.t;

  if (r + 2 < t) {
    throw PreconditionViolated(std::string(kRankBelowBoundMessage) + " (rank " +
                               std::to_string(r) + ", term rank " + std::to_string(t) + ")");
  }

  if (t == 0) {
    rep.output = ExactMatrix(kQ, a.rows(), a.cols());
    record(&rep.stages, Stage::Generic, std::nullopt, "zero matrix");
  } else if (r == t) {
    rep.output = generic_realize(s, kQ, seed);
    record(&rep.stages, Stage::Generic, std::nullopt, "full term rank");
  } else if (r + 2 == t) {
    rep.output = realize_deficit_two(a, schedule, seed, &rep.stages);
  } else {
    // r = t - 1: one duplicated line raising the term rank brings the input to t' = r + 2.
    std::optional<ExactMatrix> padded_out;
    for (std::size_t i = 0; i < a.rows() && !padded_out; ++i) {
      const ExactMatrix padded = with_duplicate_row(a, i);
      if (term_rank(sign_of(padded)).t != t + 1) continue;
      record(&rep.stages, Stage::Padding, std::nullopt, "duplicated row " + std::to_string(i));
      const ExactMatrix x = realize_deficit_two(padded, schedule, seed, &rep.stages);
      padded_out = x.submatrix(iota_list(a.rows()), iota_list(a.cols()));
    }
    for (std::size_t j = 0; j < a.cols() && !padded_out; ++j) {
      const ExactMatrix padded = with_duplicate_row(a.transpose(), j);
      if (term_rank(sign_of(padded)).t != t + 1) continue;
      record(&rep.stages, Stage::Padding, std::nullopt, "duplicated column " + std::to_string(j));
      const ExactMatrix x = realize_deficit_two(padded, schedule, seed, &rep.stages);
      padded_out = x.submatrix(iota_list(a.cols()), iota_list(a.rows())).transpose();
    }
    if (padded_out) {
      rep.output = pattern_rank_adjust(*padded_out, r, seed, &rep.stages);
    } else {
      rep.output = essential_realize(a, r, schedule, seed, &rep.stages);
    }
  }

  rep.verdict = verify_realization(a, rep.output);
  if (!rep.verdict.pass()) throw InternalVerificationFailed("realization failed verification");
  return rep;
}

}  // namespace spr
