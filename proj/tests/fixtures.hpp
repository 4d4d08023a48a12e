#ifndef SPR_TESTS_FIXTURES_HPP
#define SPR_TESTS_FIXTURES_HPP

// Seeded fixture generators and independent oracles shared by the unit tests and the
// acceptance binary.

#include <gmp.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "spr/matrix.hpp"
#include "spr/pattern.hpp"
#include "spr/realization.hpp"

namespace spr::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// a + b sqrt d with integer a, b in [-range, range]; zero with probability zero_prob.
inline Scalar random_scalar(Rng& rng, const FieldTag& field, long range, double zero_prob) {
  if (coin(rng, zero_prob)) return Scalar(field);
  while (true) {
    mpq_class a(uniform(rng, -range, range));
    mpq_class b = field.is_rationals() ? mpq_class(0) : mpq_class(uniform(rng, -range, range));
    Scalar x(field, a, b);
    if (!x.is_zero()) return x;
  }
}

inline ExactMatrix random_matrix(Rng& rng, const FieldTag& field, std::size_t m, std::size_t n,
                                 long range, double zero_prob) {
  std::vector<Scalar> e;
  e.reserve(m * n);
  for (std::size_t k = 0; k < m * n; ++k) e.push_back(random_scalar(rng, field, range, zero_prob));
  return ExactMatrix(field, m, n, std::move(e));
}

/// Product of random m x k and k x n factors.
inline ExactMatrix random_product(Rng& rng, const FieldTag& field, std::size_t m, std::size_t n,
                                  std::size_t k, double zero_prob) {
  if (k == 0) return ExactMatrix(field, m, n);
  return random_matrix(rng, field, m, k, 3, zero_prob) * random_matrix(rng, field, k, n, 3, zero_prob);
}

inline IndexList random_permutation(Rng& rng, std::size_t n) {
  IndexList p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline bool has_irrational_entry(const ExactMatrix& a) { return !has_rational_entries(a); }

/// m x n matrix of rank exactly rk and term rank exactly t built from a block form
/// [[B, C], [D, 0]] and a random line permutation. Needs t - 2 <= rk <= t <= min(m, n).
/// Deficit-two inputs with p, q >= 1 alternate between the hyperplane case (C, D of coranks one,
/// B on u^T B v = 0) and the low-rank D case. Returns nullopt if sampling missed the target.
inline std::optional<ExactMatrix> block_fixture(Rng& rng, const FieldTag& field, std::size_t m,
                                                std::size_t n, std::size_t t, std::size_t rk) {
  const std::size_t p = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(t)));
  const std::size_t q = t - p;
  const std::size_t r = m - p, s = n - q;
  if (r < q || s < p) return std::nullopt;
  const std::size_t deficit = t - rk;
  std::size_t rank_c = p, rank_d = q;
  bool hyperplane = false;
  if (deficit == 2) {
    if (p >= 1 && q >= 1 && coin(rng, 0.6)) {
      rank_c = p - 1;
      rank_d = q - 1;
      hyperplane = true;
    } else if (q >= 2 && (p == 0 || coin(rng, 0.5))) {
      rank_d = q - 2;
    } else if (p >= 2) {
      rank_c = p - 2;
    } else {
      return std::nullopt;
    }
  } else if (deficit == 1) {
    if (q >= 1 && (p == 0 || coin(rng, 0.5))) {
      rank_d = q - 1;
    } else if (p >= 1) {
      rank_c = p - 1;
    } else {
      return std::nullopt;
    }
  }
  const double zp = 0.3;
  ExactMatrix c = random_product(rng, field, p, s, rank_c, zp);
  ExactMatrix d = random_product(rng, field, r, q, rank_d, zp);
  ExactMatrix b = random_matrix(rng, field, p, q, 3, zp);
  if (rank(c) != rank_c || rank(d) != rank_d) return std::nullopt;
  if (hyperplane) {
    const BlockCondition cond = block_rank_condition(c, d);
    Scalar total(field);
    std::size_t pi = p, pj = q;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        const Scalar w = cond.u[i] * cond.v[j];
        if (w.is_zero()) continue;
        if (pi == p && !b(i, j).is_zero()) {
          pi = i;
          pj = j;
          continue;
        }
        total += w * b(i, j);
      }
    }
    if (pi == p) return std::nullopt;
    const Scalar fix = -total / (cond.u[pi] * cond.v[pj]);
    if (fix.is_zero()) return std::nullopt;
    b = b.with_entry(pi, pj, fix);
  }
  ExactMatrix a = assemble_block(b, c, d);
  a = a.permuted(random_permutation(rng, m), random_permutation(rng, n));
  if (term_rank(sign_of(a)).t != t || rank(a) != rk) return std::nullopt;
  return a;
}

/// Rank n - 2 matrix with m rows (n - 2 <= m), from sparse random factors.
inline std::optional<ExactMatrix> corank2_fixture(Rng& rng, const FieldTag& field, std::size_t m,
                                                  std::size_t n) {
  ExactMatrix a = random_product(rng, field, m, n, n - 2, 0.35);
  if (rank(a) != n - 2) return std::nullopt;
  return a;
}

// ---- modular rank oracle -------------------------------------------------------------------

/// Random primes just below 2^61.
inline std::vector<std::uint64_t> random_primes(Rng& rng, std::size_t count) {
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    mpz_class x(static_cast<unsigned long>((rng() >> 3) | (std::uint64_t{1} << 60)));
    mpz_class pr;
    mpz_nextprime(pr.get_mpz_t(), x.get_mpz_t());
    if (pr >= mpz_class("2305843009213693951")) continue;
    out.push_back(pr.get_ui());
  }
  return out;
}

/// Rank modulo p of an integer matrix given row-major.
inline std::size_t rank_mod(const std::vector<mpz_class>& a, std::size_t m, std::size_t n,
                            std::uint64_t p) {
  std::vector<std::uint64_t> g(m * n);
  for (std::size_t k = 0; k < g.size(); ++k) {
    mpz_class r = a[k] % p;
    if (r < 0) r += p;
    g[k] = r.get_ui();
  }
  auto mul = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  auto power = [&](std::uint64_t x, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, x = mul(x, x)) {
      if (e & 1) r = mul(r, x);
    }
    return r;
  };
  std::size_t rk = 0;
  for (std::size_t c = 0; c < n && rk < m; ++c) {
    std::size_t piv = rk;
    while (piv < m && g[piv * n + c] == 0) ++piv;
    if (piv == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(g[rk * n + j], g[piv * n + j]);
    const std::uint64_t inv = power(g[rk * n + c], p - 2);
    for (std::size_t i = rk + 1; i < m; ++i) {
      const std::uint64_t f = mul(g[i * n + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        const std::uint64_t s = mul(f, g[rk * n + j]);
        g[i * n + j] = g[i * n + j] >= s ? g[i * n + j] - s : g[i * n + j] + p - s;
      }
    }
    ++rk;
  }
  return rk;
}

/// Rank of a rational matrix from elimination modulo the given primes (maximum over primes).
/// Denominators are cleared row by row first.
inline std::size_t modular_rank(const ExactMatrix& a, const std::vector<std::uint64_t>& primes) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<mpz_class> ints(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).rational_part().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      const mpq_class v = a(i, j).rational_part() * l;
      ints[i * n + j] = v.get_num();
    }
  }
  std::size_t best = 0;
  for (std::uint64_t p : primes) best = std::max(best, rank_mod(ints, m, n, p));
  return best;
}

/// Q-linear image of a matrix over Q(sqrt d): each entry a + b sqrt d becomes [[a, b d], [b, a]].
/// The rank over Q of the image is twice the rank over Q(sqrt d).
inline ExactMatrix regular_representation(const ExactMatrix& a) {
  const FieldTag q = FieldTag::rationals();
  const mpq_class d(a.field().radicand());
  std::vector<Scalar> e(4 * a.rows() * a.cols(), Scalar(q));
  const std::size_t n2 = 2 * a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const mpq_class& x = a(i, j).rational_part();
      const mpq_class& y = a(i, j).radical_part();
      e[(2 * i) * n2 + 2 * j] = Scalar(q, x);
      e[(2 * i) * n2 + 2 * j + 1] = Scalar(q, y * d);
      e[(2 * i + 1) * n2 + 2 * j] = Scalar(q, y);
      e[(2 * i + 1) * n2 + 2 * j + 1] = Scalar(q, x);
    }
  }
  return ExactMatrix(q, 2 * a.rows(), n2, std::move(e));
}

/// Rank by an oracle that shares no code with the library's elimination.
inline std::size_t oracle_rank(const ExactMatrix& a, const std::vector<std::uint64_t>& primes) {
  if (a.field().is_rationals()) return modular_rank(a, primes);
  return modular_rank(regular_representation(a), primes) / 2;
}

// ---- term rank oracle ----------------------------------------------------------------------

/// Minimum line cover by enumerating covered row sets (n_rows <= 20).
inline std::size_t brute_cover_size(const SignPattern& s) {
  const std::size_t m = s.rows(), n = s.cols();
  std::size_t best = m + n;
  for (std::uint32_t rows = 0; rows < (1u << m); ++rows) {
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rows >> i & 1u) && s.nonzero(i, j)) {
          ++cols;
          break;
        }
      }
    }
    best = std::min(best, static_cast<std::size_t>(__builtin_popcount(rows)) + cols);
  }
  return best;
}

/// Maximum matching by exhaustive assignment (small patterns only).
inline std::size_t brute_matching_size(const SignPattern& s, std::size_t row = 0,
                                       std::uint32_t used = 0) {
  if (row == s.rows()) return 0;
  std::size_t best = brute_matching_size(s, row + 1, used);
  for (std::size_t j = 0; j < s.cols(); ++j) {
    if (s.nonzero(row, j) && !(used >> j & 1u)) {
      best = std::max(best, 1 + brute_matching_size(s, row + 1, used | (1u << j)));
    }
  }
  return best;
}

inline SignPattern random_pattern(Rng& rng, std::size_t m, std::size_t n, double zero_prob) {
  std::vector<Sign> v;
  for (std::size_t k = 0; k < m * n; ++k) {
    v.push_back(coin(rng, zero_prob) ? Sign::Zero : (coin(rng, 0.5) ? Sign::Plus : Sign::Minus));
  }
  return SignPattern(m, n, std::move(v));
}

}  // namespace spr::testing

#endif  // SPR_TESTS_FIXTURES_HPP
