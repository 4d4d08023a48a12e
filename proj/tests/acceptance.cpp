// Acceptance suite: one PASS/FAIL line per criterion. Run with no arguments for all criteria or
// with criterion numbers to select some. Exit status is nonzero if any selected criterion fails.

#include <mpfr.h>
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "spr/errors.hpp"
#include "spr/json_io.hpp"
#include "spr/matroid.hpp"
#include "spr/realization.hpp"

using namespace spr;
using namespace spr::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

const std::vector<std::uint64_t>& primes() {
  static const std::vector<std::uint64_t> p = [] {
    Rng rng(20240611);
    return random_primes(rng, 3);
  }();
  return p;
}

/// Exact, independent check that x realizes a: pattern, rank (modular oracle) and field.
bool realizes(const ExactMatrix& a, const ExactMatrix& x) {
  return x.field().is_rationals() && sign_of(x) == sign_of(a) &&
         oracle_rank(x, primes()) == oracle_rank(a, primes());
}

// 1. End-to-end pipeline on engineered inputs of rank t-2, t-1, t.
Outcome criterion1() {
  Rng rng(1001);
  std::vector<double> times;
  std::size_t per_rank[3] = {0, 0, 0};
  std::map<std::string, std::size_t> stage_counts;
  const FieldTag fields[2] = {FieldTag::quadratic(2), FieldTag::quadratic(5)};
  for (std::size_t k = 0; k < 200; ++k) {
    const FieldTag& f = fields[k % 2];
    const std::size_t deficit = (k / 2) % 3;
    std::optional<ExactMatrix> a;
    while (!a) {
      const std::size_t m = uniform(rng, 2, 8), n = uniform(rng, 2, 8);
      const std::size_t t = uniform(rng, std::max<long>(2, deficit), std::min(m, n));
      a = block_fixture(rng, f, m, n, t, t - deficit);
      if (a && !has_irrational_entry(*a)) a.reset();
    }
    const auto t0 = Clock::now();
    RealizationReport rep;
    try {
      rep = realize(*a, {}, k);
    } catch (const Error& e) {
      return fail("fixture " + std::to_string(k) + " threw: " + e.what());
    }
    times.push_back(seconds_since(t0));
    if (!realizes(*a, rep.output)) return fail("fixture " + std::to_string(k) + " not realized");
    ++per_rank[deficit];
    for (const StageRecord& st : rep.stages) ++stage_counts[to_string(st.stage)];
  }
  std::sort(times.begin(), times.end());
  const double median = (times[99] + times[100]) / 2, worst = times.back();
  std::ostringstream os;
  os << "200/200 realized (t: " << per_rank[0] << ", t-1: " << per_rank[1]
     << ", t-2: " << per_rank[2] << "), median " << median << " s, max " << worst << " s; stages";
  for (const auto& [name, count] : stage_counts) os << ' ' << name << '=' << count;
  if (median >= 1.0 || worst > 30.0) return fail(os.str() + " exceeds time limits");
  return {true, os.str()};
}

// 2. Kernel rounding at corank two, and schedule idempotence.
Outcome criterion2() {
  Rng rng(2002);
  std::size_t done = 0;
  int max_k = 0;
  while (done < 100) {
    const FieldTag f = FieldTag::quadratic(done % 2 ? 5 : 2);
    const std::size_t n = uniform(rng, 3, 8);
    const std::size_t m = uniform(rng, n - 2, 8);
    auto a = corank2_fixture(rng, f, m, n);
    if (!a || !has_irrational_entry(*a)) continue;
    StageLog log;
    const ExactMatrix x = corank2_realize(*a, {}, &log);
    if (!realizes(*a, x)) return fail("fixture " + std::to_string(done) + " failed verification");
    if (log.empty() || !log.back().exponent) return fail("no accepting exponent recorded");
    const int k = *log.back().exponent;
    max_k = std::max(max_k, k);
    StageLog again;
    const ExactMatrix y = corank2_realize(*a, {k, k}, &again);
    if (!realizes(*a, y) || !again.back().exponent || *again.back().exponent != k) {
      return fail("re-run from exponent " + std::to_string(k) + " did not accept immediately");
    }
    ++done;
  }
  return {true, "100/100 verified; re-run from the accepting exponent accepts at once (max k = " +
                    std::to_string(max_k) + ")"};
}

// 3. Block rank formula against an independent rank oracle.
Outcome criterion3() {
  Rng rng(3003);
  std::size_t mismatches = 0, zero_cases = 0, total = 0;
  const FieldTag fields[3] = {FieldTag::rationals(), FieldTag::quadratic(2),
                              FieldTag::quadratic(5)};
  for (const FieldTag& f : fields) {
    std::size_t count = 0;
    while (count < 500) {
      const std::size_t p = uniform(rng, 1, 5), q = uniform(rng, 1, 5);
      const std::size_t s = uniform(rng, std::max<long>(1, p - 1), 5);
      const std::size_t r = uniform(rng, std::max<long>(1, q - 1), 5);
      const ExactMatrix c = random_product(rng, f, p, s, p - 1, 0.2);
      const ExactMatrix d = random_product(rng, f, r, q, q - 1, 0.2);
      if (rank(c) != p - 1 || rank(d) != q - 1) continue;
      const BlockCondition cond = block_rank_condition(c, d);
      ExactMatrix w = random_matrix(rng, f, p, q, 4, 0.2);
      if (coin(rng, 0.5)) {
        // Push W onto the hyperplane u^T W v = 0 through one entry.
        for (std::size_t i = 0, done = 0; i < p && !done; ++i) {
          for (std::size_t j = 0; j < q && !done; ++j) {
            const Scalar uv = cond.u[i] * cond.v[j];
            if (uv.is_zero()) continue;
            const Scalar val = dot(left_multiply(cond.u, w), cond.v);
            w = w.with_entry(i, j, w(i, j) - val / uv);
            done = 1;
          }
        }
      }
      const bool on = dot(left_multiply(cond.u, w), cond.v).is_zero();
      zero_cases += on;
      const std::size_t formula = (p - 1) + (q - 1) + (on ? 0 : 1);
      if (oracle_rank(assemble_block(w, c, d), primes()) != formula) ++mismatches;
      ++count;
      ++total;
    }
  }
  std::ostringstream os;
  os << total << " triples over Q, Q(sqrt 2), Q(sqrt 5), " << zero_cases
     << " on the hyperplane, " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

bool certificates_ok(const SignPattern& s, const TermRank& tr) {
  return is_matching(s, tr.matching) && is_cover(s, tr.cover) &&
         tr.matching.edges.size() == tr.t && tr.cover.size() == tr.t;
}

// 4. Konig duality, exhaustive at 3x3 and random up to 8x8.
Outcome criterion4() {
  const auto t0 = Clock::now();
  for (std::uint32_t code = 0; code < 19683; ++code) {
    std::vector<Sign> v;
    for (std::uint32_t c = code, k = 0; k < 9; ++k, c /= 3) v.push_back(static_cast<Sign>(int(c % 3) - 1));
    const SignPattern s(3, 3, v);
    const TermRank tr = term_rank(s);
    if (!certificates_ok(s, tr) || tr.t != brute_cover_size(s) || tr.t != brute_matching_size(s)) {
      return fail("3x3 pattern " + std::to_string(code) + " disagrees");
    }
  }
  Rng rng(4004);
  for (int k = 0; k < 1000; ++k) {
    const SignPattern s = random_pattern(rng, uniform(rng, 1, 8), uniform(rng, 1, 8),
                                         std::uniform_real_distribution<double>(0.2, 0.9)(rng));
    const TermRank tr = term_rank(s);
    if (!certificates_ok(s, tr) || tr.t != brute_cover_size(s)) {
      return fail("random pattern " + std::to_string(k) + " disagrees");
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "19683 exhaustive + 1000 random patterns agree with brute-force covers, " << secs << " s";
  if (secs >= 60) return fail(os.str() + " (too slow)");
  return {true, os.str()};
}

// 5. Rank interpolation hits every target.
Outcome criterion5() {
  Rng rng(5005);
  std::size_t hits = 0, full_range = 0;
  for (int k = 0; k < 100; ++k) {
    const FieldTag f = k % 3 == 0 ? FieldTag::quadratic(3) : FieldTag::rationals();
    const std::size_t start_rank = k < 60 ? 1 : uniform(rng, 2, 3);
    ExactMatrix x;
    do {
      x = random_product(rng, f, uniform(rng, 2, 7), uniform(rng, 2, 7), start_rank, 0.3);
    } while (rank(x) != start_rank);
    const SignPattern s = sign_of(x);
    const std::size_t t = term_rank(s).t;
    for (std::size_t h = start_rank; h <= t; ++h) {
      const ExactMatrix y = pattern_rank_adjust(x, h, k);
      if (!(y.field() == f) || sign_of(y) != s || oracle_rank(y, primes()) != h) {
        return fail("pattern " + std::to_string(k) + " missed target " + std::to_string(h));
      }
      ++hits;
    }
    full_range += start_rank == 1;
  }
  return {true, "100 patterns, " + std::to_string(hits) + " targets hit exactly (" +
                    std::to_string(full_range) + " patterns over the full range 1..t)"};
}

std::vector<long> squarefree_radicands() { return {2, 3, 5, 6, 7, 10, 11, 13, 14, 15}; }

mpq_class random_rational(Rng& rng, long bound) {
  mpq_class q(uniform(rng, -bound, bound), uniform(rng, 1, bound));
  q.canonicalize();
  return q;
}

int mpfr_sign_of(const Scalar& x, mpfr_t tmp, mpfr_t root) {
  mpfr_set_si(root, x.field().radicand(), MPFR_RNDN);
  mpfr_sqrt(root, root, MPFR_RNDN);
  mpfr_mul_q(root, root, x.radical_part().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(tmp, x.rational_part().get_mpq_t(), MPFR_RNDN);
  mpfr_add(tmp, tmp, root, MPFR_RNDN);
  return mpfr_sgn(tmp);
}

// 6. Exact arithmetic against floating and modular oracles.
Outcome criterion6() {
  Rng rng(6006);
  mpfr_t tmp, root, lo;
  mpfr_inits2(200, tmp, root, lo, static_cast<mpfr_ptr>(nullptr));
  const auto rads = squarefree_radicands();
  std::size_t sign_checks = 0;
  for (int k = 0; k < 10000; ++k) {
    const FieldTag f = FieldTag::quadratic(rads[k % rads.size()]);
    const mpq_class b = random_rational(rng, 1000);
    mpq_class a = random_rational(rng, 1000);
    if (k % 2) {
      // a close to -b sqrt d, to within 2^-e.
      const long e = uniform(rng, 4, 60);
      mpfr_set_si(root, f.radicand(), MPFR_RNDN);
      mpfr_sqrt(root, root, MPFR_RNDN);
      mpfr_mul_q(root, root, b.get_mpq_t(), MPFR_RNDN);
      mpfr_mul_2si(root, root, e, MPFR_RNDN);
      mpz_class z;
      mpfr_get_z(z.get_mpz_t(), root, MPFR_RNDN);
      a = -mpq_class(z) / (mpz_class(1) << e);
      a.canonicalize();
    }
    const Scalar x(f, a, b);
    const Scalar y(f, random_rational(rng, 50), random_rational(rng, 50));
    for (const Scalar& v : {x, x * y, x + y}) {
      if (static_cast<int>(sign(v)) != mpfr_sign_of(v, tmp, root)) {
        mpfr_clears(tmp, root, lo, static_cast<mpfr_ptr>(nullptr));
        return fail("sign disagrees with the 200-bit oracle on " + to_string(v));
      }
      ++sign_checks;
    }
    if (sign(x * y) != sign(x) * sign(y)) return fail("sign is not multiplicative");
  }
  for (int k = 0; k < 10000; ++k) {
    const FieldTag f = FieldTag::quadratic(rads[k % rads.size()]);
    const Scalar x(f, random_rational(rng, 1000), random_rational(rng, 1000));
    const mpz_class n(uniform(rng, 1, 1L << 40));
    const mpz_class fl = floor_scaled(x, n);
    const Scalar nx = Scalar(f, mpq_class(n)) * x;
    if (sign(nx - Scalar(f, mpq_class(fl))) == Sign::Minus ||
        sign(nx - Scalar(f, mpq_class(fl + 1))) != Sign::Minus) {
      mpfr_clears(tmp, root, lo, static_cast<mpfr_ptr>(nullptr));
      return fail("floor_scaled bracket fails for " + to_string(x));
    }
  }
  mpfr_clears(tmp, root, lo, static_cast<mpfr_ptr>(nullptr));
  std::size_t rank_checks = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = uniform(rng, 1, 8), n = uniform(rng, 1, 8);
    const std::size_t inner = uniform(rng, 1, std::min(m, n));
    std::vector<Scalar> e1, e2;
    const FieldTag q = FieldTag::rationals();
    for (std::size_t i = 0; i < m * inner; ++i) e1.push_back(Scalar(q, coin(rng, 0.2) ? 0 : random_rational(rng, 1000)));
    for (std::size_t i = 0; i < inner * n; ++i) e2.push_back(Scalar(q, coin(rng, 0.2) ? 0 : random_rational(rng, 1000)));
    const ExactMatrix a = k % 2 ? ExactMatrix(q, m, inner, e1) * ExactMatrix(q, inner, n, e2)
                                : ExactMatrix(q, m, inner, e1);
    if (rank(a) != modular_rank(a, primes())) return fail("rank disagrees with the modular oracle");
    ++rank_checks;
  }
  return {true, std::to_string(sign_checks) + " signs vs 200-bit MPFR, 10000 floor brackets, " +
                    std::to_string(rank_checks) + " ranks vs modular oracle"};
}

Matroid load_matroid(const std::string& name) {
  return matroid_from_json(read_json_file(std::string(SPR_DATA_DIR) + "/" + name + "_matroid.json"));
}
Representation load_rep(const std::string& name) {
  return representation_from_json(read_json_file(std::string(SPR_DATA_DIR) + "/" + name + "_rep.json"));
}

/// Sweeps the bound upward until the search space passes the cap or `max_bound` is reached.
Outcome sweep_not_found(const SignPattern& s, std::size_t target, long max_bound,
                        const std::string& label) {
  const auto t0 = Clock::now();
  long reached = 0;
  for (long bound = 1; bound <= max_bound; ++bound) {
    try {
      const KapranovSearchResult r = kapranov_search(s, target, FieldTag::rationals(), bound);
      if (r.found) return fail(label + ": unexpected witness at bound " + std::to_string(bound));
    } catch (const InstanceTooLarge&) {
      break;
    }
    reached = bound;
  }
  const double secs = seconds_since(t0);
  if (secs >= 10) return fail(label + ": too slow");
  std::ostringstream os;
  os << label << " NotFoundWithinBounds up to bound " << reached << " (" << secs << " s)";
  return {true, os.str()};
}

// 7. Duality, cocircuit realizations and Kapranov lower-bound evidence.
Outcome criterion7() {
  std::vector<std::pair<Matroid, Representation>> corpus;
  for (const char* name : {"u12", "u13", "u23", "u34", "golden9"}) {
    corpus.emplace_back(load_matroid(name), load_rep(name));
  }
  Rng rng(7007);
  while (corpus.size() < 45) {
    const std::size_t n = uniform(rng, 2, 6), r = uniform(rng, 1, static_cast<long>(n));
    Representation rep{FieldTag::rationals(), random_matrix(rng, FieldTag::rationals(), r, n, 2, 0.3)};
    if (rank(rep.vectors) != r) continue;
    corpus.emplace_back(matroid_of(rep), rep);
  }
  for (const auto& [m, rep] : corpus) {
    validate(m);
    if (!(dual(dual(m)) == m)) return fail("dual is not an involution");
    validate(dual(m));
    const Representation d = dual_representation(m, rep);
    validate_representation(dual(m), d);
    validate_representation(m, dual_representation(dual(m), d));
  }

  const Matroid u23 = load_matroid("u23");
  const ExactMatrix x = cocircuit_realization(u23, load_rep("u23"));
  const SignPattern support = sign_of(x);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // Column j is the cocircuit complementary to element 2 - j.
      if (support.nonzero(i, j) == (i + j == 2)) return fail("U(2,3) support is not J - I");
    }
  }
  if (oracle_rank(x, primes()) != 2) return fail("U(2,3) realization rank is not 2");

  const Outcome a = sweep_not_found(cocircuit_matrix(u23).incidence, 1, 40, "U(2,3)");
  if (!a.pass) return a;
  const Outcome b = sweep_not_found(cocircuit_matrix(load_matroid("u12")).incidence, 0, 40, "U(1,2)");
  if (!b.pass) return b;
  return {true, std::to_string(corpus.size()) + " matroids: dual involution and dual representations "
                "valid; U(2,3) realization rank 2 on J - I; " + a.detail + "; " + b.detail};
}

// 8. Golden-ratio witness and bounded rational search.
Outcome criterion8() {
  const Matroid m = load_matroid("golden9");
  const Representation rep = load_rep("golden9");
  const CocircuitMatrix comatrix = cocircuit_matrix(dual(m));
  // Sub-support: the first seven three-element cocircuits of the dual (collinear triples of the
  // configuration) that avoid the four-point line {1, 4, 6, 7}.
  const ElementSet four_line = set_of({0, 3, 5, 6});
  WitnessOptions options;
  options.search_bound = 3;
  for (std::size_t j = 0; j < comatrix.cocircuits.size() && options.search_columns.size() < 7; ++j) {
    const ElementSet c = comatrix.cocircuits[j];
    if (elements_of(c).size() == 3 && (c & four_line) != c) {
      options.search_columns.push_back(j);
    }
  }
  const auto t0 = Clock::now();
  const WitnessReport w = irrationality_witness(m, rep, options);
  const double secs = seconds_since(t0);

  const ExactMatrix& x = w.realization;
  if (!(x.field() == FieldTag::quadratic(5)) || x.rows() != 9) return fail("wrong realization shape");
  if (oracle_rank(x, primes()) != 6 || w.realization_rank != 6) return fail("realization rank is not 6");
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (x(i, j).is_zero() == comatrix.incidence.nonzero(i, j)) return fail("support mismatch");
    }
  }
  if (has_rational_entries(x)) return fail("realization is unexpectedly rational");
  std::ostringstream os;
  os << "9x" << x.cols() << " realization over Q(sqrt 5), rank 6, term rank " << w.term_rank
     << " (gap " << w.gap << "), verified exactly; ";
  if (!w.search) return fail(os.str() + w.search_note);
  os << "rank-6 search, bound 3, columns";
  for (std::size_t j : options.search_columns) os << ' ' << j + 1;
  os << ": " << w.search->candidates_examined << "/" << w.search->search_space << " candidates, "
     << secs << " s";
  if (w.search->found) {
    return fail(os.str() + " -> rational witness Found on this sub-support, expected NotFoundWithinBounds");
  }
  if (secs >= 120) return fail(os.str() + " (too slow)");
  return {true, os.str() + " -> NotFoundWithinBounds (evidence, not proof)"};
}

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// 9. Inputs below rank t - 2 are rejected.
Outcome criterion9() {
  Rng rng(9009);
  const FieldTag f = FieldTag::quadratic(2);
  std::vector<ExactMatrix> inputs;
  inputs.push_back(random_product(rng, f, 4, 4, 1, 0.0));
  while (inputs.size() < 5) {
    const std::size_t n = uniform(rng, 4, 8);
    ExactMatrix a = random_product(rng, f, n, n, uniform(rng, 1, static_cast<long>(n) - 3), 0.0);
    if (rank(a) + 2 < term_rank(sign_of(a)).t) inputs.push_back(std::move(a));
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    try {
      (void)realize(inputs[k]);
      return fail("library accepted input " + std::to_string(k));
    } catch (const PreconditionViolated& e) {
      if (std::string(e.what()).rfind(kRankBelowBoundMessage, 0) != 0) return fail("wrong message");
    }
    const std::string path = "acceptance_c9_" + std::to_string(k) + ".json";
    std::ofstream(path) << matrix_to_json(inputs[k]).dump();
    const Run r = run(std::string("\"") + SPR_CLI_PATH + "\" realize " + path);
    std::remove(path.c_str());
    Json j;
    try {
      j = Json::parse(r.out);
    } catch (const std::exception&) {
      return fail("CLI output is not JSON");
    }
    if (r.exit_code != 2) return fail("CLI exit code " + std::to_string(r.exit_code));
    if (j["status"] != "Error" || !j["payload"].is_null()) return fail("CLI emitted a payload");
    if (j["diagnostics"].empty() ||
        j["diagnostics"][0].get<std::string>().rfind(kRankBelowBoundMessage, 0) != 0) {
      return fail("CLI diagnostic lacks the documented message");
    }
  }
  return {true, "5 inputs with rank < t-2 rejected (library PreconditionViolated, CLI exit 2, no "
                "matrix emitted)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    if (!selected.empty() && !selected.count(k)) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
