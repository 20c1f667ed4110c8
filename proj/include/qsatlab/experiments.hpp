#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsatlab/checker.hpp"
#include "qsatlab/formula.hpp"
#include "qsatlab/linalg.hpp"
#include "qsatlab/qassign.hpp"

namespace qsatlab {

// ------------------------------------------------------------------ worked example

/// (x1 v -x2) ^ (-x1 v x3), n = 3.
Formula example1_formula();

struct Example1Report {
  Evaluation evaluation;        // 101
  DenseMatrix outer_first;      // |v(x)v(y)><v(x)v(y)|, 4x4
  DenseMatrix outer_second;     // |v(x)v(z)><v(x)v(z)|, 4x4
  DenseMatrix projector_first;  // literal mode, a = 1, 8x8
  DenseMatrix projector_second;
  StateVector natural;          // |101>
  Complex residual_first;
  Complex residual_second;
  std::vector<std::string> mismatches;

  bool all_match() const { return mismatches.empty(); }
};

/// Rebuilds every object of the worked example and compares each one
/// entrywise, with zero tolerance, against the reference integer matrices.
Example1Report verify_example1();

// ------------------------------------------------------- proposition search

struct PropositionWitness {
  Evaluation evaluation;
  double residual_p = 0.0;
  double residual_q = 0.0;
  /// Clause q as reordered for this witness (the original order when no
  /// permutation was needed or searched).
  Clause q_order;
};

struct PropositionReport {
  Formula formula;
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t num_satisfying = 0;
  std::vector<PropositionWitness> witnesses;
  /// Satisfying evaluations whose natural conversion zeroes every literal-mode
  /// residual of the formula (original literal order).
  std::vector<Evaluation> natural_successes;
  bool proposition_holds = false;
  bool permutations_searched = false;
};

/// Clause pairs p < q (1-based) whose variable sets differ.
std::vector<std::pair<std::size_t, std::size_t>> distinct_varset_pairs(const Formula& f);

/// For every satisfying v, evaluates the literal-mode residuals of clauses p
/// and q at |v(x1)..v(xn)>. With `permute_literals`, every ordering of
/// clause q's literals is tried (original order first) and the first one
/// exposing a nonzero residual is recorded.
PropositionReport proposition_witness_search(const Formula& f, std::size_t p, std::size_t q, bool permute_literals,
                                             std::size_t max_variables = kDefaultBruteForceLimit);

/// One report per pair from distinct_varset_pairs; EqualVarSets if none.
std::vector<PropositionReport> proposition_reports(const Formula& f, bool permute_literals,
                                                   std::size_t max_variables = kDefaultBruteForceLimit);

/// Re-derives every witness by bit arithmetic on the basis index (no
/// matrices): the literal-mode residual of a clause at |v> is 1 iff the
/// leading k bits of v differ from v on the clause's variables. Returns
/// descriptions of witnesses that fail to re-verify.
std::vector<std::string> recheck_witnesses(const PropositionReport& report);

// -------------------------------------------------------------------- sweeps

enum class Generation { Exhaustive, Random };

struct SweepConfig {
  std::size_t k = 2;
  std::size_t n = 3;
  std::size_t m = 2;
  Generation generation = Generation::Exhaustive;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  bool require_distinct_varsets = true;
  bool permute_literals = false;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t workers = 0;
  std::size_t max_exhaustive_n = 4;
  std::size_t max_exhaustive_m = 3;
  std::size_t max_random_n = 10;

  void validate() const;
};

/// Exhaustive: every set of m distinct clauses (variables ascending within a
/// clause, clauses in canonical order). Random: seeded, m distinct clauses,
/// random literal order.
std::vector<Formula> generate_formulas(const SweepConfig& cfg);

struct SweepRow {
  std::size_t formula_id = 0;
  std::string dimacs;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string pair;  // "p-q", or "-" when the formula has no eligible pair
  std::size_t num_satisfying = 0;
  std::optional<bool> proposition_holds;
  std::string witness_eval;  // empty when no witness
  /// Literal residuals, literal/aligned decisions and lambda_min are taken at
  /// the row's reported evaluation: the first witness, or the first
  /// satisfying evaluation when there is none.
  double residual_p = 0.0;
  double residual_q = 0.0;
  bool literal_qsat = false;
  bool aligned_qsat = false;
  double lambda_min_literal = 0.0;
};

struct SweepSummary {
  std::size_t formulas_generated = 0;
  std::size_t satisfiable_formulas = 0;
  std::size_t formulas_considered = 0;
  std::size_t pairs_tested = 0;
  std::size_t proposition_holds = 0;
  std::size_t proposition_fails = 0;
  std::size_t evaluations_checked = 0;
  std::size_t literal_qsat = 0;
  std::size_t aligned_qsat = 0;
  std::size_t aligned_residual_violations = 0;
  std::size_t oracle_disagreements = 0;
  std::size_t witness_recheck_failures = 0;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

SweepReport sweep(const SweepConfig& cfg);

}  // namespace qsatlab
