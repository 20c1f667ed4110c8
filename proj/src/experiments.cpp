#include "qsatlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "qsatlab/error.hpp"

namespace qsatlab {

// ------------------------------------------------------------------ worked example

Formula example1_formula() {
  return Formula(3, 2,
                 {Clause{{Literal{1, false}, Literal{2, true}}}, Clause{{Literal{1, true}, Literal{3, false}}}});
}

namespace {

// Reference matrices of the worked example, transcribed row by row.
constexpr std::array<std::array<int, 4>, 4> kGoldenOuterXY{{
    {0, 0, 0, 0},
    {0, 0, 0, 0},
    {0, 0, 1, 0},
    {0, 0, 0, 0},
}};
constexpr std::array<std::array<int, 4>, 4> kGoldenOuterXZ{{
    {0, 0, 0, 0},
    {0, 0, 0, 0},
    {0, 0, 0, 0},
    {0, 0, 0, 1},
}};
constexpr std::array<std::array<int, 8>, 8> kGoldenProjectorA{{
    {1, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 0, 0, 0, 0, 0},
    {0, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 0, 0, 0, 1},
}};
constexpr std::array<std::array<int, 8>, 8> kGoldenProjectorB{{
    {1, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 0, 0, 0, 0, 0},
    {0, 0, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0},
}};
constexpr std::array<int, 8> kGoldenVector101{0, 0, 0, 0, 0, 1, 0, 0};

template <std::size_t N>
void compare(const DenseMatrix& got, const std::array<std::array<int, N>, N>& golden, const std::string& name,
             std::vector<std::string>& mismatches) {
  if (got.dim() != N) {
    mismatches.push_back(name + ": dimension " + std::to_string(got.dim()) + " != " + std::to_string(N));
    return;
  }
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (got.at(i, j) != Complex{static_cast<double>(golden[i][j]), 0.0}) {
        mismatches.push_back(name + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    }
  }
}

}  // namespace

Example1Report verify_example1() {
  Example1Report r;
  const Formula f = example1_formula();
  r.evaluation = Evaluation::from_bitstring("101");

  const std::array<std::uint8_t, 2> xy{r.evaluation(1), r.evaluation(2)};
  const std::array<std::uint8_t, 2> xz{r.evaluation(1), r.evaluation(3)};
  r.outer_first = outer(basis_vector(xy));
  r.outer_second = outer(basis_vector(xz));

  const auto first = quantum_assignment(f, 1, r.evaluation, EmbeddingMode::Literal);
  const auto second = quantum_assignment(f, 2, r.evaluation, EmbeddingMode::Literal);
  r.projector_first = first.matrix;
  r.projector_second = second.matrix;
  r.natural = natural_conversion(f, r.evaluation);
  r.residual_first = residual(first, r.natural);
  r.residual_second = residual(second, r.natural);

  compare(r.outer_first, kGoldenOuterXY, "|v(x)v(y)><v(x)v(y)|", r.mismatches);
  compare(r.outer_second, kGoldenOuterXZ, "|v(x)v(z)><v(x)v(z)|", r.mismatches);
  compare(r.projector_first, kGoldenProjectorA, "clause 1 projector", r.mismatches);
  compare(r.projector_second, kGoldenProjectorB, "clause 2 projector", r.mismatches);
  for (std::size_t i = 0; i < kGoldenVector101.size(); ++i) {
    if (r.natural.dim() != kGoldenVector101.size() ||
        r.natural[i] != Complex{static_cast<double>(kGoldenVector101[i]), 0.0}) {
      r.mismatches.push_back("|101>: entry " + std::to_string(i + 1));
    }
  }
  if (r.residual_first != Complex{0.0, 0.0}) r.mismatches.push_back("clause 1 residual != 0");
  if (r.residual_second != Complex{1.0, 0.0}) r.mismatches.push_back("clause 2 residual != 1");
  return r;
}

// ------------------------------------------------------- proposition search

namespace {

std::vector<std::size_t> sorted_vars(const Clause& c) {
  auto v = c.variables();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> distinct_varset_pairs(const Formula& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 1; p <= f.num_clauses(); ++p) {
    for (std::size_t q = p + 1; q <= f.num_clauses(); ++q) {
      if (sorted_vars(f.clause(p)) != sorted_vars(f.clause(q))) out.emplace_back(p, q);
    }
  }
  return out;
}

PropositionReport proposition_witness_search(const Formula& f, std::size_t p, std::size_t q, bool permute_literals,
                                             std::size_t max_variables) {
  const Clause& cp = f.clause(p);
  const Clause& cq = f.clause(q);
  if (sorted_vars(cp) == sorted_vars(cq)) {
    throw Error(ErrorCode::EqualVarSets,
                "clauses " + std::to_string(p) + " and " + std::to_string(q) + " share one variable set");
  }
  const auto sats = satisfying_evaluations(f, max_variables);
  if (sats.empty()) throw Error(ErrorCode::UnsatisfiableFormula, "formula has no satisfying evaluation");

  PropositionReport report;
  report.formula = f;
  report.p = p;
  report.q = q;
  report.num_satisfying = sats.size();
  report.permutations_searched = permute_literals;

  // Orderings of clause q: the source order first, then the remaining
  // permutations in lexicographic order of literal positions.
  std::vector<Clause> q_orders{cq};
  if (permute_literals) {
    std::vector<std::size_t> perm(cq.width());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
      Clause c;
      for (auto i : perm) c.literals.push_back(cq.literals[i]);
      q_orders.push_back(std::move(c));
    }
  }

  for (const auto& v : sats) {
    const StateVector w = natural_conversion(f, v);
    const double rp = residual(quantum_assignment(f, p, v, EmbeddingMode::Literal), w).real();
    for (const auto& order : q_orders) {
      const Formula fq = f.with_clause(q, order);
      const double rq = residual(quantum_assignment(fq, q, v, EmbeddingMode::Literal), w).real();
      if (rp != 0.0 || rq != 0.0) {
        report.witnesses.push_back(PropositionWitness{v, rp, rq, order});
        break;
      }
    }

    bool all_zero = true;
    for (const auto& qa : quantum_assignments(f, v, EmbeddingMode::Literal)) {
      if (residual(qa, w) != Complex{}) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) report.natural_successes.push_back(v);
  }
  report.proposition_holds = !report.witnesses.empty();
  return report;
}

std::vector<PropositionReport> proposition_reports(const Formula& f, bool permute_literals,
                                                   std::size_t max_variables) {
  const auto pairs = distinct_varset_pairs(f);
  if (pairs.empty()) throw Error(ErrorCode::EqualVarSets, "no clause pair with distinct variable sets");
  std::vector<PropositionReport> out;
  out.reserve(pairs.size());
  for (const auto& [p, q] : pairs) out.push_back(proposition_witness_search(f, p, q, permute_literals, max_variables));
  return out;
}

std::vector<std::string> recheck_witnesses(const PropositionReport& report) {
  const Formula& f = report.formula;
  const std::size_t k = f.clause_width();
  std::vector<std::string> failures;

  auto bit_residual = [&](const Clause& c, const Evaluation& v) {
    const auto vars = c.variables();
    for (std::size_t i = 0; i < k; ++i) {
      if (v(vars[i]) != v(i + 1)) return 1.0;
    }
    return 0.0;
  };

  for (const auto& w : report.witnesses) {
    const std::string tag = "witness " + w.evaluation.to_bitstring();
    if (!evaluate(f, w.evaluation)) failures.push_back(tag + ": does not satisfy the formula");
    if (sorted_vars(w.q_order) != sorted_vars(f.clause(report.q))) {
      failures.push_back(tag + ": reordered clause q has different literals");
    }
    const double rp = bit_residual(f.clause(report.p), w.evaluation);
    const double rq = bit_residual(w.q_order, w.evaluation);
    if (rp != w.residual_p || rq != w.residual_q) failures.push_back(tag + ": residuals do not re-derive");
    if (rp == 0.0 && rq == 0.0) failures.push_back(tag + ": both residuals vanish");
  }
  if (report.proposition_holds != !report.witnesses.empty()) failures.push_back("proposition_holds inconsistent");
  return failures;
}

// -------------------------------------------------------------------- sweeps

void SweepConfig::validate() const {
  if (k == 0) throw Error(ErrorCode::BoundsExceeded, "clause width must be positive");
  if (k > n) throw Error(ErrorCode::BoundsExceeded, "clause width exceeds variable count");
  if (m == 0) throw Error(ErrorCode::BoundsExceeded, "sweeps need at least one clause");
  if (generation == Generation::Exhaustive) {
    if (n > max_exhaustive_n || m > max_exhaustive_m) {
      throw Error(ErrorCode::BoundsExceeded, "exhaustive sweeps limited to n <= " + std::to_string(max_exhaustive_n) +
                                                 ", m <= " + std::to_string(max_exhaustive_m));
    }
  } else {
    if (n > max_random_n) {
      throw Error(ErrorCode::BoundsExceeded, "random sweeps limited to n <= " + std::to_string(max_random_n));
    }
  }
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All width-k clauses with ascending variables: variable combinations in
// lexicographic order, then sign patterns with the first literal's sign as
// the most significant bit (0 = positive).
std::vector<Clause> canonical_clauses(std::size_t n, std::size_t k) {
  std::vector<Clause> out;
  std::vector<std::size_t> combo(k);
  for (std::size_t i = 0; i < k; ++i) combo[i] = i + 1;
  while (true) {
    for (std::size_t signs = 0; signs < (std::size_t{1} << k); ++signs) {
      Clause c;
      for (std::size_t i = 0; i < k; ++i) c.literals.push_back(Literal{combo[i], ((signs >> (k - 1 - i)) & 1U) != 0});
      out.push_back(std::move(c));
    }
    std::size_t i = k;
    while (i > 0 && combo[i - 1] == n - k + i) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

std::vector<Formula> exhaustive_formulas(const SweepConfig& cfg) {
  const auto clauses = canonical_clauses(cfg.n, cfg.k);
  std::vector<Formula> out;
  if (cfg.m > clauses.size()) return out;
  std::vector<std::size_t> idx(cfg.m);
  for (std::size_t i = 0; i < cfg.m; ++i) idx[i] = i;
  while (true) {
    std::vector<Clause> chosen;
    for (auto i : idx) chosen.push_back(clauses[i]);
    out.emplace_back(cfg.n, cfg.k, std::move(chosen));
    std::size_t i = cfg.m;
    while (i > 0 && idx[i - 1] == clauses.size() - cfg.m + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < cfg.m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Formula> random_formulas(const SweepConfig& cfg) {
  const std::uint64_t distinct = binomial(cfg.n, cfg.k) << cfg.k;
  if (cfg.m > distinct) {
    throw Error(ErrorCode::BoundsExceeded, "only " + std::to_string(distinct) + " distinct clauses exist");
  }
  // Raw engine output with modulo keeps the stream identical across
  // standard libraries, unlike std::uniform_int_distribution.
  std::mt19937_64 rng(cfg.seed);
  auto below = [&rng](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };

  std::vector<Formula> out;
  out.reserve(cfg.count);
  for (std::size_t f = 0; f < cfg.count; ++f) {
    std::vector<Clause> clauses;
    std::set<std::vector<long>> seen;
    while (clauses.size() < cfg.m) {
      std::vector<std::size_t> pool(cfg.n);
      for (std::size_t i = 0; i < cfg.n; ++i) pool[i] = i + 1;
      Clause c;
      for (std::size_t i = 0; i < cfg.k; ++i) {
        const std::size_t j = i + below(cfg.n - i);
        std::swap(pool[i], pool[j]);
        c.literals.push_back(Literal{pool[i], (rng() & 1U) != 0});
      }
      std::vector<long> key;
      for (const auto& lit : c.literals) key.push_back(lit.to_dimacs());
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second) clauses.push_back(std::move(c));
    }
    out.emplace_back(cfg.n, cfg.k, std::move(clauses));
  }
  return out;
}

struct FormulaOutcome {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

struct EvalOutcome {
  bool literal_qsat = false;
  bool aligned_qsat = false;
  double lambda_min_literal = 0.0;
};

bool verdicts_agree(const QSatVerdict& a, const QSatVerdict& b) {
  return a.satisfiable == b.satisfiable && std::abs(a.lambda_min - b.lambda_min) <= 1e-9;
}

FormulaOutcome process_formula(const Formula& f, std::size_t formula_id, const SweepConfig& cfg) {
  FormulaOutcome out;
  auto& s = out.summary;
  const auto sats = satisfying_evaluations(f);
  if (sats.empty()) return out;
  ++s.satisfiable_formulas;

  const auto pairs = distinct_varset_pairs(f);
  if (cfg.require_distinct_varsets && pairs.empty()) return out;
  ++s.formulas_considered;

  const PromiseConfig promise = PromiseConfig::for_qubits(f.num_variables());
  std::vector<EvalOutcome> per_eval;
  per_eval.reserve(sats.size());
  for (const auto& v : sats) {
    const auto literal = quantum_assignments(f, v, EmbeddingMode::Literal);
    const auto aligned = quantum_assignments(f, v, EmbeddingMode::Aligned);
    const auto dl = qsat_decide(literal, promise);
    const auto da = qsat_decide(aligned, promise);
    if (!verdicts_agree(dl, diagonal_oracle(literal))) ++s.oracle_disagreements;
    if (!verdicts_agree(da, diagonal_oracle(aligned))) ++s.oracle_disagreements;

    const StateVector w = natural_conversion(f, v);
    for (const auto& qa : aligned) {
      if (residual(qa, w) != Complex{}) {
        ++s.aligned_residual_violations;
        break;
      }
    }
    ++s.evaluations_checked;
    if (dl.satisfiable) ++s.literal_qsat;
    if (da.satisfiable) ++s.aligned_qsat;
    per_eval.push_back(EvalOutcome{dl.satisfiable, da.satisfiable, dl.lambda_min});
  }

  auto base_row = [&]() {
    SweepRow row;
    row.formula_id = formula_id;
    row.dimacs = to_dimacs_body(f);
    row.k = f.clause_width();
    row.n = f.num_variables();
    row.m = f.num_clauses();
    row.num_satisfying = sats.size();
    return row;
  };
  auto fill_at = [&](SweepRow& row, const Evaluation& v) {
    const auto pos = static_cast<std::size_t>(std::find(sats.begin(), sats.end(), v) - sats.begin());
    row.literal_qsat = per_eval[pos].literal_qsat;
    row.aligned_qsat = per_eval[pos].aligned_qsat;
    row.lambda_min_literal = per_eval[pos].lambda_min_literal;
  };

  if (pairs.empty()) {
    SweepRow row = base_row();
    row.pair = "-";
    fill_at(row, sats.front());
    out.rows.push_back(std::move(row));
    return out;
  }

  for (const auto& [p, q] : pairs) {
    const auto report = proposition_witness_search(f, p, q, cfg.permute_literals);
    if (!recheck_witnesses(report).empty()) ++s.witness_recheck_failures;
    ++s.pairs_tested;
    if (report.proposition_holds) {
      ++s.proposition_holds;
    } else {
      ++s.proposition_fails;
    }

    SweepRow row = base_row();
    row.pair = std::to_string(p) + "-" + std::to_string(q);
    row.proposition_holds = report.proposition_holds;
    if (report.proposition_holds) {
      const auto& w = report.witnesses.front();
      row.witness_eval = w.evaluation.to_bitstring();
      row.residual_p = w.residual_p;
      row.residual_q = w.residual_q;
      fill_at(row, w.evaluation);
    } else {
      const Evaluation& v = sats.front();
      const StateVector w = natural_conversion(f, v);
      row.residual_p = residual(quantum_assignment(f, p, v, EmbeddingMode::Literal), w).real();
      row.residual_q = residual(quantum_assignment(f, q, v, EmbeddingMode::Literal), w).real();
      fill_at(row, v);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

void accumulate(SweepSummary& into, const SweepSummary& from) {
  into.satisfiable_formulas += from.satisfiable_formulas;
  into.formulas_considered += from.formulas_considered;
  into.pairs_tested += from.pairs_tested;
  into.proposition_holds += from.proposition_holds;
  into.proposition_fails += from.proposition_fails;
  into.evaluations_checked += from.evaluations_checked;
  into.literal_qsat += from.literal_qsat;
  into.aligned_qsat += from.aligned_qsat;
  into.aligned_residual_violations += from.aligned_residual_violations;
  into.oracle_disagreements += from.oracle_disagreements;
  into.witness_recheck_failures += from.witness_recheck_failures;
}

}  // namespace

std::vector<Formula> generate_formulas(const SweepConfig& cfg) {
  cfg.validate();
  return cfg.generation == Generation::Exhaustive ? exhaustive_formulas(cfg) : random_formulas(cfg);
}

SweepReport sweep(const SweepConfig& cfg) {
  const auto formulas = generate_formulas(cfg);
  std::vector<FormulaOutcome> outcomes(formulas.size());

  std::size_t workers = cfg.workers != 0 ? cfg.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(formulas.size(), 1));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t slot) {
    try {
      for (std::size_t i = next++; i < formulas.size(); i = next++) outcomes[i] = process_formula(formulas[i], i + 1, cfg);
    } catch (...) {
      errors[slot] = std::current_exception();
      next = formulas.size();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepReport report;
  report.config = cfg;
  report.summary.formulas_generated = formulas.size();
  for (auto& o : outcomes) {
    accumulate(report.summary, o.summary);
    for (auto& row : o.rows) report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qsatlab
