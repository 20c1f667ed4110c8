#include "qsatlab/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "qsatlab/error.hpp"

namespace qsatlab {

using nlohmann::json;

namespace {

json number(double x) {
  if (std::isfinite(x) && std::nearbyint(x) == x && std::abs(x) < 9007199254740992.0) {
    return json(static_cast<std::int64_t>(x));
  }
  return json(x);
}

json complex_pair(Complex z) { return json::array({number(z.real()), number(z.imag())}); }

json vector_json(const StateVector& v) {
  json arr = json::array();
  for (const auto& z : v.entries()) arr.push_back(complex_pair(z));
  return arr;
}

json matrix_json(const DenseMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) entries.push_back(complex_pair(m.at(i, j)));
  }
  return json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

json clause_json(const Clause& c) {
  json arr = json::array();
  for (const auto& lit : c.literals) arr.push_back(lit.to_dimacs());
  return arr;
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

std::string format_number(double x) {
  if (std::isfinite(x) && std::nearbyint(x) == x && std::abs(x) < 9007199254740992.0) {
    return std::to_string(static_cast<std::int64_t>(x));
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_number(z.real());
  if (z.real() == 0.0) return format_number(z.imag()) + "i";
  const std::string im = format_number(std::abs(z.imag()));
  return format_number(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

std::string matrix_to_json(const DenseMatrix& m) { return matrix_json(m).dump(); }

std::string matrix_to_grid(const DenseMatrix& m) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      cells.push_back(format_complex(m.at(i, j)));
      width = std::max(width, cells.back().size());
    }
  }
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const auto& cell = cells[i * m.dim() + j];
      if (j > 0) out += ' ';
      out += std::string(width - cell.size(), ' ') + cell;
    }
    out += '\n';
  }
  return out;
}

std::string assignments_to_json(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                std::span<const QuantumAssignment> assignments) {
  json list = json::array();
  for (const auto& q : assignments) {
    list.push_back(json{{"clause_index", q.clause_index},
                        {"clause", clause_json(f.clause(q.clause_index))},
                        {"clause_vars", q.clause_vars},
                        {"scale", complex_pair(q.scale)},
                        {"matrix", matrix_json(q.matrix)}});
  }
  json doc{{"mode", to_string(mode)},
           {"evaluation", v.to_bitstring()},
           {"k", f.clause_width()},
           {"n", f.num_variables()},
           {"assignments", std::move(list)}};
  return doc.dump();
}

std::string assignments_to_text(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                std::span<const QuantumAssignment> assignments) {
  std::ostringstream out;
  out << "mode " << to_string(mode) << ", evaluation " << v.to_bitstring() << ", (k,n) = (" << f.clause_width()
      << "," << f.num_variables() << ")\n";
  for (const auto& q : assignments) {
    out << "\nclause " << q.clause_index << " [";
    const auto& lits = f.clause(q.clause_index).literals;
    for (std::size_t i = 0; i < lits.size(); ++i) out << (i ? " " : "") << lits[i].to_dimacs();
    out << "], scale " << format_complex(q.scale) << "\n" << matrix_to_grid(q.matrix);
  }
  return out.str();
}

std::string verdict_to_json(const QSatVerdict& verdict, double epsilon, EmbeddingMode mode,
                            const Evaluation& evaluation) {
  json doc{{"satisfiable", verdict.satisfiable},
           {"witness", verdict.witness ? vector_json(*verdict.witness) : json(nullptr)},
           {"lambda_min", number(verdict.lambda_min)},
           {"gap_lower", number(verdict.gap_lower)},
           {"gap_upper", number(verdict.gap_upper)},
           {"epsilon", number(epsilon)},
           {"promise_met", verdict.promise_met},
           {"mode", to_string(mode)},
           {"evaluation", evaluation.to_bitstring()}};
  return doc.dump();
}

std::string verdict_to_text(const QSatVerdict& verdict, double epsilon, EmbeddingMode mode,
                            const Evaluation& evaluation) {
  std::ostringstream out;
  out << "evaluation " << evaluation.to_bitstring() << " (" << to_string(mode) << "): "
      << (verdict.satisfiable ? "quantum satisfiable" : "quantum unsatisfiable");
  if (verdict.witness) {
    const auto idx = verdict.witness->basis_index();
    if (idx != verdict.witness->dim()) out << ", witness e_" << idx;
  }
  out << ", lambda_min " << format_number(verdict.lambda_min) << ", gap [" << format_number(verdict.gap_lower)
      << ", " << format_number(verdict.gap_upper) << "], epsilon " << format_number(epsilon) << ", promise "
      << (verdict.promise_met ? "met" : "violated") << "\n";
  return out.str();
}

namespace {

json proposition_json(const PropositionReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back(json{{"evaluation", w.evaluation.to_bitstring()},
                             {"residual_p", number(w.residual_p)},
                             {"residual_q", number(w.residual_q)},
                             {"q_order", clause_json(w.q_order)}});
  }
  json successes = json::array();
  for (const auto& v : r.natural_successes) successes.push_back(v.to_bitstring());
  return json{{"formula", to_dimacs_body(r.formula)},
              {"pair", json::array({r.p, r.q})},
              {"num_satisfying", r.num_satisfying},
              {"proposition_holds", r.proposition_holds},
              {"permutations_searched", r.permutations_searched},
              {"witnesses", std::move(witnesses)},
              {"natural_successes", std::move(successes)}};
}

}  // namespace

std::string proposition_to_json(std::span<const PropositionReport> reports) {
  if (reports.size() == 1) return proposition_json(reports.front()).dump();
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(proposition_json(r));
  return arr.dump();
}

std::string proposition_to_text(std::span<const PropositionReport> reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << "pair (" << r.p << "," << r.q << "): proposition "
        << (r.proposition_holds ? "holds" : "FAILS") << " (" << r.witnesses.size() << " witnesses among "
        << r.num_satisfying << " satisfying evaluations"
        << (r.permutations_searched ? ", literal orders of clause q searched" : "") << ")\n";
    for (const auto& w : r.witnesses) {
      out << "  witness " << w.evaluation.to_bitstring() << ": residuals (" << format_number(w.residual_p) << ", "
          << format_number(w.residual_q) << ")\n";
    }
    if (!r.natural_successes.empty()) {
      out << "  natural conversion zeroes every residual for:";
      for (const auto& v : r.natural_successes) out << ' ' << v.to_bitstring();
      out << '\n';
    }
  }
  return out.str();
}

std::string example1_to_json(const Example1Report& r) {
  json doc{{"evaluation", r.evaluation.to_bitstring()},
           {"outer_first", matrix_json(r.outer_first)},
           {"outer_second", matrix_json(r.outer_second)},
           {"projector_first", matrix_json(r.projector_first)},
           {"projector_second", matrix_json(r.projector_second)},
           {"natural", vector_json(r.natural)},
           {"residuals", json::array({complex_pair(r.residual_first), complex_pair(r.residual_second)})},
           {"match", r.all_match()},
           {"mismatches", r.mismatches}};
  return doc.dump();
}

std::string example1_to_text(const Example1Report& r) {
  std::ostringstream out;
  out << "formula (x1 v -x2) ^ (-x1 v x3), evaluation " << r.evaluation.to_bitstring() << "\n\n";
  out << "|v(x)v(y)><v(x)v(y)|\n" << matrix_to_grid(r.outer_first) << "\n";
  out << "|v(x)v(z)><v(x)v(z)|\n" << matrix_to_grid(r.outer_second) << "\n";
  out << "clause 1 projector (a = 1)\n" << matrix_to_grid(r.projector_first) << "\n";
  out << "clause 2 projector (b = 1)\n" << matrix_to_grid(r.projector_second) << "\n";
  out << "|101> =";
  for (const auto& z : r.natural.entries()) out << ' ' << format_complex(z);
  out << "\n\nresiduals at |101>: (" << format_complex(r.residual_first) << ", "
      << format_complex(r.residual_second) << ")\n";
  if (r.all_match()) {
    out << "all matrices match the reference values\n";
  } else {
    for (const auto& m : r.mismatches) out << "MISMATCH " << m << "\n";
  }
  return out.str();
}

std::string sweep_to_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "formula_id,dimacs,k,n,m,pair,num_satisfying,proposition_holds,witness_eval,residual_p,residual_q,"
         "literal_qsat,aligned_qsat,lambda_min_literal\n";
  for (const auto& r : report.rows) {
    out << r.formula_id << ',' << r.dimacs << ',' << r.k << ',' << r.n << ',' << r.m << ',' << r.pair << ','
        << r.num_satisfying << ',' << (r.proposition_holds ? (*r.proposition_holds ? "true" : "false") : "") << ','
        << r.witness_eval << ',' << format_number(r.residual_p) << ',' << format_number(r.residual_q) << ','
        << (r.literal_qsat ? "true" : "false") << ',' << (r.aligned_qsat ? "true" : "false") << ','
        << format_number(r.lambda_min_literal) << '\n';
  }
  return out.str();
}

namespace {

json summary_json(const SweepSummary& s) {
  return json{{"formulas_generated", s.formulas_generated},
              {"satisfiable_formulas", s.satisfiable_formulas},
              {"formulas_considered", s.formulas_considered},
              {"pairs_tested", s.pairs_tested},
              {"proposition_holds", s.proposition_holds},
              {"proposition_fails", s.proposition_fails},
              {"evaluations_checked", s.evaluations_checked},
              {"literal_qsat", s.literal_qsat},
              {"aligned_qsat", s.aligned_qsat},
              {"aligned_residual_violations", s.aligned_residual_violations},
              {"oracle_disagreements", s.oracle_disagreements},
              {"witness_recheck_failures", s.witness_recheck_failures}};
}

json config_json(const SweepConfig& c) {
  json doc{{"k", c.k},
           {"n", c.n},
           {"m", c.m},
           {"generation", c.generation == Generation::Exhaustive ? "exhaustive" : "random"},
           {"require_distinct_varsets", c.require_distinct_varsets},
           {"permute_literals", c.permute_literals}};
  if (c.generation == Generation::Random) {
    doc["seed"] = c.seed;
    doc["count"] = c.count;
  }
  return doc;
}

}  // namespace

std::string sweep_to_json(const SweepReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back(json{{"formula_id", r.formula_id},
                        {"dimacs", r.dimacs},
                        {"k", r.k},
                        {"n", r.n},
                        {"m", r.m},
                        {"pair", r.pair},
                        {"num_satisfying", r.num_satisfying},
                        {"proposition_holds", optional_bool(r.proposition_holds)},
                        {"witness_eval", r.witness_eval.empty() ? json(nullptr) : json(r.witness_eval)},
                        {"residual_p", number(r.residual_p)},
                        {"residual_q", number(r.residual_q)},
                        {"literal_qsat", r.literal_qsat},
                        {"aligned_qsat", r.aligned_qsat},
                        {"lambda_min_literal", number(r.lambda_min_literal)}});
  }
  json doc{{"config", config_json(report.config)}, {"summary", summary_json(report.summary)}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string sweep_summary_to_text(const SweepReport& report) {
  const auto& s = report.summary;
  std::ostringstream out;
  out << "formulas generated:            " << s.formulas_generated << "\n"
      << "satisfiable:                   " << s.satisfiable_formulas << "\n"
      << "considered:                    " << s.formulas_considered << "\n"
      << "clause pairs tested:           " << s.pairs_tested << "\n"
      << "proposition holds / fails:     " << s.proposition_holds << " / " << s.proposition_fails << "\n"
      << "satisfying evaluations:        " << s.evaluations_checked << "\n"
      << "literal instances QSAT:        " << s.literal_qsat << "\n"
      << "aligned instances QSAT:        " << s.aligned_qsat << "\n"
      << "aligned residual violations:   " << s.aligned_residual_violations << "\n"
      << "oracle disagreements:          " << s.oracle_disagreements << "\n"
      << "witness re-check failures:     " << s.witness_recheck_failures << "\n";
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot rename into " + path.string());
  }
}

}  // namespace qsatlab
