#include "qsatlab/qsatlab.h"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "qsatlab/checker.hpp"
#include "qsatlab/error.hpp"
#include "qsatlab/experiments.hpp"
#include "qsatlab/formula.hpp"
#include "qsatlab/qassign.hpp"
#include "qsatlab/report_io.hpp"

namespace {

using qsatlab::Error;
using qsatlab::ErrorCode;

thread_local std::string g_last_error;
std::atomic<std::size_t> g_variable_limit{qsatlab::kDefaultBruteForceLimit};

template <typename T, std::uint32_t MAGIC>
struct handle {
  explicit handle(T value) : magic(MAGIC), obj(std::move(value)) {}
  ~handle() { magic = 0; }

  std::uint32_t magic;
  T obj;
};

class HandleError : public std::runtime_error {
 public:
  HandleError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

template <typename T, std::uint32_t M>
T& get(handle<T, M>* h) {
  if (!h) throw HandleError(QSATLAB_ERROR_NULL_POINTER, "null handle");
  if (h->magic != M) throw HandleError(QSATLAB_ERROR_INVALID_HANDLE, "handle has bad magic");
  return h->obj;
}

int to_c_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return QSATLAB_ERROR_SYNTAX;
    case ErrorCode::MixedWidth: return QSATLAB_ERROR_MIXED_WIDTH;
    case ErrorCode::DuplicateVariable: return QSATLAB_ERROR_DUPLICATE_VARIABLE;
    case ErrorCode::IndexOutOfRange: return QSATLAB_ERROR_INDEX_OUT_OF_RANGE;
    case ErrorCode::PartialEvaluation: return QSATLAB_ERROR_PARTIAL_EVALUATION;
    case ErrorCode::TooManyVariables: return QSATLAB_ERROR_TOO_MANY_VARIABLES;
    case ErrorCode::DimensionMismatch: return QSATLAB_ERROR_DIMENSION_MISMATCH;
    case ErrorCode::NotHermitian: return QSATLAB_ERROR_NOT_HERMITIAN;
    case ErrorCode::NotPSD: return QSATLAB_ERROR_NOT_PSD;
    case ErrorCode::NoConvergence: return QSATLAB_ERROR_NO_CONVERGENCE;
    case ErrorCode::SourceUnsatisfied: return QSATLAB_ERROR_SOURCE_UNSATISFIED;
    case ErrorCode::ZeroScale: return QSATLAB_ERROR_ZERO_SCALE;
    case ErrorCode::EmptyInstance: return QSATLAB_ERROR_EMPTY_INSTANCE;
    case ErrorCode::NotDiagonal: return QSATLAB_ERROR_NOT_DIAGONAL;
    case ErrorCode::EqualVarSets: return QSATLAB_ERROR_EQUAL_VAR_SETS;
    case ErrorCode::UnsatisfiableFormula: return QSATLAB_ERROR_UNSATISFIABLE_FORMULA;
    case ErrorCode::BoundsExceeded: return QSATLAB_ERROR_BOUNDS_EXCEEDED;
    case ErrorCode::GoldenMismatch: return QSATLAB_ERROR_GOLDEN_MISMATCH;
    case ErrorCode::InvalidArgument: return QSATLAB_ERROR_INVALID_ARGUMENT;
    case ErrorCode::IoError: return QSATLAB_ERROR_IO;
  }
  return QSATLAB_ERROR_UNKNOWN;
}

template <typename F>
int guard(F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_c_code(e.code());
  } catch (const HandleError& e) {
    g_last_error = e.what();
    return e.code();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSATLAB_ERROR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown exception";
    return QSATLAB_ERROR_UNKNOWN;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw HandleError(QSATLAB_ERROR_NULL_POINTER, std::string("null argument: ") + name);
}

qsatlab::EmbeddingMode to_mode(int mode) {
  if (mode == QSATLAB_MODE_LITERAL) return qsatlab::EmbeddingMode::Literal;
  if (mode == QSATLAB_MODE_ALIGNED) return qsatlab::EmbeddingMode::Aligned;
  throw Error(ErrorCode::InvalidArgument, "unknown mode " + std::to_string(mode));
}

void require_format(int format, bool csv_allowed) {
  if (format == QSATLAB_FORMAT_JSON || format == QSATLAB_FORMAT_TEXT) return;
  if (format == QSATLAB_FORMAT_CSV && csv_allowed) return;
  throw Error(ErrorCode::InvalidArgument, "unsupported output format " + std::to_string(format));
}

qsatlab::Evaluation evaluation_for(const qsatlab::Formula& f, const char* bits) {
  auto v = qsatlab::Evaluation::from_bitstring(bits);
  if (v.size() != f.num_variables()) {
    throw Error(ErrorCode::PartialEvaluation, "--eval has " + std::to_string(v.size()) + " bits, formula has " +
                                                  std::to_string(f.num_variables()) + " variables");
  }
  return v;
}

}  // namespace

struct qsatlab_formula_struct : handle<qsatlab::Formula, 0x51F0A11U> {
  using handle::handle;
};
struct qsatlab_text_struct : handle<std::string, 0x7E47B0FU> {
  using handle::handle;
};

namespace {

int emit(qsatlab_text_t* out, std::string text) {
  *out = new qsatlab_text_struct(std::move(text));
  return QSATLAB_OK;
}

const qsatlab::Formula& formula_of(qsatlab_formula_t f) { return get(static_cast<handle<qsatlab::Formula, 0x51F0A11U>*>(f)); }

}  // namespace

extern "C" {

const char* qsatlab_version(void) { return "0.1.0"; }

const char* qsatlab_error_description(int err) {
  switch (err) {
    case QSATLAB_OK: return "OK";
    case QSATLAB_ERROR_SYNTAX: return "malformed DIMACS input";
    case QSATLAB_ERROR_MIXED_WIDTH: return "clauses of differing width";
    case QSATLAB_ERROR_DUPLICATE_VARIABLE: return "variable repeated within a clause";
    case QSATLAB_ERROR_INDEX_OUT_OF_RANGE: return "index out of range";
    case QSATLAB_ERROR_PARTIAL_EVALUATION: return "evaluation does not cover every variable";
    case QSATLAB_ERROR_TOO_MANY_VARIABLES: return "too many variables for brute force";
    case QSATLAB_ERROR_DIMENSION_MISMATCH: return "dimension mismatch";
    case QSATLAB_ERROR_NOT_HERMITIAN: return "matrix is not Hermitian";
    case QSATLAB_ERROR_NOT_PSD: return "matrix is not positive semidefinite";
    case QSATLAB_ERROR_NO_CONVERGENCE: return "eigenvalue iteration did not converge";
    case QSATLAB_ERROR_SOURCE_UNSATISFIED: return "evaluation does not satisfy the formula";
    case QSATLAB_ERROR_ZERO_SCALE: return "scale must be nonzero";
    case QSATLAB_ERROR_EMPTY_INSTANCE: return "empty instance";
    case QSATLAB_ERROR_NOT_DIAGONAL: return "matrix is not diagonal";
    case QSATLAB_ERROR_EQUAL_VAR_SETS: return "clauses have equal variable sets";
    case QSATLAB_ERROR_UNSATISFIABLE_FORMULA: return "formula is unsatisfiable";
    case QSATLAB_ERROR_BOUNDS_EXCEEDED: return "configured bounds exceeded";
    case QSATLAB_ERROR_GOLDEN_MISMATCH: return "reproduction differs from the reference matrices";
    case QSATLAB_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case QSATLAB_ERROR_IO: return "I/O error";
    case QSATLAB_ERROR_NULL_POINTER: return "null pointer";
    case QSATLAB_ERROR_INVALID_HANDLE: return "invalid handle";
    default: return "unknown error";
  }
}

const char* qsatlab_last_error(void) { return g_last_error.c_str(); }

int qsatlab_set_variable_limit(size_t max_variables) {
  return guard([&] {
    if (max_variables == 0 || max_variables > 30) {
      throw Error(ErrorCode::InvalidArgument, "variable limit must be in 1..30");
    }
    g_variable_limit = max_variables;
    return QSATLAB_OK;
  });
}

size_t qsatlab_variable_limit(void) { return g_variable_limit; }

const char* qsatlab_text_data(qsatlab_text_t text) {
  if (!text || text->magic != 0x7E47B0FU) return nullptr;
  return text->obj.c_str();
}

size_t qsatlab_text_size(qsatlab_text_t text) {
  if (!text || text->magic != 0x7E47B0FU) return 0;
  return text->obj.size();
}

int qsatlab_text_destroy(qsatlab_text_t text) {
  return guard([&] {
    if (!text) return QSATLAB_OK;
    get(static_cast<handle<std::string, 0x7E47B0FU>*>(text));
    delete text;
    return QSATLAB_OK;
  });
}

int qsatlab_formula_parse_dimacs(qsatlab_formula_t* out, const char* text, size_t len) {
  return guard([&] {
    require(out, "out");
    require(text, "text");
    *out = new qsatlab_formula_struct(qsatlab::parse_dimacs(std::string_view(text, len)));
    return QSATLAB_OK;
  });
}

int qsatlab_formula_load_dimacs(qsatlab_formula_t* out, const char* path) {
  return guard([&] {
    require(out, "out");
    require(path, "path");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, std::string("cannot open ") + path);
    *out = new qsatlab_formula_struct(qsatlab::parse_dimacs(in));
    return QSATLAB_OK;
  });
}

int qsatlab_formula_destroy(qsatlab_formula_t f) {
  return guard([&] {
    if (!f) return QSATLAB_OK;
    formula_of(f);
    delete f;
    return QSATLAB_OK;
  });
}

int qsatlab_formula_dimension(qsatlab_formula_t f, size_t* k, size_t* n) {
  return guard([&] {
    require(k, "k");
    require(n, "n");
    const auto d = qsatlab::dimension(formula_of(f));
    *k = d.k;
    *n = d.n;
    return QSATLAB_OK;
  });
}

int qsatlab_formula_num_clauses(qsatlab_formula_t f, size_t* m) {
  return guard([&] {
    require(m, "m");
    *m = formula_of(f).num_clauses();
    return QSATLAB_OK;
  });
}

int qsatlab_formula_to_dimacs(qsatlab_formula_t f, qsatlab_text_t* out) {
  return guard([&] {
    require(out, "out");
    return emit(out, qsatlab::to_dimacs(formula_of(f)));
  });
}

int qsatlab_formula_evaluate(qsatlab_formula_t f, const char* bits, int* satisfied) {
  return guard([&] {
    require(bits, "bits");
    require(satisfied, "satisfied");
    const auto& formula = formula_of(f);
    *satisfied = qsatlab::evaluate(formula, qsatlab::Evaluation::from_bitstring(bits)) ? 1 : 0;
    return QSATLAB_OK;
  });
}

int qsatlab_formula_satisfying_count(qsatlab_formula_t f, size_t* count) {
  return guard([&] {
    require(count, "count");
    *count = qsatlab::satisfying_evaluations(formula_of(f), g_variable_limit).size();
    return QSATLAB_OK;
  });
}

int qsatlab_formula_satisfying(qsatlab_formula_t f, qsatlab_text_t* out) {
  return guard([&] {
    require(out, "out");
    std::string text;
    for (const auto& v : qsatlab::satisfying_evaluations(formula_of(f), g_variable_limit)) {
      text += v.to_bitstring();
      text += '\n';
    }
    return emit(out, std::move(text));
  });
}

int qsatlab_build(qsatlab_formula_t f, const char* bits, int mode, double scale_re, double scale_im, int format,
                  qsatlab_text_t* out) {
  return guard([&] {
    require(bits, "bits");
    require(out, "out");
    require_format(format, false);
    const auto& formula = formula_of(f);
    if (formula.num_variables() > g_variable_limit) {
      throw Error(ErrorCode::TooManyVariables, "formula exceeds the variable limit");
    }
    const auto v = evaluation_for(formula, bits);
    const auto m = to_mode(mode);
    const auto qs = qsatlab::quantum_assignments(formula, v, m, qsatlab::Complex{scale_re, scale_im});
    return emit(out, format == QSATLAB_FORMAT_JSON ? qsatlab::assignments_to_json(formula, v, m, qs) + "\n"
                                                   : qsatlab::assignments_to_text(formula, v, m, qs));
  });
}

int qsatlab_residual(qsatlab_formula_t f, size_t clause, const char* bits, int mode, double scale_re,
                     double scale_im, double* re, double* im) {
  return guard([&] {
    require(bits, "bits");
    require(re, "re");
    require(im, "im");
    const auto& formula = formula_of(f);
    const auto v = evaluation_for(formula, bits);
    const auto q = qsatlab::quantum_assignment(formula, clause, v, to_mode(mode), qsatlab::Complex{scale_re, scale_im});
    const auto r = qsatlab::residual(q, qsatlab::natural_conversion(formula, v));
    *re = r.real();
    *im = r.imag();
    return QSATLAB_OK;
  });
}

int qsatlab_check(qsatlab_formula_t f, const char* bits, int mode, double scale_re, double scale_im, double epsilon,
                  double tol, int format, qsatlab_text_t* out, size_t* satisfiable_count) {
  return guard([&] {
    require(out, "out");
    require_format(format, false);
    const auto& formula = formula_of(f);
    const auto m = to_mode(mode);
    auto cfg = qsatlab::PromiseConfig::for_qubits(formula.num_variables());
    if (epsilon > 0) cfg.epsilon = epsilon;
    if (tol > 0) cfg.tol = tol;
    cfg.validate();
    if (formula.num_clauses() == 0) throw Error(ErrorCode::EmptyInstance, "formula has no clauses");

    std::vector<qsatlab::Evaluation> evals;
    if (bits) {
      evals.push_back(evaluation_for(formula, bits));
    } else {
      evals = qsatlab::satisfying_evaluations(formula, g_variable_limit);
      if (evals.empty()) throw Error(ErrorCode::UnsatisfiableFormula, "no satisfying evaluation to convert");
    }
    if (formula.num_variables() > g_variable_limit) {
      throw Error(ErrorCode::TooManyVariables, "formula exceeds the variable limit");
    }

    std::string text;
    std::size_t sat = 0;
    for (const auto& v : evals) {
      const auto qs = qsatlab::quantum_assignments(formula, v, m, qsatlab::Complex{scale_re, scale_im});
      const auto verdict = qsatlab::qsat_decide(qs, cfg);
      if (verdict.satisfiable) ++sat;
      text += format == QSATLAB_FORMAT_JSON ? qsatlab::verdict_to_json(verdict, cfg.epsilon, m, v) + "\n"
                                            : qsatlab::verdict_to_text(verdict, cfg.epsilon, m, v);
    }
    if (satisfiable_count) *satisfiable_count = sat;
    return emit(out, std::move(text));
  });
}

int qsatlab_example1(int format, qsatlab_text_t* out) {
  return guard([&] {
    require(out, "out");
    require_format(format, false);
    const auto report = qsatlab::verify_example1();
    emit(out, format == QSATLAB_FORMAT_JSON ? qsatlab::example1_to_json(report) + "\n"
                                            : qsatlab::example1_to_text(report));
    if (!report.all_match()) {
      g_last_error = "GoldenMismatch: " + report.mismatches.front();
      return static_cast<int>(QSATLAB_ERROR_GOLDEN_MISMATCH);
    }
    return static_cast<int>(QSATLAB_OK);
  });
}

int qsatlab_proposition(qsatlab_formula_t f, size_t p, size_t q, int permute_literals, int format,
                        qsatlab_text_t* out, int* all_hold) {
  return guard([&] {
    require(out, "out");
    require_format(format, false);
    const auto& formula = formula_of(f);
    std::vector<qsatlab::PropositionReport> reports;
    if (p == 0 && q == 0) {
      reports = qsatlab::proposition_reports(formula, permute_literals != 0, g_variable_limit);
    } else {
      reports.push_back(qsatlab::proposition_witness_search(formula, p, q, permute_literals != 0, g_variable_limit));
    }
    bool holds = true;
    for (const auto& r : reports) holds = holds && r.proposition_holds;
    if (all_hold) *all_hold = holds ? 1 : 0;
    return emit(out, format == QSATLAB_FORMAT_JSON ? qsatlab::proposition_to_json(reports) + "\n"
                                                   : qsatlab::proposition_to_text(reports));
  });
}

int qsatlab_sweep_config_init(qsatlab_sweep_config* cfg) {
  return guard([&] {
    require(cfg, "cfg");
    const qsatlab::SweepConfig d;
    *cfg = qsatlab_sweep_config{d.k, d.n, d.m, 0, d.seed, d.count, d.require_distinct_varsets ? 1 : 0,
                                d.permute_literals ? 1 : 0, d.workers};
    return QSATLAB_OK;
  });
}

int qsatlab_sweep(const qsatlab_sweep_config* cfg, const char* out_dir, int format, qsatlab_text_t* summary) {
  return guard([&] {
    require(cfg, "cfg");
    require(summary, "summary");
    require_format(format, true);
    qsatlab::SweepConfig sc;
    sc.k = cfg->k;
    sc.n = cfg->n;
    sc.m = cfg->m;
    sc.generation = cfg->random ? qsatlab::Generation::Random : qsatlab::Generation::Exhaustive;
    sc.seed = cfg->seed;
    sc.count = cfg->count;
    sc.require_distinct_varsets = cfg->require_distinct_varsets != 0;
    sc.permute_literals = cfg->permute_literals != 0;
    sc.workers = cfg->workers;

    const auto report = qsatlab::sweep(sc);
    const auto json = qsatlab::sweep_to_json(report);
    const auto csv = qsatlab::sweep_to_csv(report);
    if (out_dir) {
      const std::filesystem::path dir(out_dir);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
      qsatlab::write_file_atomic(dir / "sweep.json", json);
      qsatlab::write_file_atomic(dir / "sweep.csv", csv);
    }
    switch (format) {
      case QSATLAB_FORMAT_JSON: return emit(summary, json);
      case QSATLAB_FORMAT_CSV: return emit(summary, csv);
      default: return emit(summary, qsatlab::sweep_summary_to_text(report));
    }
  });
}

}  // extern "C"
