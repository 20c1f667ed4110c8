#ifndef QSATLAB_H_
#define QSATLAB_H_

/*
 * C interface to qsatlab: CNF formulas, quantum-assignment projectors,
 * quantum satisfiability decisions and the proposition/sweep experiments.
 *
 * Every function returns QSATLAB_OK (0) or a negative QSATLAB_ERROR_* code.
 * On failure, qsatlab_last_error() describes the most recent error raised
 * on the calling thread. Objects are opaque handles released with the
 * matching *_destroy function; passing NULL to a destroy function is a no-op.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(QSATLAB_BUILDING_LIBRARY)
#define QSATLAB_API __attribute__((visibility("default")))
#else
#define QSATLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum qsatlab_error_code {
  QSATLAB_OK = 0,
  QSATLAB_ERROR_SYNTAX = -1,
  QSATLAB_ERROR_MIXED_WIDTH = -2,
  QSATLAB_ERROR_DUPLICATE_VARIABLE = -3,
  QSATLAB_ERROR_INDEX_OUT_OF_RANGE = -4,
  QSATLAB_ERROR_PARTIAL_EVALUATION = -5,
  QSATLAB_ERROR_TOO_MANY_VARIABLES = -6,
  QSATLAB_ERROR_DIMENSION_MISMATCH = -7,
  QSATLAB_ERROR_NOT_HERMITIAN = -8,
  QSATLAB_ERROR_NOT_PSD = -9,
  QSATLAB_ERROR_NO_CONVERGENCE = -10,
  QSATLAB_ERROR_SOURCE_UNSATISFIED = -11,
  QSATLAB_ERROR_ZERO_SCALE = -12,
  QSATLAB_ERROR_EMPTY_INSTANCE = -13,
  QSATLAB_ERROR_NOT_DIAGONAL = -14,
  QSATLAB_ERROR_EQUAL_VAR_SETS = -15,
  QSATLAB_ERROR_UNSATISFIABLE_FORMULA = -16,
  QSATLAB_ERROR_BOUNDS_EXCEEDED = -17,
  QSATLAB_ERROR_GOLDEN_MISMATCH = -18,
  QSATLAB_ERROR_INVALID_ARGUMENT = -19,
  QSATLAB_ERROR_IO = -20,
  QSATLAB_ERROR_NULL_POINTER = -21,
  QSATLAB_ERROR_INVALID_HANDLE = -22,
  QSATLAB_ERROR_UNKNOWN = -99
};

enum qsatlab_mode { QSATLAB_MODE_LITERAL = 0, QSATLAB_MODE_ALIGNED = 1 };

enum qsatlab_format { QSATLAB_FORMAT_JSON = 0, QSATLAB_FORMAT_TEXT = 1, QSATLAB_FORMAT_CSV = 2 };

typedef struct qsatlab_formula_struct* qsatlab_formula_t;
typedef struct qsatlab_text_struct* qsatlab_text_t;

QSATLAB_API const char* qsatlab_version(void);
QSATLAB_API const char* qsatlab_error_description(int err);
QSATLAB_API const char* qsatlab_last_error(void);

/* Brute-force cap on the number of variables (default 20). */
QSATLAB_API int qsatlab_set_variable_limit(size_t max_variables);
QSATLAB_API size_t qsatlab_variable_limit(void);

/* Owned, NUL-terminated output text. */
QSATLAB_API const char* qsatlab_text_data(qsatlab_text_t text);
QSATLAB_API size_t qsatlab_text_size(qsatlab_text_t text);
QSATLAB_API int qsatlab_text_destroy(qsatlab_text_t text);

/* Formulas ------------------------------------------------------------- */

QSATLAB_API int qsatlab_formula_parse_dimacs(qsatlab_formula_t* out, const char* text, size_t len);
QSATLAB_API int qsatlab_formula_load_dimacs(qsatlab_formula_t* out, const char* path);
QSATLAB_API int qsatlab_formula_destroy(qsatlab_formula_t f);

QSATLAB_API int qsatlab_formula_dimension(qsatlab_formula_t f, size_t* k, size_t* n);
QSATLAB_API int qsatlab_formula_num_clauses(qsatlab_formula_t f, size_t* m);
QSATLAB_API int qsatlab_formula_to_dimacs(qsatlab_formula_t f, qsatlab_text_t* out);

/* `bits` is a bitstring in x1..xn order, e.g. "101". */
QSATLAB_API int qsatlab_formula_evaluate(qsatlab_formula_t f, const char* bits, int* satisfied);
QSATLAB_API int qsatlab_formula_satisfying_count(qsatlab_formula_t f, size_t* count);
/* One bitstring per line, ascending. */
QSATLAB_API int qsatlab_formula_satisfying(qsatlab_formula_t f, qsatlab_text_t* out);

/* Quantum assignments -------------------------------------------------- */

/* Dumps every clause's projector for evaluation `bits` (JSON or TEXT). */
QSATLAB_API int qsatlab_build(qsatlab_formula_t f, const char* bits, int mode, double scale_re, double scale_im,
                              int format, qsatlab_text_t* out);

/* <w|psi_clause|w> at w = |v(x1)..v(xn)>; clause is 1-based. */
QSATLAB_API int qsatlab_residual(qsatlab_formula_t f, size_t clause, const char* bits, int mode, double scale_re,
                                 double scale_im, double* re, double* im);

/* Decision ------------------------------------------------------------- */

/*
 * Decides quantum satisfiability of the formula's assignments. With
 * bits == NULL every satisfying evaluation is checked and one verdict is
 * written per line. epsilon <= 0 selects 1/(8 n^3); tol <= 0 selects 1e-9.
 * `satisfiable_count` (optional) receives the number of satisfiable verdicts.
 */
QSATLAB_API int qsatlab_check(qsatlab_formula_t f, const char* bits, int mode, double scale_re, double scale_im,
                              double epsilon, double tol, int format, qsatlab_text_t* out,
                              size_t* satisfiable_count);

/* Experiments ---------------------------------------------------------- */

/* Writes the report to *out and returns QSATLAB_ERROR_GOLDEN_MISMATCH if
 * any reproduced object differs from the reference one. */
QSATLAB_API int qsatlab_example1(int format, qsatlab_text_t* out);

/* p == q == 0 tests every clause pair with distinct variable sets.
 * `all_hold` (optional) is set to 1 iff every tested pair has a witness. */
QSATLAB_API int qsatlab_proposition(qsatlab_formula_t f, size_t p, size_t q, int permute_literals, int format,
                                    qsatlab_text_t* out, int* all_hold);

typedef struct qsatlab_sweep_config {
  size_t k;
  size_t n;
  size_t m;
  int random;      /* 0: exhaustive, 1: seeded random */
  uint64_t seed;
  size_t count;    /* random mode only */
  int require_distinct_varsets;
  int permute_literals;
  size_t workers;  /* 0: hardware concurrency */
} qsatlab_sweep_config;

QSATLAB_API int qsatlab_sweep_config_init(qsatlab_sweep_config* cfg);

/* Runs the sweep; when out_dir is non-NULL writes sweep.json and sweep.csv
 * there (atomically). *summary receives the summary in `format`
 * (JSON: the full report, CSV: the rows, TEXT: counts). */
QSATLAB_API int qsatlab_sweep(const qsatlab_sweep_config* cfg, const char* out_dir, int format,
                              qsatlab_text_t* summary);

#ifdef __cplusplus
}
#endif

#endif /* QSATLAB_H_ */
