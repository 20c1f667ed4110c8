// Links only the shared library and its C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qsatlab/qsatlab.h"

namespace {

const char* kExample1 = "p cnf 3 2\n1 -2 0\n-1 3 0\n";

struct Formula {
  qsatlab_formula_t h = nullptr;
  explicit Formula(const char* text) {
    REQUIRE(qsatlab_formula_parse_dimacs(&h, text, std::strlen(text)) == QSATLAB_OK);
  }
  ~Formula() { qsatlab_formula_destroy(h); }
};

struct Text {
  qsatlab_text_t h = nullptr;
  ~Text() { qsatlab_text_destroy(h); }
  std::string str() const { return std::string(qsatlab_text_data(h), qsatlab_text_size(h)); }
};

}  // namespace

TEST_CASE("version and error descriptions") {
  CHECK(std::string(qsatlab_version()) == "0.1.0");
  CHECK(std::string(qsatlab_error_description(QSATLAB_OK)) != "");
  CHECK(std::string(qsatlab_error_description(QSATLAB_ERROR_MIXED_WIDTH)) == "clauses of differing width");
  CHECK(std::string(qsatlab_error_description(12345)) != "");
}

TEST_CASE("parse errors map to codes and set the last error") {
  qsatlab_formula_t f = nullptr;
  const char* mixed = "p cnf 3 2\n1 -2 0\n-1 3 2 0\n";
  CHECK(qsatlab_formula_parse_dimacs(&f, mixed, std::strlen(mixed)) == QSATLAB_ERROR_MIXED_WIDTH);
  CHECK(f == nullptr);
  CHECK(std::string(qsatlab_last_error()).find("MixedWidth") != std::string::npos);
  const char* bad = "p cnf 2 1\n1 x 0\n";
  CHECK(qsatlab_formula_parse_dimacs(&f, bad, std::strlen(bad)) == QSATLAB_ERROR_SYNTAX);
  CHECK(qsatlab_formula_parse_dimacs(nullptr, bad, std::strlen(bad)) == QSATLAB_ERROR_NULL_POINTER);
  CHECK(qsatlab_formula_load_dimacs(&f, "/nonexistent/file.cnf") == QSATLAB_ERROR_IO);
}

TEST_CASE("null and foreign handles are rejected") {
  size_t k = 0, n = 0;
  CHECK(qsatlab_formula_dimension(nullptr, &k, &n) == QSATLAB_ERROR_NULL_POINTER);
  CHECK(qsatlab_formula_destroy(nullptr) == QSATLAB_OK);
  CHECK(qsatlab_text_destroy(nullptr) == QSATLAB_OK);
  Text t;
  REQUIRE(qsatlab_example1(QSATLAB_FORMAT_JSON, &t.h) == QSATLAB_OK);
  // A text handle passed where a formula is expected.
  CHECK(qsatlab_formula_dimension(reinterpret_cast<qsatlab_formula_t>(t.h), &k, &n) ==
        QSATLAB_ERROR_INVALID_HANDLE);
}

TEST_CASE("formula queries") {
  Formula f(kExample1);
  size_t k = 0, n = 0, m = 0, count = 0;
  CHECK(qsatlab_formula_dimension(f.h, &k, &n) == QSATLAB_OK);
  CHECK(k == 2);
  CHECK(n == 3);
  CHECK(qsatlab_formula_num_clauses(f.h, &m) == QSATLAB_OK);
  CHECK(m == 2);
  int sat = 0;
  CHECK(qsatlab_formula_evaluate(f.h, "101", &sat) == QSATLAB_OK);
  CHECK(sat == 1);
  CHECK(qsatlab_formula_evaluate(f.h, "010", &sat) == QSATLAB_OK);
  CHECK(sat == 0);
  CHECK(qsatlab_formula_evaluate(f.h, "01", &sat) == QSATLAB_ERROR_PARTIAL_EVALUATION);
  CHECK(qsatlab_formula_satisfying_count(f.h, &count) == QSATLAB_OK);
  CHECK(count == 4);
  Text s;
  CHECK(qsatlab_formula_satisfying(f.h, &s.h) == QSATLAB_OK);
  CHECK(s.str() == "000\n001\n101\n111\n");
  Text d;
  CHECK(qsatlab_formula_to_dimacs(f.h, &d.h) == QSATLAB_OK);
  CHECK(d.str() == "p cnf 3 2\n1 -2 0\n-1 3 0\n");
}

TEST_CASE("variable limit") {
  const size_t before = qsatlab_variable_limit();
  CHECK(before == 20);
  CHECK(qsatlab_set_variable_limit(0) == QSATLAB_ERROR_INVALID_ARGUMENT);
  CHECK(qsatlab_set_variable_limit(31) == QSATLAB_ERROR_INVALID_ARGUMENT);
  CHECK(qsatlab_set_variable_limit(2) == QSATLAB_OK);
  Formula f(kExample1);
  size_t count = 0;
  CHECK(qsatlab_formula_satisfying_count(f.h, &count) == QSATLAB_ERROR_TOO_MANY_VARIABLES);
  CHECK(qsatlab_set_variable_limit(before) == QSATLAB_OK);
}

TEST_CASE("build and residual") {
  Formula f(kExample1);
  Text t;
  CHECK(qsatlab_build(f.h, "101", QSATLAB_MODE_LITERAL, 1, 0, QSATLAB_FORMAT_JSON, &t.h) == QSATLAB_OK);
  CHECK(t.str().find("\"mode\":\"literal\"") != std::string::npos);
  double re = -1, im = -1;
  CHECK(qsatlab_residual(f.h, 2, "101", QSATLAB_MODE_LITERAL, 1, 0, &re, &im) == QSATLAB_OK);
  CHECK(re == 1.0);
  CHECK(im == 0.0);
  CHECK(qsatlab_residual(f.h, 2, "101", QSATLAB_MODE_ALIGNED, 1, 0, &re, &im) == QSATLAB_OK);
  CHECK(re == 0.0);
  CHECK(qsatlab_residual(f.h, 1, "010", QSATLAB_MODE_LITERAL, 1, 0, &re, &im) == QSATLAB_ERROR_SOURCE_UNSATISFIED);
  CHECK(qsatlab_residual(f.h, 1, "101", QSATLAB_MODE_LITERAL, 0, 0, &re, &im) == QSATLAB_ERROR_ZERO_SCALE);
  CHECK(qsatlab_residual(f.h, 1, "101", 7, 1, 0, &re, &im) == QSATLAB_ERROR_INVALID_ARGUMENT);
  Text bad;
  CHECK(qsatlab_build(f.h, "101", QSATLAB_MODE_LITERAL, 1, 0, 9, &bad.h) == QSATLAB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("check") {
  Formula f(kExample1);
  Text lit;
  size_t sat = 99;
  CHECK(qsatlab_check(f.h, "101", QSATLAB_MODE_LITERAL, 1, 0, 0, 0, QSATLAB_FORMAT_JSON, &lit.h, &sat) == QSATLAB_OK);
  CHECK(sat == 0);
  CHECK(lit.str().find("\"satisfiable\":false") != std::string::npos);
  CHECK(lit.str().find("\"lambda_min\":1") != std::string::npos);

  Text all;
  CHECK(qsatlab_check(f.h, nullptr, QSATLAB_MODE_ALIGNED, 1, 0, 0, 0, QSATLAB_FORMAT_JSON, &all.h, &sat) ==
        QSATLAB_OK);
  CHECK(sat == 4);

  Text bad;
  CHECK(qsatlab_check(f.h, "101", QSATLAB_MODE_LITERAL, 1, 0, 1e-12, 1e-9, QSATLAB_FORMAT_JSON, &bad.h, nullptr) ==
        QSATLAB_ERROR_INVALID_ARGUMENT);
  Formula contradiction("p cnf 1 2\n1 0\n-1 0\n");
  Text none;
  CHECK(qsatlab_check(contradiction.h, nullptr, QSATLAB_MODE_LITERAL, 1, 0, 0, 0, QSATLAB_FORMAT_JSON, &none.h,
                      nullptr) == QSATLAB_ERROR_UNSATISFIABLE_FORMULA);
}

TEST_CASE("example1 and proposition") {
  Text ex;
  CHECK(qsatlab_example1(QSATLAB_FORMAT_TEXT, &ex.h) == QSATLAB_OK);
  CHECK(qsatlab_text_size(ex.h) > 0);

  Formula f(kExample1);
  Text p;
  int all_hold = -1;
  CHECK(qsatlab_proposition(f.h, 0, 0, 0, QSATLAB_FORMAT_JSON, &p.h, &all_hold) == QSATLAB_OK);
  CHECK(all_hold == 1);

  Formula counter("p cnf 2 2\n1 0\n2 0\n");
  Text c;
  CHECK(qsatlab_proposition(counter.h, 1, 2, 1, QSATLAB_FORMAT_JSON, &c.h, &all_hold) == QSATLAB_OK);
  CHECK(all_hold == 0);

  Formula same("p cnf 2 2\n1 2 0\n-1 2 0\n");
  Text s;
  CHECK(qsatlab_proposition(same.h, 0, 0, 0, QSATLAB_FORMAT_JSON, &s.h, nullptr) == QSATLAB_ERROR_EQUAL_VAR_SETS);
}

TEST_CASE("sweep writes both files") {
  qsatlab_sweep_config cfg;
  CHECK(qsatlab_sweep_config_init(&cfg) == QSATLAB_OK);
  cfg.k = 1;
  cfg.n = 2;
  cfg.m = 2;
  cfg.workers = 2;
  const auto dir = std::filesystem::temp_directory_path() / "qsatlab_capi_sweep";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  Text summary;
  CHECK(qsatlab_sweep(&cfg, dir.c_str(), QSATLAB_FORMAT_TEXT, &summary.h) == QSATLAB_OK);
  CHECK(std::filesystem::exists(dir / "sweep.json"));
  CHECK(std::filesystem::exists(dir / "sweep.csv"));
  std::ifstream csv(dir / "sweep.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header.rfind("formula_id,dimacs,", 0) == 0);
  std::filesystem::remove_all(dir);

  cfg.n = 9;
  Text big;
  CHECK(qsatlab_sweep(&cfg, nullptr, QSATLAB_FORMAT_TEXT, &big.h) == QSATLAB_ERROR_BOUNDS_EXCEEDED);
  CHECK(qsatlab_sweep(nullptr, nullptr, QSATLAB_FORMAT_TEXT, &big.h) == QSATLAB_ERROR_NULL_POINTER);
}
