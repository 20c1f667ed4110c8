#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qsatlab/experiments.hpp"
#include "qsatlab/report_io.hpp"

using namespace qsatlab;
using nlohmann::json;

TEST_CASE("numbers print without a trailing decimal when integral") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-3.0) == "-3");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 216.0) == "0.004629629629629629");
  CHECK(format_complex(Complex{2, -1}) == "2-1i");
  CHECK(format_complex(Complex{0, 1}) == "1i");
  CHECK(format_complex(Complex{1, 0}) == "1");
}

TEST_CASE("matrix JSON is row-major [re, im] pairs") {
  const auto j = json::parse(matrix_to_json(DenseMatrix::diagonal({1, Complex{0, 2}})));
  CHECK(j["dim"] == 2);
  CHECK(j["entries"].dump() == "[[1,0],[0,0],[0,0],[0,2]]");
}

TEST_CASE("verdict JSON schema") {
  const auto f = example1_formula();
  const auto v = Evaluation::from_bitstring("101");
  const auto qs = quantum_assignments(f, v, EmbeddingMode::Aligned);
  const auto cfg = PromiseConfig::for_qubits(3);
  const auto j = json::parse(verdict_to_json(qsat_decide(qs, cfg), cfg.epsilon, EmbeddingMode::Aligned, v));
  for (const char* key : {"satisfiable", "witness", "lambda_min", "gap_lower", "gap_upper", "epsilon",
                          "promise_met", "mode", "evaluation"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["satisfiable"] == true);
  CHECK(j["mode"] == "aligned");
  CHECK(j["evaluation"] == "101");
  CHECK(j["lambda_min"].dump() == "0");
  REQUIRE(j["witness"].size() == 8);
  CHECK(j["witness"][5].dump() == "[1,0]");

  const auto lit = quantum_assignments(f, v, EmbeddingMode::Literal);
  const auto jl = json::parse(verdict_to_json(qsat_decide(lit, cfg), cfg.epsilon, EmbeddingMode::Literal, v));
  CHECK(jl["satisfiable"] == false);
  CHECK(jl["witness"].is_null());
  CHECK(jl["lambda_min"].dump() == "1");
}

TEST_CASE("example report JSON") {
  const auto j = json::parse(example1_to_json(verify_example1()));
  CHECK(j["match"] == true);
  CHECK(j["residuals"].dump() == "[[0,0],[1,0]]");
  CHECK(j["projector_first"]["dim"] == 8);
}

TEST_CASE("proposition JSON: one object for one report, an array otherwise") {
  const auto one = proposition_reports(example1_formula(), false);
  const auto j = json::parse(proposition_to_json(one));
  CHECK(j.is_object());
  CHECK(j["proposition_holds"] == true);
  CHECK(j["pair"].dump() == "[1,2]");

  const auto many = proposition_reports(parse_dimacs("p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n"), false);
  CHECK(json::parse(proposition_to_json(many)).is_array());
}

TEST_CASE("sweep CSV header and row count") {
  SweepConfig cfg;
  cfg.n = 2;
  cfg.k = 1;
  cfg.m = 2;
  const auto report = sweep(cfg);
  std::istringstream csv(sweep_to_csv(report));
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "formula_id,dimacs,k,n,m,pair,num_satisfying,proposition_holds,witness_eval,residual_p,residual_q,"
        "literal_qsat,aligned_qsat,lambda_min_literal");
  std::size_t lines = 0;
  std::size_t falses = 0;
  for (std::string line; std::getline(csv, line);) {
    ++lines;
    if (line.find(",false,,0,0,") != std::string::npos) ++falses;
  }
  CHECK(lines == report.rows.size());
  CHECK(lines == 4);
  CHECK(falses == 2);

  const auto j = json::parse(sweep_to_json(report));
  CHECK(j["summary"]["proposition_fails"] == 2);
  CHECK(j["rows"].size() == 4);
}

TEST_CASE("write_file_atomic replaces the target") {
  const auto dir = std::filesystem::temp_directory_path() / "qsatlab_report_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second");
  std::filesystem::remove_all(dir);
}
