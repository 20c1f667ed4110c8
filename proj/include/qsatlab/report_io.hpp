#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "qsatlab/checker.hpp"
#include "qsatlab/experiments.hpp"
#include "qsatlab/formula.hpp"
#include "qsatlab/linalg.hpp"
#include "qsatlab/qassign.hpp"

namespace qsatlab {

/// Shortest round-trip decimal; integral values print without a decimal point.
std::string format_number(double x);
/// "a", "bi", "a+bi" or "a-bi".
std::string format_complex(Complex z);

/// {"dim": d, "entries": [[re, im], ...]} in row-major order.
std::string matrix_to_json(const DenseMatrix& m);
std::string matrix_to_grid(const DenseMatrix& m);

std::string assignments_to_json(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                std::span<const QuantumAssignment> assignments);
std::string assignments_to_text(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                std::span<const QuantumAssignment> assignments);

/// {satisfiable, witness, lambda_min, gap_lower, gap_upper, epsilon,
///  promise_met, mode, evaluation} on one line.
std::string verdict_to_json(const QSatVerdict& verdict, double epsilon, EmbeddingMode mode,
                            const Evaluation& evaluation);
std::string verdict_to_text(const QSatVerdict& verdict, double epsilon, EmbeddingMode mode,
                            const Evaluation& evaluation);

std::string proposition_to_json(std::span<const PropositionReport> reports);
std::string proposition_to_text(std::span<const PropositionReport> reports);

std::string example1_to_json(const Example1Report& report);
std::string example1_to_text(const Example1Report& report);

std::string sweep_to_csv(const SweepReport& report);
std::string sweep_to_json(const SweepReport& report);
std::string sweep_summary_to_text(const SweepReport& report);

/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qsatlab
