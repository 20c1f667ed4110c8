#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "qsatlab/formula.hpp"
#include "qsatlab/linalg.hpp"

namespace qsatlab {

/// literal: the clause projector sits on the leading k tensor slots,
/// whatever variables the clause mentions. aligned: the projector acts on
/// the qubits of the clause's own variables.
enum class EmbeddingMode { Literal, Aligned };

std::string_view to_string(EmbeddingMode mode);
EmbeddingMode parse_embedding_mode(std::string_view text);

/// a * (I - |v(x_i1)..v(x_ik)><..|) (x) I, attached to one clause.
struct QuantumAssignment {
  std::size_t clause_index = 0;  // 1-based
  EmbeddingMode mode = EmbeddingMode::Literal;
  Complex scale{1.0, 0.0};
  std::vector<std::size_t> clause_vars;  // first-occurrence order
  DenseMatrix matrix;
};

/// Requires evaluate(f, v) and a != 0.
QuantumAssignment quantum_assignment(const Formula& f, std::size_t clause_index, const Evaluation& v,
                                     EmbeddingMode mode, Complex scale = Complex{1.0, 0.0});

/// One assignment per clause, all built from the same evaluation.
std::vector<QuantumAssignment> quantum_assignments(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                                   Complex scale = Complex{1.0, 0.0});

/// |v(x1)..v(xn)>
StateVector natural_conversion(const Formula& f, const Evaluation& v);

/// <w| M |w>
Complex residual(const QuantumAssignment& q, const StateVector& w);

}  // namespace qsatlab
