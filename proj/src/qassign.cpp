#include "qsatlab/qassign.hpp"

#include <string>

#include "qsatlab/error.hpp"

namespace qsatlab {

std::string_view to_string(EmbeddingMode mode) {
  return mode == EmbeddingMode::Literal ? "literal" : "aligned";
}

EmbeddingMode parse_embedding_mode(std::string_view text) {
  if (text == "literal") return EmbeddingMode::Literal;
  if (text == "aligned") return EmbeddingMode::Aligned;
  throw Error(ErrorCode::InvalidArgument, "unknown embedding mode '" + std::string(text) + "'");
}

namespace {

std::vector<std::uint8_t> clause_bits(const std::vector<std::size_t>& vars, const Evaluation& v) {
  std::vector<std::uint8_t> bits;
  bits.reserve(vars.size());
  for (auto x : vars) bits.push_back(v(x));
  return bits;
}

DenseMatrix literal_matrix(const std::vector<std::uint8_t>& bits, std::size_t n, Complex scale) {
  const std::size_t k = bits.size();
  const DenseMatrix local = DenseMatrix::identity(std::size_t{1} << k) - outer(basis_vector(bits));
  return kron(local.scaled(scale), DenseMatrix::identity(std::size_t{1} << (n - k)));
}

// Entry j is zero exactly when the bits of j at the clause variables' qubit
// positions (x1 is the most significant bit) spell out v on those variables.
DenseMatrix aligned_matrix(const std::vector<std::size_t>& vars, const std::vector<std::uint8_t>& bits,
                           std::size_t n, Complex scale) {
  const std::size_t dim = std::size_t{1} << n;
  std::size_t mask = 0;
  std::size_t pattern = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::size_t bit = std::size_t{1} << (n - vars[i]);
    mask |= bit;
    if (bits[i]) pattern |= bit;
  }
  std::vector<Complex> d(dim);
  for (std::size_t j = 0; j < dim; ++j) d[j] = (j & mask) == pattern ? Complex{} : scale;
  return DenseMatrix::diagonal(std::move(d));
}

}  // namespace

QuantumAssignment quantum_assignment(const Formula& f, std::size_t clause_index, const Evaluation& v,
                                     EmbeddingMode mode, Complex scale) {
  if (scale == Complex{}) throw Error(ErrorCode::ZeroScale, "quantum assignment scale must be nonzero");
  const Clause& clause = f.clause(clause_index);
  if (!evaluate(f, v)) {
    throw Error(ErrorCode::SourceUnsatisfied, "evaluation " + v.to_bitstring() + " does not satisfy the formula");
  }
  if (f.num_variables() > 20) throw Error(ErrorCode::TooManyVariables, "projectors limited to 20 qubits");

  QuantumAssignment q;
  q.clause_index = clause_index;
  q.mode = mode;
  q.scale = scale;
  q.clause_vars = clause.variables();
  const auto bits = clause_bits(q.clause_vars, v);
  q.matrix = mode == EmbeddingMode::Literal ? literal_matrix(bits, f.num_variables(), scale)
                                            : aligned_matrix(q.clause_vars, bits, f.num_variables(), scale);
  return q;
}

std::vector<QuantumAssignment> quantum_assignments(const Formula& f, const Evaluation& v, EmbeddingMode mode,
                                                   Complex scale) {
  std::vector<QuantumAssignment> out;
  out.reserve(f.num_clauses());
  for (std::size_t i = 1; i <= f.num_clauses(); ++i) out.push_back(quantum_assignment(f, i, v, mode, scale));
  return out;
}

StateVector natural_conversion(const Formula& f, const Evaluation& v) {
  if (v.size() != f.num_variables()) {
    throw Error(ErrorCode::PartialEvaluation, "evaluation covers " + std::to_string(v.size()) +
                                                  " variables, formula has " + std::to_string(f.num_variables()));
  }
  return basis_vector(v.bits());
}

Complex residual(const QuantumAssignment& q, const StateVector& w) { return inner(w, q.matrix.apply(w)); }

}  // namespace qsatlab
