#include "qsatlab/checker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsatlab/error.hpp"

namespace qsatlab {

PromiseConfig PromiseConfig::for_qubits(std::size_t n, double tol) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
  return PromiseConfig{1.0 / (8.0 * nn * nn * nn), tol};
}

void PromiseConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!(tol < epsilon)) throw Error(ErrorCode::InvalidArgument, "tol must be smaller than epsilon");
}

namespace {

std::size_t common_dim(std::span<const QuantumAssignment> assignments) {
  if (assignments.empty()) throw Error(ErrorCode::EmptyInstance, "no quantum assignments given");
  const std::size_t dim = assignments.front().matrix.dim();
  for (const auto& q : assignments) {
    if (q.matrix.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "assignment dimensions " + std::to_string(dim) + " vs " + std::to_string(q.matrix.dim()));
    }
  }
  return dim;
}

void fill_gap(QSatVerdict& verdict, std::size_t m, double epsilon) {
  verdict.gap_upper = verdict.lambda_min;
  verdict.gap_lower = verdict.lambda_min / static_cast<double>(m);
  verdict.promise_met = verdict.satisfiable || verdict.gap_lower >= epsilon;
}

}  // namespace

QSatVerdict qsat_decide(std::span<const QuantumAssignment> assignments, const PromiseConfig& cfg) {
  cfg.validate();
  const std::size_t dim = common_dim(assignments);

  QSatVerdict verdict;
  std::vector<DenseMatrix> normalized;
  normalized.reserve(assignments.size());
  for (const auto& q : assignments) {
    verdict.raw_scales.push_back(q.scale);
    normalized.push_back(divided_by(q.matrix, q.scale));
  }

  const auto kernel = common_nullspace_detailed(normalized, cfg.tol);
  verdict.exact = kernel.exact;
  verdict.satisfiable = !kernel.basis.empty();
  if (verdict.satisfiable) {
    verdict.witness = kernel.basis.front();
    for (const auto& m : normalized) {
      const double r = std::abs(inner(*verdict.witness, m.apply(*verdict.witness)));
      verdict.max_witness_residual = std::max(verdict.max_witness_residual, r);
    }
  }

  DenseMatrix sum = DenseMatrix::zero(dim);
  for (const auto& m : normalized) sum = sum + m;
  verdict.lambda_min = min_eigen_psd(sum, cfg.tol);
  if (verdict.satisfiable && std::abs(verdict.lambda_min) <= cfg.tol) verdict.lambda_min = 0.0;
  fill_gap(verdict, assignments.size(), cfg.epsilon);
  return verdict;
}

QSatVerdict diagonal_oracle(std::span<const QuantumAssignment> assignments) {
  const std::size_t dim = common_dim(assignments);
  std::vector<double> summed(dim, 0.0);
  std::vector<bool> all_zero(dim, true);
  QSatVerdict verdict;
  for (const auto& q : assignments) {
    if (q.scale == Complex{}) throw Error(ErrorCode::ZeroScale, "assignment with zero scale");
    verdict.raw_scales.push_back(q.scale);
    if (!q.matrix.structurally_diagonal()) {
      throw Error(ErrorCode::NotDiagonal, "assignment " + std::to_string(q.clause_index) + " is not diagonal");
    }
    const auto diag = q.matrix.diagonal_entries();
    for (std::size_t i = 0; i < dim; ++i) {
      const Complex entry = diag[i] / q.scale;
      summed[i] += entry.real();
      if (entry != Complex{}) all_zero[i] = false;
    }
  }
  verdict.exact = true;
  for (std::size_t i = 0; i < dim; ++i) {
    if (all_zero[i]) {
      verdict.satisfiable = true;
      verdict.witness = basis_vector_at(i, dim);
      break;
    }
  }
  verdict.lambda_min = *std::min_element(summed.begin(), summed.end());
  fill_gap(verdict, assignments.size(), 0.0);
  return verdict;
}

}  // namespace qsatlab
