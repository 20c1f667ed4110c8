#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qsatlab/linalg.hpp"
#include "qsatlab/qassign.hpp"

namespace qsatlab {

struct PromiseConfig {
  double epsilon = 0.0;
  double tol = kDefaultTolerance;

  /// epsilon = 1 / (8 n^3).
  static PromiseConfig for_qubits(std::size_t n, double tol = kDefaultTolerance);
  /// Throws InvalidArgument unless 0 < tol < epsilon.
  void validate() const;
};

struct QSatVerdict {
  bool satisfiable = false;
  std::optional<StateVector> witness;
  double lambda_min = 0.0;
  /// Bounds on min over unit w of max_i <w|psi_i|w>: lambda_min/m and lambda_min.
  double gap_lower = 0.0;
  double gap_upper = 0.0;
  bool promise_met = false;
  /// Largest |<witness|psi_i|witness>| over the normalized matrices.
  double max_witness_residual = 0.0;
  /// Whether the null space came from exact elimination.
  bool exact = false;
  std::vector<Complex> raw_scales;
};

/// Decides quantum satisfiability of the (scale-normalized) assignments via
/// their common null space.
QSatVerdict qsat_decide(std::span<const QuantumAssignment> assignments, const PromiseConfig& cfg);

/// Brute-force check over computational basis states; every matrix must be
/// diagonal. Independent of the elimination route.
QSatVerdict diagonal_oracle(std::span<const QuantumAssignment> assignments);

}  // namespace qsatlab
