#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qsatlab {

using Complex = std::complex<double>;

constexpr std::size_t kMaxDenseDim = std::size_t{1} << 14;
constexpr std::size_t kMaxDiagonalDim = std::size_t{1} << 20;
constexpr double kDefaultTolerance = 1e-9;

bool is_power_of_two(std::size_t x);

/// Amplitudes over the computational basis of 2^n qubit states.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> entries);

  static StateVector zero(std::size_t dim);

  std::size_t dim() const { return entries_.size(); }
  std::size_t num_qubits() const;
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Complex> entries() const { return entries_; }

  double norm() const;
  /// Index of the single nonzero unit entry, or dim() if not a basis vector.
  std::size_t basis_index() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> entries_;
};

/// Square matrix over a 2^n space. Diagonal matrices keep only their
/// diagonal; `is_diagonal()` is the storage hint, not a structural scan.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  static DenseMatrix zero(std::size_t dim);
  static DenseMatrix identity(std::size_t dim);
  static DenseMatrix diagonal(std::vector<Complex> diag);
  /// Row-major dim*dim entries. Never sets the diagonal hint.
  static DenseMatrix from_rows(std::size_t dim, std::vector<Complex> row_major);

  std::size_t dim() const { return dim_; }
  bool is_diagonal() const { return diagonal_; }
  Complex at(std::size_t row, std::size_t col) const;
  /// Diagonal entries (valid for either storage form).
  std::vector<Complex> diagonal_entries() const;
  /// Full row-major expansion; fails above kMaxDenseDim.
  std::vector<Complex> row_major() const;
  /// True when every off-diagonal entry is exactly zero.
  bool structurally_diagonal() const;
  /// Re-stores a structurally diagonal matrix with the diagonal hint.
  DenseMatrix compacted() const;

  Complex trace() const;
  DenseMatrix operator+(const DenseMatrix& rhs) const;
  DenseMatrix operator-(const DenseMatrix& rhs) const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix scaled(Complex factor) const;
  StateVector apply(const StateVector& v) const;
  DenseMatrix adjoint() const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  DenseMatrix(std::size_t dim, bool diagonal, std::vector<Complex> data);

  std::size_t dim_ = 0;
  bool diagonal_ = false;
  std::vector<Complex> data_;
};

/// Standard basis vector at index sum(bits[i] * 2^(n-1-i)); leftmost bit is
/// the most significant.
StateVector basis_vector(std::span<const std::uint8_t> bits);
StateVector basis_vector_at(std::size_t index, std::size_t dim);

/// sum_i conj(v_i) * w_i
Complex inner(const StateVector& v, const StateVector& w);
/// |v><v|; carries the diagonal hint when v is a computational basis vector.
DenseMatrix outer(const StateVector& v);
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// m / scale with each entry computed as an exact rational quotient before
/// rounding, so a*P / a recovers P bit-exactly for 0/1 matrices P.
DenseMatrix divided_by(const DenseMatrix& m, Complex scale);

bool is_hermitian(const DenseMatrix& m, double tol);
/// Throws NotHermitian / NotPSD. Exact (tol ignored) when every entry is a
/// Gaussian integer.
void require_hermitian_psd(const DenseMatrix& m, double tol);
/// Whether every entry has integral real and imaginary parts.
bool has_gaussian_integer_entries(const DenseMatrix& m);

enum class NullspaceMethod { Auto, Exact, Floating };

struct NullspaceResult {
  std::vector<StateVector> basis;
  bool exact = false;
};

/// Orthonormal basis of the intersection of the kernels of `mats`.
///
/// Auto picks exact Gaussian-rational elimination when every entry of every
/// matrix is a Gaussian integer, and floating elimination with pivot
/// threshold `tol` otherwise. Exact is also accepted for arbitrary finite
/// doubles, which are read as the dyadic rationals they represent. Large all-
/// diagonal inputs (dim > kDiagonalEliminationMaxDim) skip elimination and
/// read the kernel off the diagonals.
NullspaceResult common_nullspace_detailed(std::span<const DenseMatrix> mats, double tol,
                                          NullspaceMethod method = NullspaceMethod::Auto);
std::vector<StateVector> common_nullspace(std::span<const DenseMatrix> mats, double tol,
                                          NullspaceMethod method = NullspaceMethod::Auto);

constexpr std::size_t kEliminationMaxDim = std::size_t{1} << 8;
/// Inputs all stored diagonal skip elimination above this dimension.
constexpr std::size_t kDiagonalEliminationMaxDim = std::size_t{1} << 4;

/// Largest distance from a vector of `basis_a` to span(basis_b) and vice
/// versa. Both bases must be orthonormal; differing counts report +inf.
double subspace_distance(std::span<const StateVector> basis_a, std::span<const StateVector> basis_b);

/// Smallest eigenvalue of a Hermitian PSD matrix. Diagonal matrices return
/// the minimum diagonal entry; otherwise power iteration on c*I - M with
/// c = trace(M).
double min_eigen_psd(const DenseMatrix& m, double tol = kDefaultTolerance, std::size_t max_iters = 200000);

}  // namespace qsatlab
