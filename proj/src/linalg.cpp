#include "qsatlab/linalg.hpp"

#include <algorithm>
#include <set>
#include <cmath>
#include <limits>
#include <string>

#include "exact.hpp"
#include "qsatlab/error.hpp"

namespace qsatlab {

namespace {

void require_power_of_two(std::size_t dim, const char* what) {
  if (!is_power_of_two(dim)) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " dimension " + std::to_string(dim) +
                                                  " is not a power of two");
  }
}

void require_dense_cap(std::size_t dim) {
  if (dim > kMaxDenseDim) {
    throw Error(ErrorCode::BoundsExceeded,
                "dense dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(kMaxDenseDim));
  }
}

void require_diagonal_cap(std::size_t dim) {
  if (dim > kMaxDiagonalDim) {
    throw Error(ErrorCode::BoundsExceeded,
                "diagonal dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(kMaxDiagonalDim));
  }
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool is_integral(double x) { return std::isfinite(x) && std::nearbyint(x) == x && std::abs(x) < 9007199254740992.0; }

bool is_gaussian_integer(Complex z) { return is_integral(z.real()) && is_integral(z.imag()); }

}  // namespace

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  require_power_of_two(entries_.size(), "state vector");
  require_diagonal_cap(entries_.size());
}

StateVector StateVector::zero(std::size_t dim) { return StateVector(std::vector<Complex>(dim)); }

std::size_t StateVector::num_qubits() const {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim()) ++n;
  return n;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& z : entries_) acc += std::norm(z);
  return std::sqrt(acc);
}

std::size_t StateVector::basis_index() const {
  std::size_t found = dim();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (entries_[i] == Complex{0.0, 0.0}) continue;
    if (entries_[i] != Complex{1.0, 0.0} || found != dim()) return dim();
    found = i;
  }
  return found;
}

// ---------------------------------------------------------------- DenseMatrix

DenseMatrix::DenseMatrix(std::size_t dim, bool diagonal, std::vector<Complex> data)
    : dim_(dim), diagonal_(diagonal), data_(std::move(data)) {}

DenseMatrix DenseMatrix::zero(std::size_t dim) {
  require_power_of_two(dim, "matrix");
  require_diagonal_cap(dim);
  return DenseMatrix(dim, true, std::vector<Complex>(dim));
}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  require_power_of_two(dim, "matrix");
  require_diagonal_cap(dim);
  return DenseMatrix(dim, true, std::vector<Complex>(dim, Complex{1.0, 0.0}));
}

DenseMatrix DenseMatrix::diagonal(std::vector<Complex> diag) {
  require_power_of_two(diag.size(), "matrix");
  require_diagonal_cap(diag.size());
  const auto dim = diag.size();
  return DenseMatrix(dim, true, std::move(diag));
}

DenseMatrix DenseMatrix::from_rows(std::size_t dim, std::vector<Complex> row_major) {
  require_power_of_two(dim, "matrix");
  require_dense_cap(dim);
  if (row_major.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(row_major.size()));
  }
  return DenseMatrix(dim, false, std::move(row_major));
}

Complex DenseMatrix::at(std::size_t row, std::size_t col) const {
  if (diagonal_) return row == col ? data_[row] : Complex{};
  return data_[row * dim_ + col];
}

std::vector<Complex> DenseMatrix::diagonal_entries() const {
  if (diagonal_) return data_;
  std::vector<Complex> d(dim_);
  for (std::size_t i = 0; i < dim_; ++i) d[i] = data_[i * dim_ + i];
  return d;
}

std::vector<Complex> DenseMatrix::row_major() const {
  if (!diagonal_) return data_;
  require_dense_cap(dim_);
  std::vector<Complex> out(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i * dim_ + i] = data_[i];
  return out;
}

bool DenseMatrix::structurally_diagonal() const {
  if (diagonal_) return true;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i != j && data_[i * dim_ + j] != Complex{}) return false;
    }
  }
  return true;
}

DenseMatrix DenseMatrix::compacted() const {
  if (diagonal_ || !structurally_diagonal()) return *this;
  return DenseMatrix(dim_, true, diagonal_entries());
}

Complex DenseMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& rhs) const {
  require_same_dim(dim_, rhs.dim_);
  if (diagonal_ && rhs.diagonal_) {
    std::vector<Complex> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = data_[i] + rhs.data_[i];
    return DenseMatrix(dim_, true, std::move(d));
  }
  auto out = row_major();
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] += rhs.at(i, j);
  }
  return DenseMatrix(dim_, false, std::move(out));
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const { return *this + rhs.scaled(Complex{-1.0, 0.0}); }

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  require_same_dim(dim_, rhs.dim_);
  if (diagonal_ && rhs.diagonal_) {
    std::vector<Complex> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = data_[i] * rhs.data_[i];
    return DenseMatrix(dim_, true, std::move(d));
  }
  require_dense_cap(dim_);
  std::vector<Complex> out(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t l = 0; l < dim_; ++l) {
      const Complex a = at(i, l);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < dim_; ++j) out[i * dim_ + j] += a * rhs.at(l, j);
    }
  }
  return DenseMatrix(dim_, false, std::move(out));
}

DenseMatrix DenseMatrix::scaled(Complex factor) const {
  auto data = data_;
  for (auto& z : data) z *= factor;
  return DenseMatrix(dim_, diagonal_, std::move(data));
}

StateVector DenseMatrix::apply(const StateVector& v) const {
  require_same_dim(dim_, v.dim());
  std::vector<Complex> out(dim_);
  if (diagonal_) {
    for (std::size_t i = 0; i < dim_; ++i) out[i] = data_[i] * v[i];
  } else {
    for (std::size_t i = 0; i < dim_; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < dim_; ++j) acc += data_[i * dim_ + j] * v[j];
      out[i] = acc;
    }
  }
  return StateVector(std::move(out));
}

DenseMatrix DenseMatrix::adjoint() const {
  if (diagonal_) {
    auto d = data_;
    for (auto& z : d) z = std::conj(z);
    return DenseMatrix(dim_, true, std::move(d));
  }
  std::vector<Complex> out(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[j * dim_ + i] = std::conj(data_[i * dim_ + j]);
  }
  return DenseMatrix(dim_, false, std::move(out));
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.dim_ != b.dim_) return false;
  if (a.diagonal_ && b.diagonal_) return a.data_ == b.data_;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    for (std::size_t j = 0; j < a.dim_; ++j) {
      if (a.at(i, j) != b.at(i, j)) return false;
    }
  }
  return true;
}

// ----------------------------------------------------------- free functions

StateVector basis_vector(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw Error(ErrorCode::InvalidArgument, "basis vector needs at least one bit");
  if (bits.size() > 20) throw Error(ErrorCode::BoundsExceeded, "basis vector limited to 20 qubits");
  std::size_t index = 0;
  for (auto b : bits) {
    if (b > 1) throw Error(ErrorCode::InvalidArgument, "basis bits must be 0 or 1");
    index = (index << 1) | b;
  }
  return basis_vector_at(index, std::size_t{1} << bits.size());
}

StateVector basis_vector_at(std::size_t index, std::size_t dim) {
  if (index >= dim) throw Error(ErrorCode::IndexOutOfRange, "basis index outside dimension");
  auto v = StateVector::zero(dim);
  v[index] = Complex{1.0, 0.0};
  return v;
}

Complex inner(const StateVector& v, const StateVector& w) {
  require_same_dim(v.dim(), w.dim());
  Complex acc{};
  for (std::size_t i = 0; i < v.dim(); ++i) acc += std::conj(v[i]) * w[i];
  return acc;
}

DenseMatrix outer(const StateVector& v) {
  const std::size_t dim = v.dim();
  const std::size_t idx = v.basis_index();
  bool zero = true;
  for (std::size_t i = 0; i < dim && zero; ++i) zero = v[i] == Complex{};
  if (idx != dim || zero) {
    std::vector<Complex> d(dim);
    if (idx != dim) d[idx] = Complex{1.0, 0.0};
    return DenseMatrix::diagonal(std::move(d));
  }
  require_dense_cap(dim);
  std::vector<Complex> out(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] = v[i] * std::conj(v[j]);
  }
  return DenseMatrix::from_rows(dim, std::move(out));
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  const std::size_t dim = da * db;
  if (a.is_diagonal() && b.is_diagonal()) {
    require_diagonal_cap(dim);
    const auto ad = a.diagonal_entries();
    const auto bd = b.diagonal_entries();
    std::vector<Complex> d(dim);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < db; ++j) d[i * db + j] = ad[i] * bd[j];
    }
    return DenseMatrix::diagonal(std::move(d));
  }
  require_dense_cap(dim);
  std::vector<Complex> out(dim * dim);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a.at(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) out[(i * db + k) * dim + (j * db + l)] = aij * b.at(k, l);
      }
    }
  }
  return DenseMatrix::from_rows(dim, std::move(out));
}

DenseMatrix divided_by(const DenseMatrix& m, Complex scale) {
  if (scale == Complex{}) throw Error(ErrorCode::ZeroScale, "cannot normalize by a zero scale");
  if (scale == Complex{1.0, 0.0}) return m;
  const exact::GaussianRational den(scale);
  auto divide = [&](Complex z) {
    if (z == Complex{}) return z;
    return (exact::GaussianRational(z) / den).to_complex();
  };
  if (m.is_diagonal()) {
    auto d = m.diagonal_entries();
    for (auto& z : d) z = divide(z);
    return DenseMatrix::diagonal(std::move(d));
  }
  auto rows = m.row_major();
  for (auto& z : rows) z = divide(z);
  return DenseMatrix::from_rows(m.dim(), std::move(rows));
}

bool has_gaussian_integer_entries(const DenseMatrix& m) {
  if (m.is_diagonal()) {
    const auto d = m.diagonal_entries();
    return std::all_of(d.begin(), d.end(), is_gaussian_integer);
  }
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (!is_gaussian_integer(m.at(i, j))) return false;
    }
  }
  return true;
}

bool is_hermitian(const DenseMatrix& m, double tol) {
  if (m.is_diagonal()) {
    const auto d = m.diagonal_entries();
    return std::all_of(d.begin(), d.end(), [&](Complex z) { return std::abs(z.imag()) <= tol; });
  }
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      if (std::abs(m.at(i, j) - std::conj(m.at(j, i))) > tol) return false;
    }
  }
  return true;
}

namespace {

double max_abs_entry(const DenseMatrix& m) {
  double mx = 0.0;
  if (m.is_diagonal()) {
    for (const auto& z : m.diagonal_entries()) mx = std::max(mx, std::abs(z));
    return mx;
  }
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) mx = std::max(mx, std::abs(m.at(i, j)));
  }
  return mx;
}

bool floating_is_psd(const DenseMatrix& m, double tol) {
  const std::size_t dim = m.dim();
  auto a = m.row_major();
  const double thr = tol * std::max(1.0, max_abs_entry(m));
  std::vector<bool> done(dim, false);
  for (std::size_t step = 0; step < dim; ++step) {
    std::size_t p = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!done[i] && (p == dim || a[i * dim + i].real() > a[p * dim + p].real())) p = i;
    }
    if (p == dim) break;
    const double pivot = a[p * dim + p].real();
    if (pivot < -thr) return false;
    if (pivot <= thr) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < dim; ++j) {
          if (!done[j] && std::abs(a[i * dim + j]) > std::sqrt(thr)) return false;
        }
      }
      return true;
    }
    done[p] = true;
    for (std::size_t i = 0; i < dim; ++i) {
      if (done[i]) continue;
      const Complex aip = a[i * dim + p];
      if (aip == Complex{}) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (!done[j]) a[i * dim + j] -= aip * a[p * dim + j] / pivot;
      }
    }
  }
  return true;
}

}  // namespace

void require_hermitian_psd(const DenseMatrix& m, double tol) {
  const bool exact_entries = has_gaussian_integer_entries(m);
  const double herm_tol = exact_entries ? 0.0 : tol;
  if (!is_hermitian(m, herm_tol)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");

  if (m.is_diagonal()) {
    for (const auto& z : m.diagonal_entries()) {
      if (z.real() < -herm_tol) throw Error(ErrorCode::NotPSD, "negative diagonal entry");
    }
    return;
  }
  bool psd = false;
  if (exact_entries && m.dim() <= kEliminationMaxDim) {
    std::vector<exact::Row> rows(m.dim(), exact::Row(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) rows[i][j] = exact::GaussianRational(m.at(i, j));
    }
    psd = exact::is_psd(std::move(rows));
  } else {
    psd = floating_is_psd(m, tol);
  }
  if (!psd) throw Error(ErrorCode::NotPSD, "matrix is not positive semidefinite");
}

// ------------------------------------------------------------- null space

namespace {

std::vector<StateVector> normalize_all(std::vector<std::vector<Complex>> vecs) {
  std::vector<StateVector> out;
  out.reserve(vecs.size());
  for (auto& v : vecs) {
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : v) z /= nrm;
    out.emplace_back(std::move(v));
  }
  return out;
}

std::vector<StateVector> diagonal_kernel(std::span<const DenseMatrix> mats, std::size_t dim, double tol) {
  std::vector<bool> in_kernel(dim, true);
  for (const auto& m : mats) {
    const auto d = m.diagonal_entries();
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::abs(d[i]) > tol) in_kernel[i] = false;
    }
  }
  std::vector<StateVector> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (in_kernel[i]) out.push_back(basis_vector_at(i, dim));
  }
  return out;
}

std::vector<StateVector> exact_kernel(std::span<const DenseMatrix> mats, std::size_t dim) {
  // Stacked projectors repeat many rows; duplicates do not change the kernel
  // and converting each entry to mpq dominates the cost.
  auto less = [](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](Complex x, Complex y) {
      return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
  };
  std::set<std::vector<Complex>, decltype(less)> unique(less);
  for (const auto& m : mats) {
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<Complex> row(dim);
      bool nonzero = false;
      for (std::size_t j = 0; j < dim; ++j) {
        row[j] = m.at(i, j);
        nonzero = nonzero || row[j] != Complex{};
      }
      if (nonzero) unique.insert(std::move(row));
    }
  }
  std::vector<exact::Row> rows;
  rows.reserve(unique.size());
  for (const auto& r : unique) {
    exact::Row row;
    row.reserve(dim);
    for (const auto& z : r) row.emplace_back(z);
    rows.push_back(std::move(row));
  }
  const auto basis = exact::gram_schmidt(exact::kernel(std::move(rows), dim));
  std::vector<std::vector<Complex>> vecs;
  vecs.reserve(basis.size());
  for (const auto& b : basis) {
    // Scale by the largest component first so the double conversion keeps
    // relative precision for rationals with large numerators.
    mpq_class biggest = 0;
    for (const auto& z : b) {
      const mpq_class re = abs(z.re);
      const mpq_class im = abs(z.im);
      if (re > biggest) biggest = re;
      if (im > biggest) biggest = im;
    }
    std::vector<Complex> v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      v[i] = Complex{mpq_class(b[i].re / biggest).get_d(), mpq_class(b[i].im / biggest).get_d()};
    }
    vecs.push_back(std::move(v));
  }
  return normalize_all(std::move(vecs));
}

std::vector<StateVector> floating_kernel(std::span<const DenseMatrix> mats, std::size_t dim, double tol) {
  double scale = 1.0;
  for (const auto& m : mats) scale = std::max(scale, max_abs_entry(m));
  const double thr = tol * scale;

  std::vector<std::vector<Complex>> rows;
  for (const auto& m : mats) {
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<Complex> row(dim);
      bool nonzero = false;
      for (std::size_t j = 0; j < dim; ++j) {
        row[j] = m.at(i, j);
        nonzero = nonzero || row[j] != Complex{};
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    double best = 0.0;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      const double mag = std::abs(rows[r][col]);
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= thr) {
      for (std::size_t r = rank; r < rows.size(); ++r) rows[r][col] = Complex{};
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    const Complex inv = Complex{1.0, 0.0} / rows[rank][col];
    for (std::size_t j = col; j < dim; ++j) rows[rank][j] *= inv;
    rows[rank][col] = Complex{1.0, 0.0};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const Complex factor = rows[r][col];
      if (factor == Complex{}) continue;
      for (std::size_t j = col; j < dim; ++j) rows[r][j] -= factor * rows[rank][j];
      rows[r][col] = Complex{};
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(dim, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Complex>> kernel;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Complex> x(dim);
    x[free] = Complex{1.0, 0.0};
    for (std::size_t r = 0; r < rank; ++r) x[pivot_cols[r]] = -rows[r][free];
    kernel.push_back(std::move(x));
  }

  // Modified Gram-Schmidt, two passes.
  std::vector<std::vector<Complex>> ortho;
  for (auto v : kernel) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : ortho) {
        Complex proj{};
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(u[i]) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * u[i];
      }
    }
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm <= tol) continue;
    for (auto& z : v) z /= nrm;
    ortho.push_back(std::move(v));
  }
  return normalize_all(std::move(ortho));
}

}  // namespace

NullspaceResult common_nullspace_detailed(std::span<const DenseMatrix> mats, double tol, NullspaceMethod method) {
  if (mats.empty()) throw Error(ErrorCode::EmptyInstance, "no matrices given");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const std::size_t dim = mats.front().dim();
  bool all_diagonal = true;
  bool all_exact = true;
  for (const auto& m : mats) {
    require_same_dim(dim, m.dim());
    require_hermitian_psd(m, tol);
    all_diagonal = all_diagonal && m.is_diagonal();
    all_exact = all_exact && has_gaussian_integer_entries(m);
  }

  const bool use_exact =
      method == NullspaceMethod::Exact || (method == NullspaceMethod::Auto && all_exact);

  if (all_diagonal && dim > kDiagonalEliminationMaxDim) {
    return NullspaceResult{diagonal_kernel(mats, dim, use_exact ? 0.0 : tol), use_exact};
  }
  if (dim > kEliminationMaxDim) {
    throw Error(ErrorCode::BoundsExceeded,
                "dense null space limited to dimension " + std::to_string(kEliminationMaxDim));
  }
  if (use_exact) return NullspaceResult{exact_kernel(mats, dim), true};
  return NullspaceResult{floating_kernel(mats, dim, tol), false};
}

std::vector<StateVector> common_nullspace(std::span<const DenseMatrix> mats, double tol, NullspaceMethod method) {
  return common_nullspace_detailed(mats, tol, method).basis;
}

double subspace_distance(std::span<const StateVector> basis_a, std::span<const StateVector> basis_b) {
  if (basis_a.size() != basis_b.size()) return std::numeric_limits<double>::infinity();
  auto one_way = [](std::span<const StateVector> from, std::span<const StateVector> onto) {
    double worst = 0.0;
    for (const auto& v : from) {
      auto residual = std::vector<Complex>(v.entries().begin(), v.entries().end());
      for (const auto& u : onto) {
        const Complex proj = inner(u, v);
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= proj * u[i];
      }
      double nrm = 0.0;
      for (const auto& z : residual) nrm += std::norm(z);
      worst = std::max(worst, std::sqrt(nrm));
    }
    return worst;
  };
  return std::max(one_way(basis_a, basis_b), one_way(basis_b, basis_a));
}

// -------------------------------------------------------- smallest eigenvalue

double min_eigen_psd(const DenseMatrix& m, double tol, std::size_t max_iters) {
  if (!is_hermitian(m, tol)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  const std::size_t dim = m.dim();
  if (m.structurally_diagonal()) {
    const auto d = m.diagonal_entries();
    double lo = d.front().real();
    for (const auto& z : d) lo = std::min(lo, z.real());
    return lo;
  }

  const double c = m.trace().real();
  if (c <= 0.0) return 0.0;  // PSD with zero trace is the zero matrix
  const DenseMatrix shifted = DenseMatrix::identity(dim).scaled(Complex{c, 0.0}) - m;

  auto run = [&](std::vector<Complex> start, double& out) {
    StateVector x(std::move(start));
    const double n0 = x.norm();
    for (std::size_t i = 0; i < dim; ++i) x[i] /= n0;
    for (std::size_t it = 0; it < max_iters; ++it) {
      StateVector y = shifted.apply(x);
      const double mu = inner(x, y).real();
      double res = 0.0;
      for (std::size_t i = 0; i < dim; ++i) res += std::norm(y[i] - mu * x[i]);
      res = std::sqrt(res);
      const double ny = y.norm();
      if (ny == 0.0) return false;  // start vector in the kernel of cI - M
      if (res <= tol) {
        out = c - mu;
        return true;
      }
      for (std::size_t i = 0; i < dim; ++i) y[i] /= ny;
      x = std::move(y);
    }
    return false;
  };

  double result = 0.0;
  if (run(std::vector<Complex>(dim, Complex{1.0, 0.0}), result)) return std::max(result, 0.0);

  std::vector<Complex> perturbed(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    perturbed[i] = Complex{1.0 + 0.5 * std::sin(1.0 + static_cast<double>(i)), 0.25 * std::cos(2.0 * static_cast<double>(i))};
  }
  if (run(std::move(perturbed), result)) return std::max(result, 0.0);
  throw Error(ErrorCode::NoConvergence, "power iteration did not reach tolerance in " +
                                            std::to_string(max_iters) + " iterations");
}

}  // namespace qsatlab
