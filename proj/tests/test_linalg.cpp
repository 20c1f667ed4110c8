#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qsatlab/error.hpp"
#include "qsatlab/linalg.hpp"

using namespace qsatlab;

namespace {

constexpr Complex I{0.0, 1.0};

StateVector random_vector(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(dim);
  for (auto& z : v) z = Complex{g(rng), g(rng)};
  return StateVector(std::move(v));
}

DenseMatrix random_dense(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<Complex> m(dim * dim);
  for (auto& z : m) z = Complex{g(rng), g(rng)};
  return DenseMatrix::from_rows(dim, std::move(m));
}

DenseMatrix diag_of(std::initializer_list<double> values) {
  std::vector<Complex> d;
  for (double x : values) d.emplace_back(x, 0.0);
  return DenseMatrix::diagonal(std::move(d));
}

double max_entry_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
  }
  return worst;
}

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// M = B^H B for a random Gaussian-integer r x dim matrix B: Hermitian PSD,
// exactly integral, rank <= r.
DenseMatrix gaussian_integer_psd(std::mt19937& rng, std::size_t dim, std::size_t r) {
  std::vector<Complex> b(r * dim);
  for (auto& z : b) z = Complex{static_cast<double>(static_cast<int>(rng() % 5) - 2),
                                static_cast<double>(static_cast<int>(rng() % 3) - 1)};
  std::vector<Complex> m(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Complex acc{};
      for (std::size_t l = 0; l < r; ++l) acc += std::conj(b[l * dim + i]) * b[l * dim + j];
      m[i * dim + j] = acc;
    }
  }
  return DenseMatrix::from_rows(dim, std::move(m));
}

}  // namespace

TEST_CASE("basis_vector uses most-significant-first bit order") {
  const std::array<std::uint8_t, 2> b10{1, 0};
  const auto v = basis_vector(b10);
  CHECK(v == StateVector({0, 0, 1, 0}));

  const std::array<std::uint8_t, 3> b101{1, 0, 1};
  const auto w = basis_vector(b101);
  CHECK(w.dim() == 8);
  CHECK(w.basis_index() == 5);

  const std::array<std::uint8_t, 1> b0{0};
  CHECK(basis_vector(b0) == StateVector({1, 0}));
}

TEST_CASE("inner product") {
  const std::array<std::uint8_t, 2> b10{1, 0};
  const std::array<std::uint8_t, 2> b11{1, 1};
  CHECK(inner(basis_vector(b10), basis_vector(b10)) == Complex{1, 0});
  CHECK(inner(basis_vector(b10), basis_vector(b11)) == Complex{0, 0});
  const StateVector v({I, 0});
  CHECK(inner(v, v) == Complex{1, 0});
  CHECK(error_of([] { inner(StateVector({1, 0}), StateVector({1, 0, 0, 0})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("property: inner is conjugate symmetric") {
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    const std::size_t dim = std::size_t{1} << (rng() % 6);
    const auto v = random_vector(rng, dim);
    const auto w = random_vector(rng, dim);
    CHECK(std::abs(inner(v, w) - std::conj(inner(w, v))) < 1e-12);
  }
}

TEST_CASE("outer products of basis vectors") {
  const std::array<std::uint8_t, 2> b10{1, 0};
  const std::array<std::uint8_t, 2> b11{1, 1};
  const auto p10 = outer(basis_vector(b10));
  const auto p11 = outer(basis_vector(b11));
  CHECK(p10.is_diagonal());
  CHECK(p10 == diag_of({0, 0, 1, 0}));
  CHECK(p11 == diag_of({0, 0, 0, 1}));
  CHECK(outer(StateVector::zero(4)) == DenseMatrix::zero(4));
}

TEST_CASE("property: outer of a unit vector is a Hermitian idempotent") {
  std::mt19937 rng(2);
  for (int t = 0; t < 20; ++t) {
    auto v = random_vector(rng, std::size_t{1} << (1 + rng() % 4));
    const double nrm = v.norm();
    for (std::size_t i = 0; i < v.dim(); ++i) v[i] /= nrm;
    const auto p = outer(v);
    CHECK(is_hermitian(p, 1e-12));
    CHECK(max_entry_diff(p * p, p) < 1e-12);
  }
}

TEST_CASE("kron examples") {
  CHECK(kron(diag_of({1, 1, 0, 1}), DenseMatrix::identity(2)) == diag_of({1, 1, 1, 1, 0, 0, 1, 1}));
  CHECK(kron(diag_of({1, 1, 1, 0}), DenseMatrix::identity(2)) == diag_of({1, 1, 1, 1, 1, 1, 0, 0}));
  CHECK(kron(DenseMatrix::identity(2), DenseMatrix::identity(2)).is_diagonal());

  std::mt19937 rng(4);
  const auto a = random_dense(rng, 4);
  CHECK(kron(DenseMatrix::identity(1), a) == a);
  CHECK_FALSE(kron(DenseMatrix::identity(1), a).is_diagonal());
}

TEST_CASE("kron matches the index formula") {
  std::mt19937 rng(6);
  const auto a = random_dense(rng, 2);
  const auto b = random_dense(rng, 4);
  const auto k = kron(a, b);
  REQUIRE(k.dim() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) CHECK(k.at(i, j) == a.at(i / 4, j / 4) * b.at(i % 4, j % 4));
  }
}

TEST_CASE("property: kron mixed-product law") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t da = std::size_t{1} << (rng() % 3);
    const std::size_t db = std::size_t{1} << (rng() % 3);
    const auto a = random_dense(rng, da);
    const auto c = random_dense(rng, da);
    const auto b = random_dense(rng, db);
    const auto d = random_dense(rng, db);
    CHECK(max_entry_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("common_nullspace examples") {
  const std::vector<DenseMatrix> ex1{diag_of({1, 1, 1, 1, 0, 0, 1, 1}), diag_of({1, 1, 1, 1, 1, 1, 0, 0})};
  CHECK(common_nullspace(ex1, 1e-9).empty());
  CHECK(common_nullspace(ex1, 1e-9, NullspaceMethod::Floating).empty());

  const std::vector<DenseMatrix> zero{DenseMatrix::zero(4)};
  CHECK(common_nullspace(zero, 1e-9).size() == 4);

  const std::vector<DenseMatrix> eye{DenseMatrix::identity(4)};
  CHECK(common_nullspace(eye, 1e-9).empty());

  // Single projector: kernel spanned by basis vectors at its zero entries.
  const std::vector<DenseMatrix> one{ex1[0]};
  const auto basis = common_nullspace(one, 1e-9);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].basis_index() == 4);
  CHECK(basis[1].basis_index() == 5);
}

TEST_CASE("common_nullspace preconditions") {
  const auto not_herm = DenseMatrix::from_rows(2, {0, 1, 0, 0});
  CHECK(error_of([&] { common_nullspace(std::vector{not_herm}, 1e-9); }) == ErrorCode::NotHermitian);
  const auto indefinite = DenseMatrix::from_rows(2, {0, 1, 1, 0});
  CHECK(error_of([&] { common_nullspace(std::vector{indefinite}, 1e-9); }) == ErrorCode::NotPSD);
  CHECK(error_of([&] { common_nullspace(std::vector{diag_of({1, -1})}, 1e-9); }) == ErrorCode::NotPSD);
  const auto shifted = DenseMatrix::from_rows(2, {0.5, 0.25, 0.25, -0.1});
  CHECK(error_of([&] { common_nullspace(std::vector{shifted}, 1e-9); }) == ErrorCode::NotPSD);
  CHECK(error_of([&] {
          common_nullspace(std::vector{DenseMatrix::zero(2), DenseMatrix::zero(4)}, 1e-9);
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("common_nullspace on a non-diagonal rank-one projector") {
  // |+><+| on one qubit: kernel spanned by |->.
  const auto plus = DenseMatrix::from_rows(2, {0.5, 0.5, 0.5, 0.5});
  const auto res = common_nullspace_detailed(std::vector{plus}, 1e-9);
  CHECK_FALSE(res.exact);
  REQUIRE(res.basis.size() == 1);
  CHECK(std::abs(res.basis[0][0] + res.basis[0][1]) < 1e-12);
  CHECK(std::abs(res.basis[0].norm() - 1.0) < 1e-12);

  const auto exact = common_nullspace_detailed(std::vector{plus}, 1e-9, NullspaceMethod::Exact);
  CHECK(exact.exact);
  CHECK(subspace_distance(exact.basis, res.basis) < 1e-12);
}

TEST_CASE("property: exact and floating null spaces agree on Gaussian-integer PSD matrices") {
  std::mt19937 rng(8);
  for (std::size_t dim : {2U, 4U, 8U, 16U, 32U, 64U}) {
    const int trials = dim >= 32 ? 2 : 6;
    for (int t = 0; t < trials; ++t) {
      const std::size_t mats = 1 + rng() % 3;
      std::vector<DenseMatrix> ms;
      for (std::size_t i = 0; i < mats; ++i) ms.push_back(gaussian_integer_psd(rng, dim, 1 + rng() % (dim / 2 + 1)));
      const auto exact = common_nullspace_detailed(ms, 1e-9);
      CHECK(exact.exact);
      const auto floating = common_nullspace_detailed(ms, 1e-9, NullspaceMethod::Floating);
      CHECK_FALSE(floating.exact);
      REQUIRE(exact.basis.size() == floating.basis.size());
      CHECK(subspace_distance(exact.basis, floating.basis) < 1e-9);
      for (const auto& v : exact.basis) {
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
        for (const auto& m : ms) CHECK(m.apply(v).norm() < 1e-9);
      }
    }
  }
}

TEST_CASE("large all-diagonal inputs read the kernel off the diagonal") {
  std::vector<Complex> d(1024, Complex{1, 0});
  d[17] = 0;
  d[900] = 0;
  const auto basis = common_nullspace(std::vector{DenseMatrix::diagonal(d)}, 1e-9);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].basis_index() == 17);
  CHECK(basis[1].basis_index() == 900);
}

TEST_CASE("property: the diagonal shortcut matches elimination on the same matrices stored densely") {
  std::mt19937 rng(12);
  for (std::size_t dim : {32U, 64U, 128U, 256U}) {
    for (int t = 0; t < 3; ++t) {
      std::vector<DenseMatrix> diag;
      std::vector<DenseMatrix> dense;
      for (int i = 0; i < 3; ++i) {
        std::vector<Complex> d(dim);
        for (auto& z : d) z = (rng() % 8 == 0) ? Complex{} : Complex{static_cast<double>(1 + rng() % 2), 0};
        std::vector<Complex> full(dim * dim);
        for (std::size_t j = 0; j < dim; ++j) full[j * dim + j] = d[j];
        diag.push_back(DenseMatrix::diagonal(d));
        dense.push_back(DenseMatrix::from_rows(dim, std::move(full)));
      }
      REQUIRE_FALSE(dense.front().is_diagonal());
      for (auto method : {NullspaceMethod::Exact, NullspaceMethod::Floating}) {
        const auto fast = common_nullspace(diag, 1e-9, method);
        const auto slow = common_nullspace(dense, 1e-9, method);
        REQUIRE(fast.size() == slow.size());
        CHECK(subspace_distance(fast, slow) < 1e-12);
      }
    }
  }
}

TEST_CASE("divided_by recovers 0/1 matrices exactly") {
  const Complex a{1.0 / 3.0, 0.7};
  const auto p = diag_of({1, 0, 1, 1});
  CHECK(divided_by(p.scaled(a), a) == p);
  CHECK(error_of([&] { divided_by(p, Complex{}); }) == ErrorCode::ZeroScale);
}

TEST_CASE("min_eigen_psd examples") {
  CHECK(min_eigen_psd(diag_of({2, 2, 2, 2, 1, 1, 1, 1})) == 1.0);
  CHECK(min_eigen_psd(DenseMatrix::zero(8)) == 0.0);
  CHECK(min_eigen_psd(DenseMatrix::identity(8)) == 1.0);
  CHECK(min_eigen_psd(DenseMatrix::from_rows(2, {0, 0, 0, 0})) == 0.0);
  CHECK(error_of([] { min_eigen_psd(DenseMatrix::from_rows(2, {1, 1, 0, 1})); }) == ErrorCode::NotHermitian);
}

TEST_CASE("min_eigen_psd by power iteration on rotated diagonals") {
  std::mt19937 rng(9);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = std::size_t{1} << (1 + rng() % 4);
    std::vector<Complex> d(dim);
    double lo = 1e9;
    for (auto& z : d) {
      z = Complex{static_cast<double>(rng() % 4), 0};
      lo = std::min(lo, z.real());
    }
    // Householder reflection H = I - 2 u u^H / |u|^2 is unitary and Hermitian.
    const auto u = random_vector(rng, dim);
    const double nu = u.norm() * u.norm();
    std::vector<Complex> h(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) h[i * dim + j] = (i == j ? 1.0 : 0.0) - 2.0 * u[i] * std::conj(u[j]) / nu;
    }
    const auto hm = DenseMatrix::from_rows(dim, h);
    const auto m = hm * DenseMatrix::diagonal(d) * hm;
    REQUIRE_FALSE(m.structurally_diagonal());
    CHECK(std::abs(min_eigen_psd(m, 1e-9) - lo) < 1e-8);
  }
}

TEST_CASE("property: min_eigen_psd is zero iff the null space is nonempty") {
  std::mt19937 rng(10);
  for (int t = 0; t < 200; ++t) {
    const std::size_t dim = std::size_t{1} << (rng() % 9);
    std::vector<Complex> d(dim);
    for (auto& z : d) z = Complex{static_cast<double>(1 + rng() % 2), 0};
    if (rng() % 2) d[rng() % dim] = 0;
    const auto m = DenseMatrix::diagonal(d);
    CHECK((min_eigen_psd(m) == 0.0) == !common_nullspace(std::vector{m}, 1e-9).empty());
  }
}

TEST_CASE("dimension caps") {
  CHECK(error_of([] { DenseMatrix::zero(3); }) == ErrorCode::DimensionMismatch);
  CHECK(error_of([] { DenseMatrix::identity(kMaxDiagonalDim * 2); }) == ErrorCode::BoundsExceeded);
  CHECK(error_of([] { DenseMatrix::from_rows(kMaxDenseDim * 2, {}); }) == ErrorCode::BoundsExceeded);
}
