#pragma once

// Gaussian-rational arithmetic for the exact null-space path. Internal to
// the core library; GMP does not leak into the public headers.

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "qsatlab/linalg.hpp"

namespace qsatlab::exact {

struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() = default;
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  /// Exact: every finite double is a dyadic rational.
  explicit GaussianRational(Complex z);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  /// |z|^2
  mpq_class norm2() const { return re * re + im * im; }
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

using Row = std::vector<GaussianRational>;

/// Basis of {x : A x = 0} for the matrix whose rows are `rows` (each of
/// length `cols`), one vector per free column of the reduced row echelon
/// form, ordered by free-column index.
std::vector<Row> kernel(std::vector<Row> rows, std::size_t cols);

/// Orthogonalizes in place order; drops vectors that become zero.
std::vector<Row> gram_schmidt(const std::vector<Row>& vectors);

/// Pivoted LDL^H test on an exactly Hermitian matrix.
bool is_psd(std::vector<Row> m);

}  // namespace qsatlab::exact
