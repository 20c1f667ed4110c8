#include "exact.hpp"

#include <cmath>

#include "qsatlab/error.hpp"

namespace qsatlab::exact {

namespace {

mpq_class from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite entry on exact path");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace

GaussianRational::GaussianRational(Complex z) : re(from_double(z.real())), im(from_double(z.imag())) {}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const mpq_class d = b.norm2();
  if (sgn(d) == 0) throw Error(ErrorCode::InvalidArgument, "exact division by zero");
  const GaussianRational num = a * b.conj();
  return {num.re / d, num.im / d};
}

std::vector<Row> kernel(std::vector<Row> rows, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);

    const GaussianRational inv = GaussianRational(mpq_class(1), mpq_class(0)) / rows[rank][col];
    for (std::size_t j = col; j < cols; ++j) {
      if (!rows[rank][j].is_zero()) rows[rank][j] = rows[rank][j] * inv;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const GaussianRational factor = rows[r][col];
      for (std::size_t j = col; j < cols; ++j) {
        if (!rows[rank][j].is_zero()) rows[r][j] = rows[r][j] - factor * rows[rank][j];
      }
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<Row> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row x(cols, GaussianRational(mpq_class(0), mpq_class(0)));
    x[free] = GaussianRational(mpq_class(1), mpq_class(0));
    for (std::size_t r = 0; r < rank; ++r) {
      const auto& entry = rows[r][free];
      if (!entry.is_zero()) x[pivot_cols[r]] = GaussianRational(-entry.re, -entry.im);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

namespace {

GaussianRational inner(const Row& a, const Row& b) {
  GaussianRational acc(mpq_class(0), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    acc = acc + a[i].conj() * b[i];
  }
  return acc;
}

}  // namespace

std::vector<Row> gram_schmidt(const std::vector<Row>& vectors) {
  std::vector<Row> out;
  std::vector<mpq_class> norms;
  for (const auto& v : vectors) {
    Row u = v;
    for (std::size_t j = 0; j < out.size(); ++j) {
      const GaussianRational proj = inner(out[j], u);
      if (proj.is_zero()) continue;
      const GaussianRational coeff(proj.re / norms[j], proj.im / norms[j]);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (!out[j][i].is_zero()) u[i] = u[i] - coeff * out[j][i];
      }
    }
    const mpq_class nrm = inner(u, u).re;
    if (sgn(nrm) == 0) continue;
    out.push_back(std::move(u));
    norms.push_back(nrm);
  }
  return out;
}

bool is_psd(std::vector<Row> m) {
  const std::size_t dim = m.size();
  std::vector<bool> done(dim, false);
  for (std::size_t step = 0; step < dim; ++step) {
    // Largest remaining diagonal entry as pivot.
    std::size_t p = dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (done[i]) continue;
      if (sgn(m[i][i].im) != 0) return false;
      if (p == dim || m[i][i].re > m[p][p].re) p = i;
    }
    if (p == dim) break;
    if (sgn(m[p][p].re) < 0) return false;
    if (sgn(m[p][p].re) == 0) {
      // A PSD matrix with zero maximal diagonal is zero on the remaining block.
      for (std::size_t i = 0; i < dim; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < dim; ++j) {
          if (!done[j] && !m[i][j].is_zero()) return false;
        }
      }
      return true;
    }
    done[p] = true;
    const mpq_class pivot = m[p][p].re;
    for (std::size_t i = 0; i < dim; ++i) {
      if (done[i] || m[i][p].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (done[j] || m[p][j].is_zero()) continue;
        const GaussianRational prod = m[i][p] * m[p][j];
        m[i][j] = m[i][j] - GaussianRational(prod.re / pivot, prod.im / pivot);
      }
    }
  }
  return true;
}

}  // namespace qsatlab::exact
