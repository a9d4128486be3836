#ifndef DPCOX_ORACLE_LINEAR_ALGEBRA_HPP
#define DPCOX_ORACLE_LINEAR_ALGEBRA_HPP

#include <utility>
#include <vector>

#include "dpcox/oracle/scalar.hpp"

namespace dpcox {

// Rank over a field (ModP or mpq_class) by forward elimination.
template <class Field>
int rank_of(DenseMatrix<Field> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = r;
    while (piv < rows && is_zero(m(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const Field inv = Field(1) / m(r, c);
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (is_zero(m(i, c))) continue;
      const Field f = m(i, c) * inv;
      for (Eigen::Index j = c; j < cols; ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

template <class Field>
struct Echelon {
  DenseMatrix<Field> reduced;       // reduced row echelon form, rank rows kept
  std::vector<Eigen::Index> pivots; // pivot column of each kept row
};

template <class Field>
Echelon<Field> row_reduce(DenseMatrix<Field> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = r;
    while (piv < rows && is_zero(m(piv, c))) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    const Field inv = Field(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const Field f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<Field> out;
  out.reduced = m.topRows(r);
  out.pivots = std::move(pivots);
  return out;
}

// Columns form a basis of {v : m v = 0}; one column per free variable, with
// that variable set to 1.
template <class Field>
DenseMatrix<Field> kernel_basis(const DenseMatrix<Field>& m) {
  const Eigen::Index cols = m.cols();
  auto ech = row_reduce<Field>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  DenseMatrix<Field> k = DenseMatrix<Field>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto fc = free[f];
    k(fc, static_cast<Eigen::Index>(f)) = Field(1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      k(ech.pivots[i], static_cast<Eigen::Index>(f)) = -ech.reduced(static_cast<Eigen::Index>(i), fc);
    }
  }
  return k;
}

// Fraction-free (Bareiss) elimination; exact rank over Q of an integer matrix.
int bareiss_rank(DenseMatrix<mpz_class> m);

// Integer kernel basis: each column is the rational kernel vector scaled to
// a primitive integer vector.
DenseMatrix<mpz_class> integer_kernel(const DenseMatrix<mpz_class>& m);

DenseMatrix<ModP> reduce_mod_p(const DenseMatrix<mpz_class>& m);

}  // namespace dpcox

#endif  // DPCOX_ORACLE_LINEAR_ALGEBRA_HPP
