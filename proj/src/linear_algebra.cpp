#include "dpcox/oracle/linear_algebra.hpp"

#include <numeric>

namespace dpcox {

int bareiss_rank(DenseMatrix<mpz_class> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  mpz_class prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = r;
    while (piv < rows && sgn(m(piv, c)) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        m(i, j) = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return static_cast<int>(r);
}

DenseMatrix<mpz_class> integer_kernel(const DenseMatrix<mpz_class>& m) {
  DenseMatrix<mpq_class> q(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) q(i, j) = mpq_class(m(i, j));
  const DenseMatrix<mpq_class> k = kernel_basis<mpq_class>(q);
  DenseMatrix<mpz_class> out(k.rows(), k.cols());
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    mpz_class den = 1;
    for (Eigen::Index i = 0; i < k.rows(); ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), k(i, c).get_den_mpz_t());
    mpz_class g = 0;
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
      mpq_class scaled = k(i, c) * den;
      out(i, c) = scaled.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out(i, c).get_mpz_t());
    }
    if (g > 1)
      for (Eigen::Index i = 0; i < k.rows(); ++i) mpz_divexact(out(i, c).get_mpz_t(), out(i, c).get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

DenseMatrix<ModP> reduce_mod_p(const DenseMatrix<mpz_class>& m) {
  DenseMatrix<ModP> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = ModP::from_mpz(m(i, j));
  return out;
}

}  // namespace dpcox
