#ifndef DPCOX_PLANE_FORMS_HPP
#define DPCOX_PLANE_FORMS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dpcox/oracle/scalar.hpp"

namespace dpcox {

using Exponent = std::array<int, 3>;  // powers of x, y, z

// Degree-d monomials, x^d first: x^a y^b z^c ordered by a descending, then b
// descending.
std::vector<Exponent> monomial_exponents(int degree);
inline int monomial_count(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }
int monomial_index(const Exponent& e);

using ProjectivePoint = std::array<mpz_class, 3>;

class PointConfiguration {
 public:
  PointConfiguration() = default;
  // No general-position check here; see require_general_position.
  PointConfiguration(std::vector<ProjectivePoint> points, std::uint64_t seed, std::string origin);

  int rank() const noexcept { return static_cast<int>(points_.size()); }
  const std::vector<ProjectivePoint>& points() const noexcept { return points_; }
  const ProjectivePoint& point(int i) const { return points_.at(static_cast<std::size_t>(i)); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& origin() const noexcept { return origin_; }  // "standard" or a file path

 private:
  std::vector<ProjectivePoint> points_;
  std::uint64_t seed_ = 0;
  std::string origin_;
};

// Empty if the points are in general position, otherwise the first violated
// condition ("zero point 2", "points 1 2 3 collinear", "points 1..6 on a conic").
std::string general_position_violation(std::span<const ProjectivePoint> pts);
bool check_general_position(const PointConfiguration& pts);
void require_general_position(const PointConfiguration& pts);  // throws GeneralPositionError

// [1:0:0], [0:1:0], [0:0:1], [1:1:1] followed by seeded points [x:y:1] with
// |x|, |y| <= 12, redrawn until the configuration stays general.
PointConfiguration standard_configuration(int rank, std::uint64_t seed);

// Row per partial derivative of order min(m_i - 1, degree) at p_i with m_i > 0.
// By Euler's formula these force all lower-order partials to vanish as well.
DenseMatrix<ModP> condition_matrix_mod_p(int degree, std::span<const int> mults, const PointConfiguration& pts);
DenseMatrix<mpz_class> condition_matrix_exact(int degree, std::span<const int> mults, const PointConfiguration& pts);

template <class Scalar>
DenseVector<Scalar> multiply_forms(const DenseVector<Scalar>& a, int deg_a, const DenseVector<Scalar>& b, int deg_b) {
  const auto ea = monomial_exponents(deg_a);
  const auto eb = monomial_exponents(deg_b);
  DenseVector<Scalar> out = DenseVector<Scalar>::Zero(monomial_count(deg_a + deg_b));
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (is_zero(a(static_cast<Eigen::Index>(i)))) continue;
    for (std::size_t j = 0; j < eb.size(); ++j) {
      if (is_zero(b(static_cast<Eigen::Index>(j)))) continue;
      Exponent e{ea[i][0] + eb[j][0], ea[i][1] + eb[j][1], ea[i][2] + eb[j][2]};
      out(monomial_index(e)) += a(static_cast<Eigen::Index>(i)) * b(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace dpcox

#endif  // DPCOX_PLANE_FORMS_HPP
