#include "dpcox/plane_forms.hpp"

#include <random>

#include "dpcox/errors.hpp"
#include "dpcox/oracle/linear_algebra.hpp"

namespace dpcox {

std::vector<Exponent> monomial_exponents(int degree) {
  std::vector<Exponent> out;
  for (int a = degree; a >= 0; --a)
    for (int b = degree - a; b >= 0; --b) out.push_back({a, b, degree - a - b});
  return out;
}

int monomial_index(const Exponent& e) {
  const int s = e[1] + e[2];
  return s * (s + 1) / 2 + e[2];
}

PointConfiguration::PointConfiguration(std::vector<ProjectivePoint> points, std::uint64_t seed, std::string origin)
    : points_(std::move(points)), seed_(seed), origin_(std::move(origin)) {}

namespace {

mpz_class det3(const ProjectivePoint& a, const ProjectivePoint& b, const ProjectivePoint& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

bool six_on_conic(std::span<const ProjectivePoint> pts, const std::array<int, 6>& idx) {
  DenseMatrix<mpz_class> m(6, 6);
  for (int r = 0; r < 6; ++r) {
    const auto& p = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])];
    m(r, 0) = p[0] * p[0];
    m(r, 1) = p[0] * p[1];
    m(r, 2) = p[0] * p[2];
    m(r, 3) = p[1] * p[1];
    m(r, 4) = p[1] * p[2];
    m(r, 5) = p[2] * p[2];
  }
  return bareiss_rank(m) < 6;
}

}  // namespace

std::string general_position_violation(std::span<const ProjectivePoint> pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    const auto& p = pts[static_cast<std::size_t>(i)];
    if (sgn(p[0]) == 0 && sgn(p[1]) == 0 && sgn(p[2]) == 0) return "zero point " + std::to_string(i + 1);
  }
  // Two equal points make every triple through them degenerate, so the
  // triple test also rejects repeats once n >= 3.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& a = pts[static_cast<std::size_t>(i)];
      const auto& b = pts[static_cast<std::size_t>(j)];
      bool proportional = sgn(a[0] * b[1] - a[1] * b[0]) == 0 && sgn(a[0] * b[2] - a[2] * b[0]) == 0 &&
                          sgn(a[1] * b[2] - a[2] * b[1]) == 0;
      if (proportional) return "points " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " coincide";
      for (int k = j + 1; k < n; ++k) {
        if (sgn(det3(a, b, pts[static_cast<std::size_t>(k)])) == 0) {
          return "points " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + std::to_string(k + 1) +
                 " collinear";
        }
      }
    }
  if (n >= 6) {
    std::array<int, 6> idx{};
    // All 6-subsets in lexicographic order.
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            for (int e = d + 1; e < n; ++e)
              for (int f = e + 1; f < n; ++f) {
                idx = {a, b, c, d, e, f};
                if (six_on_conic(pts, idx)) {
                  std::string s = "points";
                  for (int v : idx) s += " " + std::to_string(v + 1);
                  return s + " on a conic";
                }
              }
  }
  return {};
}

bool check_general_position(const PointConfiguration& pts) {
  return general_position_violation(pts.points()).empty();
}

void require_general_position(const PointConfiguration& pts) {
  auto why = general_position_violation(pts.points());
  if (!why.empty()) throw GeneralPositionError("points not in general position: " + why);
}

PointConfiguration standard_configuration(int rank, std::uint64_t seed) {
  if (rank < 0 || rank > 8) throw ContractViolation("configurations hold at most 8 points");
  const std::vector<ProjectivePoint> standard{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  std::vector<ProjectivePoint> pts;
  for (int i = 0; i < std::min(rank, 4); ++i) pts.push_back(standard[static_cast<std::size_t>(i)]);
  std::mt19937_64 rng(seed);
  auto coord = [&rng] { return static_cast<long>(rng() % 25) - 12; };
  while (static_cast<int>(pts.size()) < rank) {
    pts.push_back({mpz_class(coord()), mpz_class(coord()), mpz_class(1)});
    if (!general_position_violation(pts).empty()) pts.pop_back();
  }
  return PointConfiguration(std::move(pts), seed, "standard");
}

namespace {

// Row entries for d^alpha (x^beta) at p: prod beta_j! / (beta_j - alpha_j)! * p_j^(beta_j - alpha_j).
template <class Scalar, class Lift>
DenseMatrix<Scalar> build_conditions(int degree, std::span<const int> mults, const PointConfiguration& pts,
                                     Lift lift) {
  if (static_cast<int>(mults.size()) != pts.rank()) throw ContractViolation("one multiplicity per point expected");
  const auto cols = monomial_exponents(degree);
  int rows = 0;
  for (int m : mults) {
    if (m <= 0) continue;
    int k = std::min(m - 1, degree);
    rows += monomial_count(k);
  }
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(rows, static_cast<Eigen::Index>(cols.size()));
  if (degree < 0) return out;
  // falling[b][a] = b! / (b - a)!
  std::vector<std::vector<Scalar>> falling(static_cast<std::size_t>(degree + 1));
  for (int b = 0; b <= degree; ++b) {
    auto& f = falling[static_cast<std::size_t>(b)];
    f.assign(static_cast<std::size_t>(b + 1), Scalar(1));
    for (int a = 1; a <= b; ++a)
      f[static_cast<std::size_t>(a)] = f[static_cast<std::size_t>(a - 1)] * Scalar(b - a + 1);
  }
  int row = 0;
  for (int i = 0; i < pts.rank(); ++i) {
    const int m = mults[static_cast<std::size_t>(i)];
    if (m <= 0) continue;
    const int k = std::min(m - 1, degree);
    // power[j][e] = p_j^e
    std::array<std::vector<Scalar>, 3> power;
    for (std::size_t j = 0; j < 3; ++j) {
      const Scalar x = lift(pts.point(i)[j]);
      power[j].assign(static_cast<std::size_t>(degree + 1), Scalar(1));
      for (int e = 1; e <= degree; ++e)
        power[j][static_cast<std::size_t>(e)] = power[j][static_cast<std::size_t>(e - 1)] * x;
    }
    for (const auto& alpha : monomial_exponents(k)) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& beta = cols[c];
        if (beta[0] < alpha[0] || beta[1] < alpha[1] || beta[2] < alpha[2]) continue;
        Scalar v(1);
        for (std::size_t j = 0; j < 3; ++j) {
          v *= falling[static_cast<std::size_t>(beta[j])][static_cast<std::size_t>(alpha[j])];
          v *= power[j][static_cast<std::size_t>(beta[j] - alpha[j])];
        }
        out(row, static_cast<Eigen::Index>(c)) = v;
      }
      ++row;
    }
  }
  return out;
}

}  // namespace

DenseMatrix<ModP> condition_matrix_mod_p(int degree, std::span<const int> mults, const PointConfiguration& pts) {
  return build_conditions<ModP>(degree, mults, pts, [](const mpz_class& z) { return ModP::from_mpz(z); });
}

DenseMatrix<mpz_class> condition_matrix_exact(int degree, std::span<const int> mults, const PointConfiguration& pts) {
  return build_conditions<mpz_class>(degree, mults, pts, [](const mpz_class& z) { return z; });
}

}  // namespace dpcox
