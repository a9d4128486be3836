#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>

#include "dpcox/cox_oracle.hpp"
#include "dpcox/errors.hpp"
#include "dpcox/move_validity.hpp"
#include "dpcox/oracle/linear_algebra.hpp"
#include "support/convert.hpp"

using namespace dpcox;

namespace {

DivisorClass minus_k(int r) { return -canonical_class(r); }

// Plain rational Gaussian elimination, written separately from the library.
int reference_rank(std::vector<std::vector<mpq_class>> a) {
  int rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t p = static_cast<std::size_t>(rank);
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[static_cast<std::size_t>(rank)]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(rank) || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[static_cast<std::size_t>(rank)][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[static_cast<std::size_t>(rank)][j];
    }
    ++rank;
  }
  return rank;
}

DenseMatrix<mpz_class> random_low_rank(std::mt19937_64& rng, int rows, int cols, int rank) {
  std::uniform_int_distribution<int> dist(-5, 5);
  DenseMatrix<mpz_class> a(rows, rank), b(rank, cols), out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = dist(rng);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < cols; ++j) b(i, j) = dist(rng);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      mpz_class s = 0;
      for (int k = 0; k < rank; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

std::vector<std::vector<mpq_class>> to_rows(const DenseMatrix<mpz_class>& m) {
  std::vector<std::vector<mpq_class>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(mpq_class(m(i, j)));
  return out;
}

PointConfiguration points(std::vector<std::array<long, 3>> raw) {
  std::vector<ProjectivePoint> pts;
  for (auto& p : raw) pts.push_back({mpz_class(p[0]), mpz_class(p[1]), mpz_class(p[2])});
  return PointConfiguration(std::move(pts), 0, "test");
}

bool satisfies(const DenseMatrix<mpz_class>& conditions, const DenseMatrix<mpz_class>& basis) {
  for (Eigen::Index i = 0; i < conditions.rows(); ++i)
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      mpz_class s = 0;
      for (Eigen::Index j = 0; j < conditions.cols(); ++j) s += conditions(i, j) * basis(j, c);
      if (s != 0) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("arithmetic mod p") {
  const ModP a(5), b(-3);
  CHECK((a + b).value() == 2);
  CHECK((b * b).value() == 9);
  CHECK((a / a).value() == 1);
  CHECK((ModP(1) / ModP(3) * ModP(3)).value() == 1);
  CHECK(ModP::from_mpz(mpz_class(-1)).value() == ModP::kPrime - 1);
  CHECK_THROWS_AS(ModP(0).inverse(), std::domain_error);
}

TEST_CASE("property: fraction-free rank and integer kernels agree with plain elimination") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 2 + trial % 7, cols = 2 + (trial * 3) % 8;
    const int rank = 1 + trial % std::min(rows, cols);
    const auto m = random_low_rank(rng, rows, cols, rank);
    const int ref = reference_rank(to_rows(m));
    CHECK(bareiss_rank(m) == ref);
    CHECK(rank_of<ModP>(reduce_mod_p(m)) <= ref);
    const auto k = integer_kernel(m);
    CHECK(k.cols() == cols - ref);
    CHECK(satisfies(m, k));
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      mpz_class g = 0;
      for (Eigen::Index i = 0; i < k.rows(); ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k(i, c).get_mpz_t());
      CHECK(g == 1);
    }
  }
}

TEST_CASE("monomial order") {
  const auto e = monomial_exponents(2);
  CHECK(e.size() == 6);
  CHECK(e.front() == Exponent{2, 0, 0});
  CHECK(e[1] == Exponent{1, 1, 0});
  CHECK(e.back() == Exponent{0, 0, 2});
  for (int d = 0; d <= 6; ++d) {
    const auto all = monomial_exponents(d);
    CHECK(static_cast<int>(all.size()) == monomial_count(d));
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(monomial_index(all[i]) == static_cast<int>(i));
  }
}

TEST_CASE("general position") {
  CHECK(check_general_position(points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})));
  CHECK_FALSE(check_general_position(points({{1, 0, 0}, {0, 1, 0}, {2, 0, 0}})));
  CHECK_FALSE(check_general_position(points({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}})));
  CHECK_FALSE(check_general_position(points({{0, 0, 0}, {0, 1, 0}})));
  // Six points on x*y = z^2.
  CHECK_FALSE(check_general_position(
      points({{1, 1, 1}, {4, 1, 2}, {1, 4, 2}, {9, 1, 3}, {1, 9, 3}, {1, 0, 0}})));
  CHECK_THROWS_AS(require_general_position(points({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})), GeneralPositionError);
  CHECK_THROWS_AS(CoxOracle(points({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), enumerate_exceptional(3)),
                  GeneralPositionError);
  CHECK_THROWS_AS(CoxOracle(standard_configuration(4, 1), enumerate_exceptional(5)), ContractViolation);
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const auto pts = standard_configuration(7, seed);
    CHECK(check_general_position(pts));
    CHECK(pts.point(0) == ProjectivePoint{1, 0, 0});
    CHECK(pts.point(3) == ProjectivePoint{1, 1, 1});
  }
  CHECK(standard_configuration(7, 4).points() == standard_configuration(7, 4).points());
}

TEST_CASE("distinguished sections") {
  const auto pts4 = standard_configuration(4, 1);
  const auto m4 = enumerate_exceptional(4);
  const auto f12 = distinguished_section(m4.curve(m4.index_of("f12")), pts4);
  CHECK(f12.degree == 1);
  // The line through [1:0:0] and [0:1:0] is z = 0.
  CHECK(f12.form == (DenseVector<mpq_class>(3) << 0, 0, 1).finished());
  const auto e3 = distinguished_section(m4.curve(m4.index_of("e3")), pts4);
  CHECK(e3.degree == 0);
  CHECK(e3.form.size() == 1);
  CHECK(e3.form(0) == 1);

  const auto pts7 = standard_configuration(7, 1);
  const std::vector<int> h1_mults{2, 1, 1, 1, 1, 1, 1};
  const auto cond = condition_matrix_exact(3, h1_mults, pts7);
  CHECK(cond.cols() == 10);
  CHECK(bareiss_rank(cond) == 9);
  const auto m7 = enumerate_exceptional(7);
  CHECK(distinguished_section(m7.curve(m7.index_of("h1")), pts7).form.size() == 10);
}

TEST_CASE("component bases") {
  for (int r = 2; r <= 7; ++r)
    CHECK(component_basis(DivisorClass::line(r), standard_configuration(r, 1)).dimension() == 3);
  CHECK(component_basis(minus_k(7), standard_configuration(7, 1)).dimension() == 3);
  CHECK(component_basis(DivisorClass(4, {2, -1, -1, -1, -1}), standard_configuration(4, 1)).dimension() == 2);
  CHECK(component_basis(DivisorClass(4, {-1, 0, 0, 0, 0}), standard_configuration(4, 1)).dimension() == 0);
  const auto pts = standard_configuration(6, 3);
  const DivisorClass d(6, {4, -2, -1, -1, -1, -1, 0});
  const auto basis = component_basis(d, pts);
  CHECK(basis.dimension() == h0(d, enumerate_exceptional(6)));
  const auto mults = multiplicities_of(d);
  CHECK(satisfies(condition_matrix_exact(4, mults, pts), basis.basis));
}

TEST_CASE("monomials by multidegree") {
  const auto m4 = enumerate_exceptional(4);
  auto names = [&](const std::vector<CurveMonomial>& ms, const SurfaceModel& m) {
    std::vector<std::string> out;
    for (const auto& mono : ms) {
      std::string s;
      for (int i : mono) s += m.curve(i).label.to_string();
      out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(names(monomials_of_multidegree(DivisorClass(4, {2, -1, -1, -1, -1}), m4), m4) ==
        std::vector<std::string>{"f12f34", "f13f24", "f14f23"});
  CHECK(names(monomials_of_multidegree(DivisorClass(4, {1, -1, 0, 0, 0}), m4), m4) ==
        std::vector<std::string>{"e2f12", "e3f13", "e4f14"});
  CHECK(monomials_of_multidegree(minus_k(6), enumerate_exceptional(6)).size() == 45);
}

TEST_CASE("property: fast monomial enumeration equals brute force") {
  for (int r = 2; r <= 6; ++r) {
    const auto m = enumerate_exceptional(r);
    std::vector<oracle::Vec> curves;
    for (const auto& c : m.curves()) curves.push_back(to_vec(c.divisor));
    for (const auto& d : effective_classes(r, 3, m)) {
      auto got = monomials_of_multidegree(d, m);
      auto ref = oracle::monomials(to_vec(d), curves);
      std::sort(got.begin(), got.end());
      std::sort(ref.begin(), ref.end());
      CHECK(got == ref);
    }
  }
}

TEST_CASE("ideal dimensions") {
  const auto m4 = enumerate_exceptional(4);
  const auto p4 = standard_configuration(4, 1);
  for (const auto& d : {DivisorClass(4, {2, -1, -1, -1, -1}), DivisorClass(4, {1, -1, 0, 0, 0})}) {
    const auto id = ideal_dim(d, p4, m4);
    CHECK(id.monomial_count == 3);
    CHECK(id.rank == 2);
    CHECK(id.ideal_dim == 1);
  }
  const auto id6 = ideal_dim(minus_k(6), standard_configuration(6, 1), enumerate_exceptional(6));
  CHECK(id6.monomial_count == 45);
  CHECK(id6.rank == 4);
  CHECK(id6.ideal_dim == 41);
}

TEST_CASE("Koszul strands") {
  const auto m4 = enumerate_exceptional(4);
  const auto p4 = standard_configuration(4, 1);
  CHECK(koszul_b1(DivisorClass(4, {1, -1, 0, 0, 0}), p4, m4).b1 == 1);
  const auto zero = koszul_b1(DivisorClass(4, {0, 1, -1, 0, 0}), p4, m4);
  CHECK(zero.b1 == 0);
  CHECK(zero.dims == std::array<int, 3>{0, 0, 0});

  const auto m6 = enumerate_exceptional(6);
  const auto rep = koszul_b1(minus_k(6), standard_configuration(6, 1), m6);
  CHECK(rep.b1 == 0);
  CHECK(rep.dims == std::array<int, 3>{4, 54, 135});
  CHECK(rep.certified);
  CHECK(rep.b1 == rep.dims[1] - rep.rank_d1 - rep.rank_d2);

  const auto prime = koszul_b1(minus_k(6), standard_configuration(6, 1), m6, Arithmetic::PRIME);
  CHECK(prime.b1 == 0);
  CHECK_FALSE(prime.certified);
  CHECK(prime.arithmetic == Arithmetic::PRIME);
}

TEST_CASE("property: degree-2 nef classes have b1 = monomials - h0") {
  for (int r = 3; r <= 7; ++r) {
    CoxOracle o(standard_configuration(r, 1), enumerate_exceptional(r));
    for (const auto& d : enumerate_nef_classes(r, 2, o.model())) {
      const auto rep = o.koszul_b1(d);
      CHECK(rep.b1 == static_cast<int>(monomials_of_multidegree(d, o.model()).size()) - h0(d, o.model()));
      CHECK(rep.b1 >= 0);
    }
  }
}

TEST_CASE("property: lattice h0 equals interpolation dimension") {
  for (int r = 4; r <= 6; ++r) {
    CoxOracle o(standard_configuration(r, 2), enumerate_exceptional(r));
    for (const auto& d : effective_classes(r, 4, o.model())) CHECK(o.interpolation_dimension(d) == h0(d, o.model()));
  }
}

TEST_CASE("property: strand reports are stable across generic configurations") {
  const auto m = enumerate_exceptional(5);
  std::deque<CoxOracle> oracles;
  for (std::uint64_t seed : {1u, 2u, 3u}) oracles.emplace_back(standard_configuration(5, seed), m);
  for (const auto& d : nef_classes_up_to(5, 3, 4, m)) {
    auto base = oracles[0].koszul_b1(d);
    CHECK(base.b1 == 0);
    for (std::size_t i = 1; i < oracles.size(); ++i) {
      auto other = oracles[i].koszul_b1(d);
      other.seed = base.seed;
      CHECK(other == base);
    }
  }
}

TEST_CASE("27 sections") {
  const auto m7 = enumerate_exceptional(7);
  for (std::uint64_t seed : {1u, 5u}) {
    CoxOracle o(standard_configuration(7, seed), m7);
    const auto s = o.check_27_sections();
    CHECK(s.holds);
    CHECK(s.full_rank == 3);
    CHECK(s.subset_ranks.size() == 28);
    CHECK(std::all_of(s.subset_ranks.begin(), s.subset_ranks.end(), [](int x) { return x == 3; }));
    CHECK(verify_27_sections(standard_configuration(7, seed), m7));
    for (auto [a, b] : degree2_nef_decompose(minus_k(7), m7)) {
      const auto prod = multiply_forms(o.section(a).form, o.section(a).degree, o.section(b).form, o.section(b).degree);
      CHECK(std::any_of(prod.begin(), prod.end(), [](const mpq_class& x) { return x != 0; }));
    }
  }
  CHECK_THROWS_AS(CoxOracle(standard_configuration(6, 1), enumerate_exceptional(6)).check_27_sections(),
                  ContractViolation);
}

TEST_CASE("arithmetic names") {
  CHECK(parse_arithmetic("exact") == Arithmetic::EXACT);
  CHECK(parse_arithmetic("prime") == Arithmetic::PRIME);
  CHECK_THROWS_AS(parse_arithmetic("float"), ValidationError);
}
