#ifndef DPCOX_COX_ORACLE_HPP
#define DPCOX_COX_ORACLE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "dpcox/exceptional_curves.hpp"
#include "dpcox/oracle/scalar.hpp"
#include "dpcox/plane_forms.hpp"

namespace dpcox {

// EXACT: ranks over Q. Modular elimination is used when its result can be
// certified against a matching bound, otherwise fraction-free integer
// elimination. PRIME: ranks over F_p only; these lower-bound rational ranks.
enum class Arithmetic { EXACT, PRIME };

std::string to_string(Arithmetic a);
Arithmetic parse_arithmetic(std::string_view text);  // "exact" | "prime"; throws ValidationError

// Degree-d forms with multiplicity >= mults[i] at p_i. Columns of `basis` are
// primitive integer coefficient vectors in monomial order.
struct PlaneFormBasis {
  int degree = 0;
  std::vector<int> mults;
  DenseMatrix<mpz_class> basis;

  int dimension() const noexcept { return static_cast<int>(basis.cols()); }
};

// Sections of d as plane forms: degree d0, multiplicity max(-d_i, 0) at p_i.
// Empty basis when d0 < 0.
PlaneFormBasis component_basis(const DivisorClass& d, const PointConfiguration& pts);

struct SectionModel {
  ExceptionalCurve curve;
  int degree = 0;
  DenseVector<mpq_class> form;  // first nonzero coefficient is 1
};

// Throws GeneralPositionError when the interpolation space is not a line.
SectionModel distinguished_section(const ExceptionalCurve& c, const PointConfiguration& pts);

// Sorted curve indices; repeats allowed.
using CurveMonomial = std::vector<int>;

// Visits every multiset of curves with class sum d in lexicographic order;
// stops early when the visitor returns false.
void for_each_monomial(const DivisorClass& d, const SurfaceModel& model,
                       const std::function<bool(const CurveMonomial&)>& visit);
std::vector<CurveMonomial> monomials_of_multidegree(const DivisorClass& d, const SurfaceModel& model);

struct IdealDimension {
  int monomial_count = 0;
  int rank = 0;
  int ideal_dim = 0;
  bool certified = true;
};

struct KoszulStrandReport {
  DivisorClass divisor;
  std::array<int, 3> dims{};  // |A0|, |A1|, |A2|
  int rank_d1 = 0;
  int rank_d2 = 0;
  int b1 = 0;
  std::uint64_t seed = 0;
  Arithmetic arithmetic = Arithmetic::EXACT;
  bool certified = true;  // false only for PRIME runs

  friend bool operator==(const KoszulStrandReport&, const KoszulStrandReport&) = default;
};

struct SectionsCheck {
  int full_rank = 0;
  std::vector<int> subset_ranks;  // subset i omits dual pair i
  bool holds = false;
};

// Oracle bound to one point configuration. Interpolation dimensions are cached;
// all methods are safe to call from several threads.
class CoxOracle {
 public:
  // Throws GeneralPositionError for degenerate points, ContractViolation on a
  // rank mismatch.
  CoxOracle(PointConfiguration pts, SurfaceModel model, Arithmetic arithmetic = Arithmetic::EXACT);

  const PointConfiguration& points() const noexcept { return pts_; }
  const SurfaceModel& model() const noexcept { return model_; }
  Arithmetic arithmetic() const noexcept { return arithmetic_; }
  const SectionModel& section(int curve) const { return sections_.at(static_cast<std::size_t>(curve)); }

  // dim H0(d) computed from the interpolation conditions alone.
  int interpolation_dimension(const DivisorClass& d);
  IdealDimension ideal_dim(const DivisorClass& d);
  KoszulStrandReport koszul_b1(const DivisorClass& d);
  SectionsCheck check_27_sections();  // rank 7 only

 private:
  using Key = std::pair<int, std::vector<int>>;

  int dimension_of(int degree, const std::vector<int>& mults);
  int compute_dimension(int degree, const std::vector<int>& mults);
  KoszulStrandReport strand_modular(const DivisorClass& d, bool& usable);
  KoszulStrandReport strand_exact(const DivisorClass& d);

  PointConfiguration pts_;
  SurfaceModel model_;
  Arithmetic arithmetic_;
  std::vector<SectionModel> sections_;
  std::vector<DenseVector<mpz_class>> integer_forms_;
  std::vector<DenseVector<ModP>> modular_forms_;
  std::mutex cache_mutex_;
  std::map<Key, int> cache_;
};

std::vector<int> multiplicities_of(const DivisorClass& d);  // max(-d_i, 0)

IdealDimension ideal_dim(const DivisorClass& d, const PointConfiguration& pts, const SurfaceModel& model);
KoszulStrandReport koszul_b1(const DivisorClass& d, const PointConfiguration& pts, const SurfaceModel& model,
                             Arithmetic arithmetic = Arithmetic::EXACT);
bool verify_27_sections(const PointConfiguration& pts, const SurfaceModel& model);

}  // namespace dpcox

#endif  // DPCOX_COX_ORACLE_HPP
