#ifndef DPCOX_EXCEPTIONAL_CURVES_HPP
#define DPCOX_EXCEPTIONAL_CURVES_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dpcox/picard_lattice.hpp"

namespace dpcox {

// e_i = E_i, f_ij = L - E_i - E_j, g_S = conic through the points outside S,
// h_i = cubic through all points, double at p_i.
enum class CurveKind { E = 0, F = 1, G = 2, H = 3 };

struct CurveLabel {
  CurveKind kind = CurveKind::E;
  int count = 0;                  // number of meaningful entries in indices
  std::array<int, 2> indices{};   // sorted, 1-based

  static CurveLabel e(int i) { return {CurveKind::E, 1, {i, 0}}; }
  static CurveLabel f(int i, int j) { return {CurveKind::F, 2, {std::min(i, j), std::max(i, j)}}; }
  static CurveLabel g(std::span<const int> complement);
  static CurveLabel h(int i) { return {CurveKind::H, 1, {i, 0}}; }

  // "e1", "f12", "g" (r = 5), "g3" (r = 6), "g12" (r = 7), "h1"
  std::string to_string() const;
  static CurveLabel parse(std::string_view text);  // throws ValidationError

  // Whether the label names a curve on X_r.
  bool legal_for_rank(int rank) const;

  friend bool operator==(const CurveLabel&, const CurveLabel&) = default;
  friend auto operator<=>(const CurveLabel&, const CurveLabel&) = default;
};

struct ExceptionalCurve {
  CurveLabel label;
  DivisorClass divisor;
};

// Standard label of an exceptional class; throws InternalConsistencyError if the
// class does not match any row.
CurveLabel classify_curve(const DivisorClass& c);
DivisorClass class_of_label(const CurveLabel& label, int rank);

// The exceptional curves of X_r in canonical order (e < f < g < h, indices
// lexicographic). Immutable once built.
class SurfaceModel {
 public:
  using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

  SurfaceModel(int rank, std::vector<ExceptionalCurve> curves);

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return static_cast<int>(curves_.size()); }
  const std::vector<ExceptionalCurve>& curves() const noexcept { return curves_; }
  const ExceptionalCurve& curve(int i) const { return curves_.at(static_cast<std::size_t>(i)); }
  const DivisorClass& canonical() const noexcept { return canonical_; }

  std::optional<int> find(const DivisorClass& c) const;
  std::optional<int> find(const CurveLabel& label) const;
  int index_of(std::string_view label) const;  // throws ValidationError

  // (d . C_i) for every curve, in canonical order.
  IntVector products(const DivisorClass& d) const;
  std::int64_t min_product(const DivisorClass& d) const;

 private:
  int rank_;
  std::vector<ExceptionalCurve> curves_;
  DivisorClass canonical_;
  std::unordered_map<DivisorClass, int, DivisorClassHash> by_class_;
  // Row i is C_i with the point coefficients negated, so that products(d) is
  // a plain matrix-vector product.
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> metric_rows_;
};

SurfaceModel enumerate_exceptional(int rank);

// r = 7 only: the curve with class -K - c.
const ExceptionalCurve& dual(const ExceptionalCurve& c, const SurfaceModel& model);
int dual_index(int curve, const SurfaceModel& model);

struct NefReport {
  bool is_nef = false;
  std::int64_t m_d = 0;
  std::vector<int> contracted;  // curve indices with d.C = 0
};

NefReport nef_report(const DivisorClass& d, const SurfaceModel& model);

struct FixedPartReduction {
  bool effective = false;
  DivisorClass nef_part;        // meaningful only when effective
  std::vector<int> fixed_part;  // curves stripped, in order of removal
};

// Strips negative curves until the class is nef or provably not effective.
// `priority` (a permutation of curve indices) selects which negative curve is
// stripped first; empty means canonical order.
FixedPartReduction reduce_fixed_part(const DivisorClass& d, const SurfaceModel& model,
                                     std::span<const int> priority = {});

bool is_effective(const DivisorClass& d, const SurfaceModel& model);

// Riemann-Roch on the nef part; 0 for non-effective classes.
std::int64_t h0(const DivisorClass& d, const SurfaceModel& model);

bool is_conic_bundle(const DivisorClass& q);

struct ConicStructure {
  std::int64_t multiplicity = 0;
  DivisorClass conic;
};

// f must be nef, effective and nonzero. Returns (m, Q) with f = m Q when f.f = 0.
std::optional<ConicStructure> conic_structure(const DivisorClass& f, const SurfaceModel& model);

using CurvePair = std::pair<int, int>;  // first < second

// All unordered pairs {A, B} of curves with A + B = q; q must be a conic bundle.
std::vector<CurvePair> conic_decompositions(const DivisorClass& q, const SurfaceModel& model);

// d nef of anticanonical degree 2: every way of writing d = F1 + F2.
std::vector<CurvePair> degree2_nef_decompose(const DivisorClass& d, const SurfaceModel& model);

}  // namespace dpcox

#endif  // DPCOX_EXCEPTIONAL_CURVES_HPP
