#include "dpcox/exceptional_curves.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "dpcox/checked_int.hpp"
#include "dpcox/errors.hpp"

namespace dpcox {

namespace {

constexpr int kCurveBoxLine = 4;
constexpr int kCurveBoxPoint = 3;
// Beyond this magnitude the Eigen product could overflow; fall back to the
// checked path.
constexpr std::int64_t kFastProductLimit = std::int64_t{1} << 40;

char kind_letter(CurveKind k) {
  switch (k) {
    case CurveKind::E: return 'e';
    case CurveKind::F: return 'f';
    case CurveKind::G: return 'g';
    case CurveKind::H: return 'h';
  }
  return '?';
}

}  // namespace

CurveLabel CurveLabel::g(std::span<const int> complement) {
  if (complement.size() > 2) throw ContractViolation("g_S needs |S| <= 2");
  CurveLabel l{CurveKind::G, static_cast<int>(complement.size()), {0, 0}};
  for (std::size_t i = 0; i < complement.size(); ++i) l.indices[i] = complement[i];
  if (l.count == 2 && l.indices[0] > l.indices[1]) std::swap(l.indices[0], l.indices[1]);
  return l;
}

std::string CurveLabel::to_string() const {
  std::string s(1, kind_letter(kind));
  for (int i = 0; i < count; ++i) s += std::to_string(indices[static_cast<std::size_t>(i)]);
  return s;
}

CurveLabel CurveLabel::parse(std::string_view text) {
  if (text.empty()) throw ValidationError("empty curve label");
  CurveLabel l;
  switch (text[0]) {
    case 'e': l.kind = CurveKind::E; break;
    case 'f': l.kind = CurveKind::F; break;
    case 'g': l.kind = CurveKind::G; break;
    case 'h': l.kind = CurveKind::H; break;
    default: throw ValidationError("unknown curve label '" + std::string(text) + "'");
  }
  auto digits = text.substr(1);
  if (digits.size() > 2) throw ValidationError("too many indices in label '" + std::string(text) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0') {
      throw ValidationError("bad index in curve label '" + std::string(text) + "'");
    }
    l.indices[static_cast<std::size_t>(l.count++)] = ch - '0';
  }
  bool shape_ok = false;
  switch (l.kind) {
    case CurveKind::E:
    case CurveKind::H: shape_ok = l.count == 1; break;
    case CurveKind::F: shape_ok = l.count == 2 && l.indices[0] < l.indices[1]; break;
    case CurveKind::G: shape_ok = l.count < 2 || l.indices[0] < l.indices[1]; break;
  }
  if (!shape_ok) throw ValidationError("malformed curve label '" + std::string(text) + "'");
  return l;
}

bool CurveLabel::legal_for_rank(int rank) const {
  for (int i = 0; i < count; ++i) {
    int v = indices[static_cast<std::size_t>(i)];
    if (v < 1 || v > rank) return false;
  }
  switch (kind) {
    case CurveKind::E: return count == 1;
    case CurveKind::F: return count == 2 && indices[0] < indices[1];
    case CurveKind::G: return rank >= 5 && count == rank - 5 && (count < 2 || indices[0] < indices[1]);
    case CurveKind::H: return rank >= 7 && count == 1;
  }
  return false;
}

CurveLabel classify_curve(const DivisorClass& c) {
  const int r = c.rank();
  std::vector<int> ones, minus_ones, minus_twos, zeros;
  for (int i = 1; i <= r; ++i) {
    switch (c[i]) {
      case 1: ones.push_back(i); break;
      case 0: zeros.push_back(i); break;
      case -1: minus_ones.push_back(i); break;
      case -2: minus_twos.push_back(i); break;
      default: throw InternalConsistencyError("class " + c.to_string() + " matches no exceptional curve");
    }
  }
  if (c[0] == 0 && ones.size() == 1 && zeros.size() == static_cast<std::size_t>(r - 1)) {
    return CurveLabel::e(ones[0]);
  }
  if (c[0] == 1 && minus_ones.size() == 2 && zeros.size() == static_cast<std::size_t>(r - 2)) {
    return CurveLabel::f(minus_ones[0], minus_ones[1]);
  }
  if (c[0] == 2 && r >= 5 && minus_ones.size() == 5 && zeros.size() == static_cast<std::size_t>(r - 5)) {
    return CurveLabel::g(zeros);
  }
  if (c[0] == 3 && r == 7 && minus_twos.size() == 1 && minus_ones.size() == 6) {
    return CurveLabel::h(minus_twos[0]);
  }
  throw InternalConsistencyError("class " + c.to_string() + " matches no exceptional curve");
}

DivisorClass class_of_label(const CurveLabel& label, int rank) {
  if (!label.legal_for_rank(rank)) {
    throw ValidationError("label " + label.to_string() + " is not a curve on X_" + std::to_string(rank));
  }
  std::vector<DivisorClass::Coefficient> c(static_cast<std::size_t>(rank + 1), 0);
  auto at = [&](int i) -> DivisorClass::Coefficient& { return c[static_cast<std::size_t>(i)]; };
  switch (label.kind) {
    case CurveKind::E: at(label.indices[0]) = 1; break;
    case CurveKind::F:
      at(0) = 1;
      at(label.indices[0]) = -1;
      at(label.indices[1]) = -1;
      break;
    case CurveKind::G:
      at(0) = 2;
      for (int i = 1; i <= rank; ++i) at(i) = -1;
      for (int k = 0; k < label.count; ++k) at(label.indices[static_cast<std::size_t>(k)]) = 0;
      break;
    case CurveKind::H:
      at(0) = 3;
      for (int i = 1; i <= rank; ++i) at(i) = -1;
      at(label.indices[0]) = -2;
      break;
  }
  return DivisorClass(rank, c);
}

SurfaceModel::SurfaceModel(int rank, std::vector<ExceptionalCurve> curves)
    : rank_(rank), curves_(std::move(curves)), canonical_(canonical_class(rank)) {
  metric_rows_.resize(static_cast<Eigen::Index>(curves_.size()), rank_ + 1);
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    const auto& c = curves_[i].divisor;
    require_same_rank(c, canonical_);
    by_class_.emplace(c, static_cast<int>(i));
    metric_rows_(static_cast<Eigen::Index>(i), 0) = c[0];
    for (int j = 1; j <= rank_; ++j) metric_rows_(static_cast<Eigen::Index>(i), j) = -c[j];
  }
}

std::optional<int> SurfaceModel::find(const DivisorClass& c) const {
  auto it = by_class_.find(c);
  if (it == by_class_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> SurfaceModel::find(const CurveLabel& label) const {
  if (!label.legal_for_rank(rank_)) return std::nullopt;
  return find(class_of_label(label, rank_));
}

int SurfaceModel::index_of(std::string_view label) const {
  auto parsed = CurveLabel::parse(label);
  auto idx = find(parsed);
  if (!idx) throw ValidationError("no curve '" + std::string(label) + "' on X_" + std::to_string(rank_));
  return *idx;
}

SurfaceModel::IntVector SurfaceModel::products(const DivisorClass& d) const {
  require_same_rank(d, canonical_);
  bool small = true;
  for (auto v : d.coefficients()) small = small && std::llabs(v) < kFastProductLimit;
  IntVector out(size());
  if (small) {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> v(rank_ + 1);
    for (int i = 0; i <= rank_; ++i) v(i) = d[i];
    out.noalias() = metric_rows_ * v;
  } else {
    for (int i = 0; i < size(); ++i) out(i) = intersect(d, curves_[static_cast<std::size_t>(i)].divisor);
  }
  return out;
}

std::int64_t SurfaceModel::min_product(const DivisorClass& d) const {
  if (curves_.empty()) throw ContractViolation("surface model has no curves");
  return products(d).minCoeff();
}

SurfaceModel enumerate_exceptional(int rank) {
  require_valid_rank(rank);
  std::vector<ExceptionalCurve> found;
  std::vector<int> digits(static_cast<std::size_t>(rank), -kCurveBoxPoint);
  std::vector<DivisorClass::Coefficient> c(static_cast<std::size_t>(rank + 1));
  while (true) {
    long sum = 0, squares = 0;
    for (int v : digits) {
      sum += v;
      squares += v * v;
    }
    // -K.E = 3 d0 + sum = 1 fixes d0.
    if ((1 - sum) % 3 == 0) {
      long d0 = (1 - sum) / 3;
      if (d0 >= -kCurveBoxLine && d0 <= kCurveBoxLine && d0 * d0 - squares == -1) {
        c[0] = d0;
        for (int i = 0; i < rank; ++i) c[static_cast<std::size_t>(i + 1)] = digits[static_cast<std::size_t>(i)];
        DivisorClass cls(rank, c);
        found.push_back({classify_curve(cls), cls});
      }
    }
    int pos = rank - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == kCurveBoxPoint) {
      digits[static_cast<std::size_t>(pos)] = -kCurveBoxPoint;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  std::sort(found.begin(), found.end(),
            [](const ExceptionalCurve& a, const ExceptionalCurve& b) { return a.label < b.label; });
  return SurfaceModel(rank, std::move(found));
}

int dual_index(int curve, const SurfaceModel& model) {
  if (model.rank() != 7) throw UnsupportedRank("duality is defined on X_7 only");
  auto idx = model.find(-model.canonical() - model.curve(curve).divisor);
  if (!idx) throw InternalConsistencyError("-K - C is not exceptional");
  return *idx;
}

const ExceptionalCurve& dual(const ExceptionalCurve& c, const SurfaceModel& model) {
  auto self = model.find(c.divisor);
  if (!self) throw ContractViolation("curve does not belong to the model");
  return model.curve(dual_index(*self, model));
}

NefReport nef_report(const DivisorClass& d, const SurfaceModel& model) {
  NefReport rep;
  auto p = model.products(d);
  rep.m_d = p.minCoeff();
  rep.is_nef = rep.m_d >= 0;
  for (int i = 0; i < model.size(); ++i) {
    if (p(i) == 0) rep.contracted.push_back(i);
  }
  return rep;
}

FixedPartReduction reduce_fixed_part(const DivisorClass& d, const SurfaceModel& model,
                                     std::span<const int> priority) {
  if (!priority.empty() && priority.size() != static_cast<std::size_t>(model.size())) {
    throw ContractViolation("priority must be a permutation of the curve indices");
  }
  FixedPartReduction out;
  DivisorClass cur = d;
  while (true) {
    const auto degree = anticanonical_degree(cur);
    if (degree < 0) return out;
    auto p = model.products(cur);
    int negative = -1;
    for (int k = 0; k < model.size(); ++k) {
      int i = priority.empty() ? k : priority[static_cast<std::size_t>(k)];
      if (p(i) < 0) {
        negative = i;
        break;
      }
    }
    if (negative < 0) {
      out.effective = true;
      out.nef_part = cur;
      return out;
    }
    // Nonzero classes of anticanonical degree 0 are never effective (-K ample).
    if (degree == 0) return out;
    cur -= model.curve(negative).divisor;
    out.fixed_part.push_back(negative);
  }
}

bool is_effective(const DivisorClass& d, const SurfaceModel& model) {
  return reduce_fixed_part(d, model).effective;
}

std::int64_t h0(const DivisorClass& d, const SurfaceModel& model) {
  auto red = reduce_fixed_part(d, model);
  if (!red.effective) return 0;
  const auto& p = red.nef_part;
  // 1 + (P^2 - P.K) / 2
  return 1 + checked_add(self_intersection(p), anticanonical_degree(p)) / 2;
}

bool is_conic_bundle(const DivisorClass& q) {
  return anticanonical_degree(q) == 2 && self_intersection(q) == 0;
}

std::optional<ConicStructure> conic_structure(const DivisorClass& f, const SurfaceModel& model) {
  if (f.is_zero()) throw ContractViolation("conic_structure needs a nonzero class");
  if (model.min_product(f) < 0) throw ContractViolation("conic_structure needs a nef class");
  if (self_intersection(f) != 0) return std::nullopt;
  const auto degree = anticanonical_degree(f);
  if (degree <= 0 || degree % 2 != 0) {
    throw InternalConsistencyError("nef class with F^2 = 0 has odd or nonpositive degree: " + f.to_string());
  }
  const auto m = degree / 2;
  std::vector<DivisorClass::Coefficient> q(f.coefficients().begin(), f.coefficients().end());
  for (auto& v : q) {
    if (v % m != 0) throw InternalConsistencyError("nef class with F^2 = 0 is not m*Q: " + f.to_string());
    v /= m;
  }
  DivisorClass conic(f.rank(), q);
  if (!is_conic_bundle(conic)) throw InternalConsistencyError("primitive part is not a conic bundle");
  return ConicStructure{m, conic};
}

std::vector<CurvePair> conic_decompositions(const DivisorClass& q, const SurfaceModel& model) {
  if (!is_conic_bundle(q)) throw ContractViolation(q.to_string() + " is not a conic bundle class");
  std::vector<CurvePair> out;
  for (int i = 0; i < model.size(); ++i) {
    auto j = model.find(q - model.curve(i).divisor);
    if (j && i < *j) {
      if (intersect(model.curve(i).divisor, model.curve(*j).divisor) != 1) {
        throw InternalConsistencyError("conic decomposition with A.B != 1");
      }
      out.emplace_back(i, *j);
    }
  }
  return out;
}

std::vector<CurvePair> degree2_nef_decompose(const DivisorClass& d, const SurfaceModel& model) {
  if (anticanonical_degree(d) != 2 || model.min_product(d) < 0) {
    throw ContractViolation(d.to_string() + " is not a nef class of anticanonical degree 2");
  }
  std::vector<CurvePair> out;
  for (int i = 0; i < model.size(); ++i) {
    auto j = model.find(d - model.curve(i).divisor);
    if (j && i < *j) {
      if (intersect(model.curve(i).divisor, model.curve(*j).divisor) < 1) {
        throw InternalConsistencyError("degree-2 nef decomposition into disjoint curves");
      }
      out.emplace_back(i, *j);
    }
  }
  if (out.empty()) throw InternalConsistencyError("nef degree-2 class with no decomposition: " + d.to_string());
  return out;
}

}  // namespace dpcox
