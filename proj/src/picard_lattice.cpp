#include "dpcox/picard_lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "dpcox/checked_int.hpp"
#include "dpcox/errors.hpp"

namespace dpcox {

namespace {

constexpr int kRootBoxLine = 4;
constexpr int kRootBoxPoint = 3;

}  // namespace

void require_valid_rank(int rank) {
  if (rank < kMinRank || rank > kMaxRank) {
    throw UnsupportedRank("rank must lie in [2, 7], got " + std::to_string(rank));
  }
}

void require_same_rank(const DivisorClass& a, const DivisorClass& b) {
  if (a.rank() != b.rank()) {
    throw ContractViolation("rank mismatch: " + std::to_string(a.rank()) + " vs " +
                            std::to_string(b.rank()));
  }
}

DivisorClass::DivisorClass(int rank) : rank_(rank) { require_valid_rank(rank); }

DivisorClass::DivisorClass(int rank, std::span<const Coefficient> coeffs) : DivisorClass(rank) {
  if (coeffs.size() != static_cast<std::size_t>(rank + 1)) {
    throw ContractViolation("divisor class of rank " + std::to_string(rank) + " needs " +
                            std::to_string(rank + 1) + " coefficients, got " +
                            std::to_string(coeffs.size()));
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

DivisorClass::DivisorClass(int rank, std::initializer_list<Coefficient> coeffs)
    : DivisorClass(rank, std::span<const Coefficient>(coeffs.begin(), coeffs.size())) {}

DivisorClass DivisorClass::from_coefficients(std::span<const Coefficient> coeffs) {
  if (coeffs.empty()) throw ContractViolation("empty coefficient vector");
  return DivisorClass(static_cast<int>(coeffs.size()) - 1, coeffs);
}

DivisorClass DivisorClass::line(int rank) {
  DivisorClass d(rank);
  d.coeffs_[0] = 1;
  return d;
}

DivisorClass DivisorClass::exceptional(int rank, int i) {
  DivisorClass d(rank);
  if (i < 1 || i > rank) throw ContractViolation("E_i index out of range");
  d.coeffs_[static_cast<std::size_t>(i)] = 1;
  return d;
}

std::vector<DivisorClass::Coefficient> DivisorClass::to_vector() const {
  auto c = coefficients();
  return {c.begin(), c.end()};
}

bool DivisorClass::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Coefficient c) { return c == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  require_same_rank(*this, other);
  for (int i = 0; i <= rank_; ++i) {
    coeffs_[static_cast<std::size_t>(i)] = checked_add(coeffs_[static_cast<std::size_t>(i)], other[i]);
  }
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  require_same_rank(*this, other);
  for (int i = 0; i <= rank_; ++i) {
    coeffs_[static_cast<std::size_t>(i)] = checked_sub(coeffs_[static_cast<std::size_t>(i)], other[i]);
  }
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass out(rank_);
  for (int i = 0; i <= rank_; ++i) out.coeffs_[static_cast<std::size_t>(i)] = checked_sub(0, (*this)[i]);
  return out;
}

DivisorClass operator*(DivisorClass::Coefficient k, const DivisorClass& d) {
  DivisorClass out(d.rank());
  for (int i = 0; i <= d.rank(); ++i) out.coeffs_[static_cast<std::size_t>(i)] = checked_mul(k, d[i]);
  return out;
}

std::string DivisorClass::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i <= rank_; ++i) {
    if (i) os << ", ";
    os << (*this)[i];
  }
  os << ']';
  return os.str();
}

std::size_t DivisorClassHash::operator()(const DivisorClass& d) const noexcept {
  std::size_t h = static_cast<std::size_t>(d.rank());
  for (auto c : d.coefficients()) {
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

RootClass::RootClass(DivisorClass cls) : class_(cls) {
  if (self_intersection(class_) != -2 || anticanonical_degree(class_) != 0) {
    throw ContractViolation("not a root class: " + class_.to_string());
  }
}

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) {
  require_same_rank(a, b);
  std::int64_t acc = checked_mul(a[0], b[0]);
  for (int i = 1; i <= a.rank(); ++i) acc = checked_sub(acc, checked_mul(a[i], b[i]));
  return acc;
}

DivisorClass canonical_class(int rank) {
  require_valid_rank(rank);
  std::vector<DivisorClass::Coefficient> c(static_cast<std::size_t>(rank + 1), 1);
  c[0] = -3;
  return DivisorClass(rank, c);
}

std::int64_t anticanonical_degree(const DivisorClass& d) {
  // -K.d = 3 d0 + sum d_i, since E_i.E_i = -1
  std::int64_t acc = checked_mul(3, d[0]);
  for (int i = 1; i <= d.rank(); ++i) acc = checked_add(acc, d[i]);
  return acc;
}

std::vector<RootClass> weyl_roots(int rank) {
  require_valid_rank(rank);
  std::vector<RootClass> roots;
  std::vector<DivisorClass::Coefficient> c(static_cast<std::size_t>(rank + 1), 0);
  // Odometer over the point coefficients; d0 is forced by R.K = 0: 3 d0 = -sum d_i.
  std::vector<int> digits(static_cast<std::size_t>(rank), -kRootBoxPoint);
  while (true) {
    long sum = 0;
    long squares = 0;
    for (int i = 0; i < rank; ++i) {
      sum += digits[static_cast<std::size_t>(i)];
      squares += digits[static_cast<std::size_t>(i)] * digits[static_cast<std::size_t>(i)];
    }
    if (sum % 3 == 0) {
      long d0 = -sum / 3;
      if (d0 >= -kRootBoxLine && d0 <= kRootBoxLine && d0 * d0 - squares == -2) {
        c[0] = d0;
        for (int i = 0; i < rank; ++i) c[static_cast<std::size_t>(i + 1)] = digits[static_cast<std::size_t>(i)];
        roots.emplace_back(DivisorClass(rank, c));
      }
    }
    int pos = rank - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == kRootBoxPoint) {
      digits[static_cast<std::size_t>(pos)] = -kRootBoxPoint;
      --pos;
    }
    if (pos < 0) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  std::sort(roots.begin(), roots.end(),
            [](const RootClass& a, const RootClass& b) { return a.divisor() < b.divisor(); });
  return roots;
}

DivisorClass reflect(const DivisorClass& d, const RootClass& root) {
  return d + intersect(d, root.divisor()) * root.divisor();
}

}  // namespace dpcox
