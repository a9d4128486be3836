#ifndef DPCOX_PICARD_LATTICE_HPP
#define DPCOX_PICARD_LATTICE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace dpcox {

inline constexpr int kMinRank = 2;
inline constexpr int kMaxRank = 7;

// A class d0*L + d1*E_1 + ... + dr*E_r in Pic(X_r), r = number of blown-up points.
// Coefficients beyond the rank are kept at zero so that defaulted comparison is
// exact.
class DivisorClass {
 public:
  using Coefficient = std::int64_t;
  using Storage = std::array<Coefficient, kMaxRank + 1>;

  DivisorClass() = default;
  explicit DivisorClass(int rank);
  DivisorClass(int rank, std::span<const Coefficient> coeffs);
  DivisorClass(int rank, std::initializer_list<Coefficient> coeffs);

  // Rank is inferred from the length (length = rank + 1).
  static DivisorClass from_coefficients(std::span<const Coefficient> coeffs);

  static DivisorClass line(int rank);
  static DivisorClass exceptional(int rank, int i);  // E_i, 1-based

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return rank_ + 1; }
  Coefficient operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  std::span<const Coefficient> coefficients() const noexcept {
    return {coeffs_.data(), static_cast<std::size_t>(rank_ + 1)};
  }
  std::vector<Coefficient> to_vector() const;
  bool is_zero() const noexcept;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  DivisorClass operator-() const;

  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(Coefficient k, const DivisorClass& d);

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  std::string to_string() const;  // "[d0, d1, ..., dr]"

 private:
  int rank_ = 0;
  Storage coeffs_{};
};

struct DivisorClassHash {
  std::size_t operator()(const DivisorClass& d) const noexcept;
};

// A class R with R.R = -2 and R.K = 0.
class RootClass {
 public:
  explicit RootClass(DivisorClass cls);  // throws ContractViolation if not a root
  const DivisorClass& divisor() const noexcept { return class_; }
  friend bool operator==(const RootClass&, const RootClass&) = default;

 private:
  DivisorClass class_;
};

void require_valid_rank(int rank);
void require_same_rank(const DivisorClass& a, const DivisorClass& b);

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b);
DivisorClass canonical_class(int rank);
std::int64_t anticanonical_degree(const DivisorClass& d);
inline std::int64_t self_intersection(const DivisorClass& d) { return intersect(d, d); }

// Roots found by exhaustive search over |d0| <= 4, |di| <= 3, sorted.
std::vector<RootClass> weyl_roots(int rank);
DivisorClass reflect(const DivisorClass& d, const RootClass& root);

}  // namespace dpcox

#endif  // DPCOX_PICARD_LATTICE_HPP
