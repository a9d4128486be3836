#ifndef DPCOX_ORACLE_SCALAR_HPP
#define DPCOX_ORACLE_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>

#include <gmpxx.h>
#include <Eigen/Core>

namespace dpcox {

// Element of F_p, p = 2^31 - 1.
class ModP {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 31) - 1;

  constexpr ModP() = default;
  constexpr ModP(std::int64_t v) : v_(reduce_signed(v)) {}  // NOLINT: implicit like an integer literal

  static ModP from_mpz(const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(kPrime));
    ModP out;
    out.v_ = static_cast<std::uint32_t>(r.get_ui());
    return out;
  }
  // Throws std::domain_error if p divides the denominator.
  static ModP from_mpq(const mpq_class& q);

  constexpr std::uint32_t value() const noexcept { return v_; }
  constexpr bool is_zero() const noexcept { return v_ == 0; }

  friend constexpr ModP operator+(ModP a, ModP b) noexcept { return raw(fold(std::uint64_t{a.v_} + b.v_)); }
  friend constexpr ModP operator-(ModP a, ModP b) noexcept { return raw(fold(std::uint64_t{a.v_} + kPrime - b.v_)); }
  friend constexpr ModP operator*(ModP a, ModP b) noexcept { return raw(fold(std::uint64_t{a.v_} * b.v_)); }
  constexpr ModP operator-() const noexcept { return raw(v_ == 0 ? 0 : static_cast<std::uint32_t>(kPrime - v_)); }
  ModP& operator+=(ModP b) noexcept { return *this = *this + b; }
  ModP& operator-=(ModP b) noexcept { return *this = *this - b; }
  ModP& operator*=(ModP b) noexcept { return *this = *this * b; }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator/=(ModP b) { return *this = *this / b; }

  ModP pow(std::uint64_t e) const noexcept {
    ModP base = *this, acc = raw(1);
    for (; e; e >>= 1) {
      if (e & 1) acc *= base;
      base *= base;
    }
    return acc;
  }
  ModP inverse() const;  // throws std::domain_error on zero

  friend constexpr bool operator==(ModP a, ModP b) noexcept { return a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

 private:
  static constexpr ModP raw(std::uint32_t v) noexcept {
    ModP m;
    m.v_ = v;
    return m;
  }
  // Mersenne reduction: 2^31 = 1 mod p.
  static constexpr std::uint32_t fold(std::uint64_t x) noexcept {
    x = (x & kPrime) + (x >> 31);
    x = (x & kPrime) + (x >> 31);
    return static_cast<std::uint32_t>(x == kPrime ? 0 : x);
  }
  static constexpr std::uint32_t reduce_signed(std::int64_t v) noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(kPrime);
    if (r < 0) r += static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t v_ = 0;
};

inline ModP ModP::inverse() const {
  if (v_ == 0) throw std::domain_error("inverse of zero mod p");
  return pow(kPrime - 2);
}

inline ModP ModP::from_mpq(const mpq_class& q) {
  ModP den = from_mpz(q.get_den());
  if (den.is_zero()) throw std::domain_error("denominator divisible by p");
  return from_mpz(q.get_num()) * den.inverse();
}

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline bool is_zero(const ModP& v) { return v.is_zero(); }
inline bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_zero(const mpq_class& v) { return sgn(v) == 0; }

}  // namespace dpcox

namespace Eigen {

template <>
struct NumTraits<dpcox::ModP> : GenericNumTraits<dpcox::ModP> {
  using Real = dpcox::ModP;
  using NonInteger = dpcox::ModP;
  using Nested = dpcox::ModP;
  using Literal = dpcox::ModP;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 9; }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Nested = mpz_class;
  using Literal = mpz_class;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 50
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // DPCOX_ORACLE_SCALAR_HPP
