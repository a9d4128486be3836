#ifndef DPCOX_CHECKED_INT_HPP
#define DPCOX_CHECKED_INT_HPP

#include <cstdint>
#include <stdexcept>

namespace dpcox {

// Overflow is a hard error everywhere in the lattice code; certificates built
// from wrapped integers would be meaningless.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("int64 subtraction overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 multiplication overflow");
  return r;
}

}  // namespace dpcox

#endif  // DPCOX_CHECKED_INT_HPP
