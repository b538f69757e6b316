#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "stdf/error.hpp"

namespace stdf {

// Edge capacities are non-negative integers or unbounded. Unbounded is a
// sentinel, not a huge finite number: arithmetic below keeps it absorbing so
// flow values stay exact.
struct Capacity {
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

  std::uint64_t raw = 0;

  constexpr Capacity() = default;
  constexpr explicit Capacity(std::uint64_t v) : raw(v) {}

  static constexpr Capacity finite(std::uint64_t v) { return Capacity(v); }
  static constexpr Capacity infinite() { return Capacity(kInf); }

  constexpr bool is_infinite() const { return raw == kInf; }
  constexpr bool is_zero() const { return raw == 0; }

  std::uint64_t finite_value() const {
    if (is_infinite()) throw Error(ErrorCode::Internal, "finite_value() on unbounded capacity");
    return raw;
  }

  friend constexpr bool operator==(Capacity a, Capacity b) { return a.raw == b.raw; }
  friend constexpr bool operator!=(Capacity a, Capacity b) { return a.raw != b.raw; }
  friend constexpr bool operator<(Capacity a, Capacity b) { return a.raw < b.raw; }

  friend Capacity operator+(Capacity a, Capacity b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    if (a.raw > kInf - 1 - b.raw)
      throw Error(ErrorCode::Validation, "capacity addition overflow");
    return Capacity(a.raw + b.raw);
  }

  // a - b with a >= b; unbounded minus anything stays unbounded.
  friend Capacity operator-(Capacity a, Capacity b) {
    if (a.is_infinite()) return infinite();
    if (b.is_infinite() || b.raw > a.raw)
      throw Error(ErrorCode::Internal, "capacity subtraction underflow");
    return Capacity(a.raw - b.raw);
  }

  friend constexpr Capacity min(Capacity a, Capacity b) { return a.raw < b.raw ? a : b; }
};

// Parallel-edge merging cannot reject its input, so a finite overflow rounds
// up to unbounded instead of throwing like operator+ does.
inline Capacity saturating_add(Capacity a, Capacity b) {
  if (a.is_infinite() || b.is_infinite()) return Capacity::infinite();
  const std::uint64_t sum = a.raw + b.raw;
  if (sum < a.raw || sum == Capacity::kInf) return Capacity::infinite();
  return Capacity(sum);
}

inline std::string to_string(Capacity c) {
  return c.is_infinite() ? "inf" : std::to_string(c.raw);
}

}  // namespace stdf
