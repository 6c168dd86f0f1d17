#pragma once

// Exact integer helpers shared by every module. Tuple entries live in
// int64_t; anything that multiplies more than two of them goes through
// i128 (six entries of magnitude 2^20 need ~126 bits for sigma_6).

#include <cstdint>
#include <string>

namespace bzk {

using i128 = __int128;
using u128 = unsigned __int128;

/// Largest supported |q_i|. Keeps sigma_1..sigma_6 inside i128.
inline constexpr std::int64_t kMaxEntry = std::int64_t{1} << 20;

constexpr i128 abs128(i128 x) { return x < 0 ? -x : x; }

/// gcd on absolute values, gcd(0, x) = |x|.
constexpr i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Least non-negative residue of x modulo m (m > 0).
constexpr i128 mod_floor(i128 x, i128 m) {
  i128 r = x % m;
  return r < 0 ? r + m : r;
}

/// floor(sqrt(x)) for x >= 0, exact.
constexpr std::uint64_t isqrt(std::uint64_t x) {
  std::uint64_t lo = 0;
  std::uint64_t hi = std::uint64_t{1} << 32;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (static_cast<u128>(mid) * mid <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::string to_string(i128 x);

}  // namespace bzk
