#pragma once

#include <cstdint>

namespace jscheme::modp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;  // a, b < p < 2^63, no wraparound
  return s >= p ? s - p : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }
inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1U) r = mul(r, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return r;
}

/// Inverse of a nonzero residue modulo a prime.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) { return pow(a, p - 2, p); }

/// Reduce a signed integer into [0, p).
inline std::uint64_t from_signed(std::int64_t v, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  std::int64_t r = v % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n);

}  // namespace jscheme::modp
