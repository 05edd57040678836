#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace jscheme::bits {

inline constexpr std::size_t words_for(std::size_t count) { return (count + 63) / 64; }

inline bool test(std::span<const std::uint64_t> row, std::size_t i) { return (row[i / 64] >> (i % 64)) & 1U; }
inline void set(std::span<std::uint64_t> row, std::size_t i) { row[i / 64] |= std::uint64_t{1} << (i % 64); }
inline void flip(std::span<std::uint64_t> row, std::size_t i) { row[i / 64] ^= std::uint64_t{1} << (i % 64); }

inline std::size_t count(std::span<const std::uint64_t> row) {
  std::size_t c = 0;
  for (auto w : row) c += std::popcount(w);
  return c;
}

inline std::size_t count_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

template <class F>
void for_each_set(std::span<const std::uint64_t> row, F&& f) {
  for (std::size_t w = 0; w < row.size(); ++w)
    for (std::uint64_t b = row[w]; b; b &= b - 1) f(w * 64 + std::countr_zero(b));
}

}  // namespace jscheme::bits
