#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace jscheme {

/// Largest `a` for which every C(a, b) fits in 64 bits.
inline constexpr int max_binom_row = 67;

/// C(a, b). Zero when b < 0 or b > a. Throws std::invalid_argument for a < 0
/// and std::overflow_error when a exceeds max_binom_row.
std::uint64_t binom(std::int64_t a, std::int64_t b);

/// Signed convenience wrapper used by the closed-form counting formulas.
inline std::int64_t sbinom(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(binom(a, b));
}

/// A k-subset of the ground set {0, ..., n-1}, stored as a bitmask.
/// Externally (JSON, CLI, docs) elements are 1-based.
class KSubset {
 public:
  KSubset() = default;
  KSubset(std::uint64_t bits, int n);

  /// Build from 1-based elements. Duplicates and out-of-range elements throw.
  static KSubset from_elements(const std::vector<int>& one_based, int n);
  /// Build from 0-based positions.
  static KSubset from_positions(const std::vector<int>& zero_based, int n);

  std::uint64_t bits() const { return bits_; }
  int n() const { return n_; }
  int k() const { return std::popcount(bits_); }
  bool contains(int pos) const { return (bits_ >> pos) & 1U; }

  /// Sorted 1-based elements.
  std::vector<int> elements() const;
  std::string to_string() const;

  friend bool operator==(const KSubset&, const KSubset&) = default;

 private:
  std::uint64_t bits_ = 0;
  int n_ = 0;
};

/// |a ∩ b|; throws std::invalid_argument when the ground sets differ.
int intersection_size(const KSubset& a, const KSubset& b);

/// Colexicographic rank in 0 .. C(n, k) - 1.
std::uint64_t rank(const KSubset& s);

/// Inverse of rank; throws std::out_of_range for index >= C(n, k).
KSubset unrank(std::uint64_t index, int n, int k);

/// All k-subsets of an n-set in rank order.
std::vector<KSubset> all_subsets(int n, int k);

}  // namespace jscheme
