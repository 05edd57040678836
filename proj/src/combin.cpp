#include "jscheme/combin.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace jscheme {

namespace {

using PascalTable = std::array<std::array<std::uint64_t, max_binom_row + 1>, max_binom_row + 1>;

const PascalTable& pascal() {
  static const PascalTable table = [] {
    PascalTable t{};
    for (int a = 0; a <= max_binom_row; ++a) {
      t[a][0] = 1;
      for (int b = 1; b <= a; ++b) t[a][b] = t[a - 1][b - 1] + (b < a ? t[a - 1][b] : 0);
    }
    return t;
  }();
  return table;
}

void check_ground(int n) {
  if (n < 0 || n > 64) throw std::invalid_argument("ground set size must be in 0..64");
}

}  // namespace

std::uint64_t binom(std::int64_t a, std::int64_t b) {
  if (a < 0) throw std::invalid_argument("binom: negative upper index");
  if (b < 0 || b > a) return 0;
  if (a > max_binom_row) throw std::overflow_error("binom: upper index exceeds 64-bit table");
  return pascal()[a][b];
}

KSubset::KSubset(std::uint64_t bits, int n) : bits_(bits), n_(n) {
  check_ground(n);
  if (n < 64 && (bits >> n) != 0) throw std::invalid_argument("subset has elements above n");
}

KSubset KSubset::from_positions(const std::vector<int>& zero_based, int n) {
  check_ground(n);
  std::uint64_t bits = 0;
  for (int p : zero_based) {
    if (p < 0 || p >= n) throw std::invalid_argument("subset element out of range");
    const std::uint64_t bit = std::uint64_t{1} << p;
    if (bits & bit) throw std::invalid_argument("duplicate subset element");
    bits |= bit;
  }
  return KSubset(bits, n);
}

KSubset KSubset::from_elements(const std::vector<int>& one_based, int n) {
  std::vector<int> zero_based;
  zero_based.reserve(one_based.size());
  for (int e : one_based) zero_based.push_back(e - 1);
  return from_positions(zero_based, n);
}

std::vector<int> KSubset::elements() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::string KSubset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int e : elements()) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

int intersection_size(const KSubset& a, const KSubset& b) {
  if (a.n() != b.n()) throw std::invalid_argument("intersection of subsets over different ground sets");
  return std::popcount(a.bits() & b.bits());
}

std::uint64_t rank(const KSubset& s) {
  std::uint64_t r = 0;
  int j = 1;
  for (std::uint64_t b = s.bits(); b; b &= b - 1, ++j) r += binom(std::countr_zero(b), j);
  return r;
}

KSubset unrank(std::uint64_t index, int n, int k) {
  check_ground(n);
  if (k < 0 || k > n) throw std::invalid_argument("unrank: k out of range");
  if (index >= binom(n, k)) throw std::out_of_range("unrank: index out of range");
  std::uint64_t bits = 0;
  int c = n - 1;
  for (int j = k; j >= 1; --j) {
    while (binom(c, j) > index) --c;
    bits |= std::uint64_t{1} << c;
    index -= binom(c, j);
    --c;
  }
  return KSubset(bits, n);
}

std::vector<KSubset> all_subsets(int n, int k) {
  check_ground(n);
  if (k < 0 || k > n) return {};
  std::vector<KSubset> out;
  out.reserve(binom(n, k));
  if (k == 0) {
    out.emplace_back(0, n);
    return out;
  }
  // Gosper's hack walks k-subsets in increasing integer order, which is colex.
  const std::uint64_t total = binom(n, k);
  std::uint64_t x = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  for (std::uint64_t i = 0;; ++i) {
    out.emplace_back(x, n);
    if (i + 1 == total) break;
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

}  // namespace jscheme
