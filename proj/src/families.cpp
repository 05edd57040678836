#include "jscheme/families.hpp"

#include <stdexcept>

namespace jscheme {

namespace {

// {first, ..., last}, 1-based.
KSubset interval(int first, int last, int n) {
  std::vector<int> e;
  for (int i = first; i <= last; ++i) e.push_back(i);
  return KSubset::from_elements(e, n);
}

std::vector<int> zero_to(int m) {
  std::vector<int> s;
  for (int i = 0; i <= m; ++i) s.push_back(i);
  return s;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

FamilyInstance make_instance(Family f, const JohnsonSpec& spec, const std::vector<std::vector<KSubset>>& blocks,
                             std::vector<std::pair<std::string, KSubset>> witnesses = {}) {
  std::vector<std::vector<Vertex>> vb;
  for (const auto& b : blocks) vb.push_back(vertices_of(b));
  return FamilyInstance{f, spec, SwitchingPartition(spec.vertex_count(), std::move(vb)), std::move(witnesses)};
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::jnk3: return "JNK3";
    case Family::k2prefix: return "K2PREFIX";
  }
  return "?";
}

const KSubset& FamilyInstance::witness(const std::string& name) const {
  for (const auto& [key, value] : witnesses)
    if (key == name) return value;
  throw std::out_of_range("no witness named " + name);
}

FamilyInstance family_A(int m, int n, bool unchecked) {
  require(m >= (unchecked ? 1 : 2), "family A needs m >= 2");
  require(n >= 4 * m + 2, "family A needs n >= 4m+2");
  require(n <= 64, "family A needs n <= 64");
  const int k = 2 * m + 1;
  const auto spec = JohnsonSpec::make(n, k, zero_to(m));
  const KSubset r = interval(1, 2 * m + 2, n);
  std::vector<KSubset> block;
  for (int e = 0; e < 2 * m + 2; ++e) block.emplace_back(r.bits() & ~(std::uint64_t{1} << e), n);
  return make_instance(Family::A, spec, {block},
                       {{"c0", interval(1, 2 * m + 1, n)}, {"v", interval(2 * m + 2, 4 * m + 2, n)}});
}

FamilyInstance family_B(int m, int k, bool unchecked) {
  require(m >= 0, "family B needs m >= 0");
  require(k >= m + 2 && (unchecked || k >= 3), "family B needs k >= max(m+2, 3)");
  const int n = 3 * k - 2 * m - 1;
  require(n <= 64, "family B needs 3k-2m-1 <= 64");
  const auto spec = JohnsonSpec::make(n, k, zero_to(m));
  const KSubset head = interval(1, k - 1, n);
  std::vector<KSubset> block;
  for (int r = k - 1; r < n; ++r) block.emplace_back(head.bits() | (std::uint64_t{1} << r), n);
  const KSubset w = KSubset(interval(1, k - 2, n).bits() | interval(k, k + 1, n).bits(), n);
  return make_instance(Family::B, spec, {block},
                       {{"c0", interval(1, k, n)},
                        {"c1", KSubset(head.bits() | (std::uint64_t{1} << k), n)},
                        {"w", w}});
}

FamilyInstance johnson_multiblock(int n, int k) {
  require(k >= 3 && k <= n - 3, "multi-block partition needs 3 <= k <= n-3");
  require(n <= 64, "multi-block partition needs n <= 64");
  const auto spec = JohnsonSpec::make(n, k, {k - 1});
  const std::uint64_t y = 0xF;
  std::vector<std::vector<KSubset>> blocks;
  for (const auto& rest : all_subsets(n - 4, k - 3)) {
    const std::uint64_t base = rest.bits() << 4;
    std::vector<KSubset> block;
    for (int drop = 0; drop < 4; ++drop) block.emplace_back(base | (y & ~(std::uint64_t{1} << drop)), n);
    blocks.push_back(std::move(block));
  }
  return make_instance(Family::jnk3, spec, blocks);
}

FamilyInstance generalized_multiblock(int m, int k, int n) {
  require(k >= 2 && m >= 0 && m <= k - 2, "need 0 <= m <= k-2");
  const int head = n - 2 * (k - m);
  require(head >= k, "need n >= 3k-2m so that k lies in the head");
  require(n <= 64, "need n <= 64");
  const auto spec = JohnsonSpec::make(n, k, zero_to(m));
  std::vector<std::vector<KSubset>> blocks;
  for (const auto& i : all_subsets(head, k - 1)) {
    std::vector<KSubset> block;
    for (int t = head; t < n; ++t) block.emplace_back(i.bits() | (std::uint64_t{1} << t), n);
    blocks.push_back(std::move(block));
  }
  return make_instance(Family::jnk3, spec, blocks);
}

CounterexampleReport multiblock_generalization_check(int m, int k, std::optional<int> n_opt,
                                                     std::size_t vertex_budget) {
  require(k >= 2 && m >= 0 && m <= k - 2, "need 0 <= m <= k-2");
  const int n = n_opt.value_or(3 * k - 2 * m);
  const int head = n - 2 * (k - m);
  require(head >= k, "need n >= 3k-2m so that k lies in the head");
  require(n <= 64, "need n <= 64");
  const auto spec = JohnsonSpec::make(n, k, zero_to(m));

  CounterexampleReport r;
  r.m = m;
  r.k = k;
  r.n = n;
  r.block_size = 2 * static_cast<std::size_t>(k - m);
  const std::uint64_t tail_mask = interval(head + 1, n, n).bits();
  std::uint64_t v = (m > 0 ? interval(1, m, n).bits() : 0) | (std::uint64_t{1} << (k - 1));
  for (int t = 0; t < k - m - 1; ++t) v |= std::uint64_t{1} << (head + t);
  r.witness = KSubset(v, n);

  const std::uint64_t first_head = interval(1, k - 1, n).bits();
  for (int t = head; t < n; ++t)
    if (spec.allows(std::popcount(v & (first_head | (std::uint64_t{1} << t))))) ++r.witness_count;
  r.fits_outside = r.witness_count == 0 || 2 * r.witness_count == r.block_size || r.witness_count == r.block_size;
  r.fits_other_block = std::popcount(v & tail_mask) == 1;
  r.fails = !r.fits_outside && !r.fits_other_block;

  if (spec.vertex_count() <= vertex_budget) {
    const auto inst = generalized_multiblock(m, k, n);
    const auto report = validate_partition(build_johnson(spec), inst.partition);
    r.partition_valid = report.valid;
    r.partition_nontrivial = report.nontrivial;
  }
  return r;
}

K2PrefixCounts k2prefix_counts(int n, int k, int m) {
  require(k >= 2 && m >= 0 && m <= k - 2, "need 0 <= m <= k-2");
  require(n >= k, "need n >= k");
  const std::int64_t outside = n - k + 2;
  K2PrefixCounts c;
  c.block_size = sbinom(outside, 2);
  c.case_iii = c.block_size - sbinom(k - m + 1, 2);
  c.case_iv = c.block_size - std::int64_t{n - 2 * k + m + 2} * (k - m) - sbinom(k - m, 2);
  c.case_iii_possible = m > 0;
  return c;
}

FamilyInstance k2prefix_block(int n, int k, int m) {
  require(k >= 3 && m >= 0 && m <= k - 2, "need k >= 3 and 0 <= m <= k-2");
  require(n >= k && n <= 64, "need k <= n <= 64");
  const auto spec = JohnsonSpec::make(n, k, zero_to(m));
  const std::uint64_t prefix = interval(1, k - 2, n).bits();
  std::vector<KSubset> block;
  for (const auto& pair : all_subsets(n - k + 2, 2)) block.emplace_back(prefix | (pair.bits() << (k - 2)), n);
  return make_instance(Family::k2prefix, spec, {block});
}

std::optional<int> k2prefix_predicate(int k) {
  require(k >= 2, "need k >= 2");
  const std::int64_t d = 8 * std::int64_t{k} * k + 1;
  std::int64_t s = 0;
  while ((s + 1) * (s + 1) <= d) ++s;
  if (s * s != d) return std::nullopt;
  const std::int64_t twice = 6 * std::int64_t{k} - 3 + s;
  if (twice % 2 != 0) return std::nullopt;
  return static_cast<int>(twice / 2);
}

LambdaPredictionA predict_lambda_A(int m, int n) {
  require(m >= 2 && n >= 4 * m + 2, "need m >= 2 and n >= 4m+2");
  const std::int64_t rest = n - (4 * m + 2);
  std::int64_t lost_sum = 0;
  std::int64_t gained_sum = 0;
  for (int i = 0; i <= m; ++i) {
    const std::int64_t term = sbinom(2 * m, i) * sbinom(rest, m - i);
    if (i < m) lost_sum += term;
    gained_sum += term;
  }
  LambdaPredictionA p;
  p.lost = sbinom(2 * m + 1, m) * lost_sum;
  p.gained = sbinom(2 * m + 1, m + 1) * gained_sum;
  p.delta = p.gained - p.lost;
  return p;
}

LambdaPredictionB predict_lambda_B(int m, int k) {
  require(m >= 0 && k >= m + 2, "need m >= 0 and k >= m+2");
  LambdaPredictionB p;
  p.lost = sbinom(k - 2, m) * sbinom(2 * (k - m - 1), k - m) + sbinom(k - 2, m - 1) * sbinom(2 * k - 2 * m - 1, k - m);
  p.gained = sbinom(k - 2, m - 1) * sbinom(2 * (k - m - 1), k - m - 1);
  return p;
}

std::vector<std::vector<KSubset>> j2_8_4_fixture_blocks() {
  const std::vector<std::vector<std::vector<int>>> raw = {
      {{1, 2, 3, 4}, {1, 2, 5, 6}, {1, 2, 3, 5}, {1, 2, 4, 6}, {3, 4, 7, 8}, {3, 5, 7, 8}, {4, 6, 7, 8}, {5, 6, 7, 8}},
      {{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 4, 6, 7}, {1, 5, 6, 7}, {2, 3, 4, 8}, {2, 3, 5, 8}, {4, 6, 7, 8}, {5, 6, 7, 8}},
  };
  std::vector<std::vector<KSubset>> out;
  for (const auto& block : raw) {
    std::vector<KSubset> b;
    for (const auto& e : block) b.push_back(KSubset::from_elements(e, 8));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace jscheme
