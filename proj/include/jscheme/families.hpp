#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jscheme/graph.hpp"
#include "jscheme/switching.hpp"

namespace jscheme {

enum class Family { A, B, jnk3, k2prefix };

const char* to_string(Family f);

/// A constructed graph spec plus a switching partition over its rank-indexed
/// vertices and named witness vertices.
struct FamilyInstance {
  Family family;
  JohnsonSpec spec;
  SwitchingPartition partition;
  std::vector<std::pair<std::string, KSubset>> witnesses;

  const KSubset& witness(const std::string& name) const;
  Vertex witness_vertex(const std::string& name) const { return static_cast<Vertex>(rank(witness(name))); }
};

/// G = J_{0..m}(n, 2m+1), C = the (2m+1)-subsets of [2m+2].
/// Witnesses c0 = [2m+1], v = {2m+2, ..., 4m+2}.
/// Requires m >= 2 and n >= 4m+2; `unchecked` relaxes the first bound to m >= 1.
FamilyInstance family_A(int m, int n, bool unchecked = false);

/// G = J_{0..m}(3k−2m−1, k), C = {c : [k−1] ⊂ c}.
/// Witnesses c0 = [k], c1 = [k−1] ∪ {k+1}, w = [k−2] ∪ {k, k+1}.
/// Requires m >= 0 and k >= max(m+2, 3); `unchecked` relaxes to k >= m+2.
FamilyInstance family_B(int m, int k, bool unchecked = false);

/// Multi-block partition of J(n,k) = J_{k−1}(n,k): with Y = {1,2,3,4}, one
/// block per (k−3)-subset I of [n]∖Y made of the four k-sets I ∪ (Y∖{y}).
/// Requires 3 <= k <= n−3.
FamilyInstance johnson_multiblock(int n, int k);

/// Attempted extension of family B to n != 3k−2m−1, and the vertex that
/// breaks it.
struct CounterexampleReport {
  int m = 0;
  int k = 0;
  int n = 0;
  std::size_t block_size = 0;      // 2(k−m)
  KSubset witness;                 // [m] ∪ {k} ∪ (k−m−1 tail elements)
  std::size_t witness_count = 0;   // neighbours of the witness in C_1
  bool fits_outside = false;       // count in {0, half, full}
  bool fits_other_block = false;   // witness belongs to some C_i
  bool fails = false;              // !fits_outside && !fits_other_block
  /// Full Godsil-McKay validation of the candidate partition, when the graph
  /// fits the vertex budget.
  std::optional<bool> partition_valid;
  std::optional<bool> partition_nontrivial;
};

/// Candidate blocks C_I = {I ∪ {t}} for each (k−1)-subset I of the head
/// [n−2(k−m)] and t in the tail. Defaults to n = 3k−2m, the smallest size at
/// which k lies in the head. Requires 0 <= m <= k−2 and n >= 3k−2m.
CounterexampleReport multiblock_generalization_check(int m, int k, std::optional<int> n = std::nullopt,
                                                     std::size_t vertex_budget = 5000);

/// The candidate partition built by multiblock_generalization_check.
FamilyInstance generalized_multiblock(int m, int k, int n);

/// Neighbour counts into C = {c : [k−2] ⊂ c} in J_{0..m}(n,k) for a vertex
/// with m−1 (case iii) or m (case iv) elements in [k−2].
struct K2PrefixCounts {
  std::int64_t case_iii = 0;
  std::int64_t case_iv = 0;
  std::int64_t block_size = 0;  // C(n−k+2, 2)
  bool case_iii_possible = true;  // false when m = 0
};

K2PrefixCounts k2prefix_counts(int n, int k, int m);

/// The block {c : [k−2] ⊂ c} in J_{0..m}(n,k).
FamilyInstance k2prefix_block(int n, int k, int m);

/// n with 2n = 6k − 3 + sqrt(8k² + 1), when that is an integer. Throws for k < 2.
std::optional<int> k2prefix_predicate(int k);

struct LambdaPredictionA {
  std::int64_t lost = 0;
  std::int64_t gained = 0;
  std::int64_t delta = 0;
};

struct LambdaPredictionB {
  std::int64_t lost = 0;
  std::int64_t gained = 0;
};

/// Common neighbours of (c0, v) removed/added by switching family A.
LambdaPredictionA predict_lambda_A(int m, int n);
/// Common neighbours of (c0, w) removed/added by switching family B.
LambdaPredictionB predict_lambda_B(int m, int k);

/// The two explicit size-8 switching sets of J_{2}(8,4).
std::vector<std::vector<KSubset>> j2_8_4_fixture_blocks();

}  // namespace jscheme
