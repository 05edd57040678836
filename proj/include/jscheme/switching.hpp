#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "jscheme/graph.hpp"

namespace jscheme {

/// Blocks C_1..C_t of a Godsil-McKay partition. Every vertex outside the
/// blocks belongs to the implicit remainder D.
class SwitchingPartition {
 public:
  SwitchingPartition() = default;
  /// Blocks are sorted on construction. Throws std::invalid_argument for
  /// empty blocks, overlapping blocks or out-of-range vertices.
  SwitchingPartition(std::size_t vertex_count, std::vector<std::vector<Vertex>> blocks);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<Vertex>>& blocks() const { return blocks_; }
  std::span<const Vertex> block(std::size_t i) const { return blocks_[i]; }
  std::span<const std::uint64_t> mask(std::size_t i) const {
    return {masks_.data() + i * words_, words_};
  }
  /// Index of the block containing v, or -1 when v is in D.
  int owner(Vertex v) const { return owner_[v]; }

 private:
  std::size_t vertex_count_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> blocks_;
  std::vector<std::uint64_t> masks_;
  std::vector<int> owner_;
};

enum class OutsideClass : std::uint8_t { member, none, half, full, violation };

const char* to_string(OutsideClass c);

struct InternalViolation {
  std::size_t block;    // the block the vertex belongs to (i)
  std::size_t target;   // the block whose neighbours are counted (j)
  Vertex vertex;
  std::size_t count;
  std::size_t expected;  // count seen at the first vertex of block i
};

struct OutsideViolation {
  Vertex vertex;
  std::size_t block;
  std::size_t count;
};

/// Outcome of checking both Godsil-McKay conditions. All violations are
/// listed, not just the first.
struct ValidationReport {
  bool valid = false;
  /// Some D vertex has exactly |C_i|/2 neighbours in some C_i.
  bool nontrivial = false;
  /// internal_counts[i][j]: neighbours in C_j of the first vertex of C_i.
  std::vector<std::vector<std::size_t>> internal_counts;
  std::vector<InternalViolation> internal_violations;
  /// classes[i][v]: class of v with respect to C_i (member for non-D vertices).
  std::vector<std::vector<OutsideClass>> classes;
  std::vector<OutsideViolation> outside_violations;
  /// Per block: D-vertex neighbour count -> number of D vertices with that count.
  std::vector<std::map<std::size_t, std::size_t>> outside_histogram;
  /// Per block: D vertices in the half class, sorted.
  std::vector<std::vector<Vertex>> half_class;
};

ValidationReport validate_partition(const Graph& g, const SwitchingPartition& p);
ValidationReport validate_partition(const ImplicitJohnson& g, const SwitchingPartition& p);

/// Godsil-McKay switch: every D vertex with |C_i|/2 neighbours in C_i has
/// its adjacency to C_i complemented. Throws std::invalid_argument when the
/// partition does not validate.
Graph apply_switch(const Graph& g, const SwitchingPartition& p);
/// Same, reusing a report already computed for (g, p).
Graph apply_switch(const Graph& g, const SwitchingPartition& p, const ValidationReport& report);

/// Vertex indices of `subsets` within a Johnson graph, i.e. their ranks.
std::vector<Vertex> vertices_of(std::span<const KSubset> subsets);

}  // namespace jscheme
