#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jscheme/bits.hpp"
#include "jscheme/combin.hpp"

namespace jscheme {

using Vertex = std::uint32_t;

/// Parameters of J_S(n, k): vertices are k-subsets of [n], adjacent when the
/// intersection size lies in S. S is stored as a bitmask over 0..k-1.
struct JohnsonSpec {
  int n = 0;
  int k = 0;
  std::uint64_t intersections = 0;

  /// Validating constructor: 2 <= k <= n <= 64, S nonempty, max(S) <= k-1.
  static JohnsonSpec make(int n, int k, const std::vector<int>& s);

  void validate() const;
  bool allows(int intersection) const { return intersection >= 0 && intersection < 64 && ((intersections >> intersection) & 1U); }
  std::vector<int> s_values() const;
  std::uint64_t vertex_count() const { return binom(n, k); }
  /// Σ_{i∈S} C(k,i)·C(n−k,k−i).
  std::uint64_t degree() const;
  /// e.g. "J_{0,1}(9,4)".
  std::string name() const;

  friend bool operator==(const JohnsonSpec&, const JohnsonSpec&) = default;
};

/// (n, n−k, {s + n − 2k}). Values that would be negative correspond to empty
/// classes and are dropped; throws if nothing remains.
JohnsonSpec reflect(const JohnsonSpec& spec);

/// Same (n, k) with S replaced by {0..k−1} ∖ S; throws if that is empty.
JohnsonSpec complementary(const JohnsonSpec& spec);

/// Default materialization budget for dense adjacency rows.
inline constexpr std::size_t default_vertex_budget = 100'000;

/// Undirected simple graph stored as one adjacency bitmask row per vertex.
/// Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Takes ownership of a flat row-major bitmask (vertex_count rows of
  /// words_for(vertex_count) words). Throws if asymmetric or looped.
  Graph(std::size_t vertex_count, std::vector<std::uint64_t> rows, std::vector<KSubset> labels = {},
        std::optional<JohnsonSpec> spec = std::nullopt);

  static Graph from_edges(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t words() const { return words_; }
  std::span<const std::uint64_t> row(Vertex u) const { return {rows_.data() + std::size_t{u} * words_, words_}; }
  const std::vector<std::uint64_t>& raw_rows() const { return rows_; }
  bool adjacent(Vertex u, Vertex v) const { return bits::test(row(u), v); }
  std::size_t degree(Vertex u) const { return degrees_[u]; }
  const std::vector<std::uint32_t>& degrees() const { return degrees_; }
  std::size_t edge_count() const { return edges_; }
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<KSubset>& labels() const { return labels_; }
  /// Set only for graphs built directly from a JohnsonSpec.
  const std::optional<JohnsonSpec>& spec() const { return spec_; }

  /// Same adjacency, with the Johnson spec dropped (labels kept).
  Graph without_spec() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> degrees_;
  std::size_t edges_ = 0;
  std::vector<KSubset> labels_;
  std::optional<JohnsonSpec> spec_;
};

/// Materialize J_S(n,k) with vertices indexed by colex rank.
/// Throws budget_exceeded when C(n,k) > vertex_budget.
Graph build_johnson(const JohnsonSpec& spec, std::size_t vertex_budget = default_vertex_budget);

/// λ(x, y): number of common neighbours.
inline std::size_t common_neighbors(const Graph& g, Vertex x, Vertex y) { return bits::count_and(g.row(x), g.row(y)); }

/// Flip every off-diagonal adjacency. Labels are kept, the JohnsonSpec is not.
Graph complement(const Graph& g);

/// Subgraph induced by `vertices` (in the given order).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Relabel: vertex v of g becomes perm[v] in the result.
Graph permute(const Graph& g, std::span<const Vertex> perm);

std::size_t triangle_count(const Graph& g);

/// J_S(n,k) without materialized rows: adjacency is decided per query from
/// the vertex labels. Used for graphs past the dense budget, e.g. K(25,6).
class ImplicitJohnson {
 public:
  explicit ImplicitJohnson(const JohnsonSpec& spec);

  const JohnsonSpec& spec() const { return spec_; }
  std::size_t vertex_count() const { return labels_.size(); }
  const KSubset& label(Vertex u) const { return labels_[u]; }
  bool adjacent(Vertex u, Vertex v) const {
    return u != v && spec_.allows(std::popcount(labels_[u].bits() & labels_[v].bits()));
  }
  std::size_t degree(Vertex u) const;
  std::size_t neighbors_in(Vertex u, std::span<const Vertex> block) const;

 private:
  JohnsonSpec spec_;
  std::vector<KSubset> labels_;
};

}  // namespace jscheme
