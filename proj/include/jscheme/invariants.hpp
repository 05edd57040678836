#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "jscheme/graph.hpp"

namespace jscheme {

/// Common neighbour pattern of one vertex: the sorted λ(x, y) over y != x.
struct VertexPattern {
  Vertex vertex = 0;
  std::vector<std::uint32_t> pattern;
};

/// λ(x, y) for every y (λ(x, x) = deg x included at position x).
std::vector<std::uint32_t> lambda_row(const Graph& g, Vertex x);

VertexPattern vertex_pattern(const Graph& g, Vertex x);

/// Multiset over vertices of their common-neighbour patterns. `patterns` is
/// sorted, so two censuses are equal iff the multisets are.
struct PatternCensus {
  std::vector<std::vector<std::uint32_t>> patterns;
  std::uint64_t hash = 0;
  std::size_t distinct() const;

  friend bool operator==(const PatternCensus& a, const PatternCensus& b) {
    return a.hash == b.hash && a.patterns == b.patterns;
  }
};

PatternCensus pattern_census(const Graph& g, std::size_t workers = 0);

std::vector<std::uint32_t> sorted_degrees(const Graph& g);

/// Edge count, triangle count and pattern-census hash of the subgraph
/// induced on N(v).
struct LocalSignature {
  std::size_t edges = 0;
  std::size_t triangles = 0;
  std::uint64_t census_hash = 0;
  friend auto operator<=>(const LocalSignature&, const LocalSignature&) = default;
};
LocalSignature local_signature(const Graph& g, Vertex v);
/// Sorted local signatures over all vertices.
std::vector<LocalSignature> neighbourhood_census(const Graph& g, std::size_t workers = 0);

/// Pair colours (λ(x, y) << 1 | adjacent(x, y)), row-major; the diagonal
/// holds deg(x) << 1.
struct EdgeColours {
  std::size_t n = 0;
  std::vector<std::uint32_t> colour;
  std::uint32_t at(std::size_t x, std::size_t y) const { return colour[x * n + y]; }
};
EdgeColours edge_colours(const Graph& g);

/// Colour refinement over edge colours until the class count stops growing.
/// Colours are hashes of the refinement history, so they depend only on the
/// isomorphism type of (g, individualized).
std::vector<std::uint64_t> stable_colours(const EdgeColours& e, std::optional<Vertex> individualized = std::nullopt);
/// Sorted stable colours.
std::vector<std::uint64_t> refined_census(const Graph& g);
/// Sorted multiset, over v, of the stable colouring with v individualized.
std::vector<std::uint64_t> individualized_census(const Graph& g, std::size_t workers = 0);

struct NonIsoVerdict {
  bool distinguished = false;
  /// The first invariant that differs: "vertex count", "edge count",
  /// "degree sequence", "triangle count", "pattern census", "neighbourhood
  /// census", "refined census" or "individualized census".
  std::string invariant;
};

/// Cheap-to-expensive invariant comparison. `distinguished` is a proof of
/// non-isomorphism; otherwise the result is inconclusive.
NonIsoVerdict noniso_certificate(const Graph& g, const Graph& h, std::size_t workers = 0);

enum class IsoStatus { isomorphic, not_isomorphic, undecided_budget };

const char* to_string(IsoStatus s);

struct IsoResult {
  IsoStatus status = IsoStatus::undecided_budget;
  /// mapping[v] is the image in h of vertex v of g; verified edge by edge.
  std::vector<Vertex> mapping;
  std::size_t search_nodes = 0;
};

struct IsoBudget {
  std::size_t max_vertices = 512;
  std::size_t max_nodes = 200'000;
  /// Answer NOT_ISOMORPHIC straight from noniso_certificate when it separates
  /// the pair; off forces a decision by refinement and search alone.
  bool invariant_shortcut = true;
};

/// Complete isomorphism decision: colour refinement seeded with
/// (degree, sorted λ-row) classes, then individualization and backtracking.
/// Pairs separated by noniso_certificate are answered without search.
/// Returns undecided_budget rather than guessing when a budget runs out.
IsoResult exact_iso(const Graph& g, const Graph& h, const IsoBudget& budget = {});

/// True when mapping is a bijection carrying edges of g exactly onto edges of h.
bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& mapping);

}  // namespace jscheme
