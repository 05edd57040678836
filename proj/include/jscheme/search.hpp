#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jscheme/graph.hpp"
#include "jscheme/invariants.hpp"
#include "jscheme/spectra.hpp"
#include "jscheme/switching.hpp"

namespace jscheme {

enum class SearchMode { exhaustive, backtrack };

/// Induced shapes tried by the restricted backtracking search.
enum class Shape { independent_set, induced_matching, induced_cycle, clique };

enum class MateStatus { isomorphic, nonisomorphic, undecided, not_computed };

const char* to_string(SearchMode m);
const char* to_string(Shape s);
const char* to_string(MateStatus s);
Shape parse_shape(const std::string& name);
SearchMode parse_mode(const std::string& name);

/// The shapes used for a size: all four at size 4, and independent sets,
/// induced matchings and induced cycles at size 6.
std::vector<Shape> default_shapes(std::size_t size);

struct SearchConfig {
  std::size_t size = 4;
  SearchMode mode = SearchMode::exhaustive;
  std::vector<Shape> shapes;
  /// Every candidate contains this vertex; nullopt enumerates all subsets.
  std::optional<Vertex> anchor = Vertex{0};
  /// Caller's assertion that the graph is vertex-transitive, which makes an
  /// anchored search cover every switching set up to automorphism.
  bool vertex_transitive = false;
  std::size_t workers = 0;
  /// Keep only the first `result_limit` results in block order (0 = all).
  std::size_t result_limit = 0;
  /// Exhaustive mode refuses when C(|V|−1, size−1) exceeds this.
  double candidate_budget = 5e10;
  bool compute_mates = true;
  IsoBudget iso_budget;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct SearchResult {
  std::vector<Vertex> block;
  ValidationReport validation;
  MateStatus mate = MateStatus::not_computed;
  /// Which check settled the mate status ("pattern census", "exact_iso", ...).
  std::string mate_evidence;
  std::optional<CospectralVerdict> cospectral;
};

struct SearchOutcome {
  /// Valid, nontrivial single-block switching sets, sorted lexicographically.
  std::vector<SearchResult> results;
  /// Valid blocks with an empty half class; these switches change nothing.
  std::vector<std::vector<Vertex>> trivial_blocks;
  std::uint64_t nodes = 0;
  /// True when the whole candidate space was examined.
  bool complete = false;
  /// True when an empty result rules out switching sets of this size
  /// anywhere in the graph (complete, and anchored on a vertex-transitive graph
  /// or unanchored).
  bool covers_all_orbits = false;
};

/// Every size-`cfg.size` vertex set containing the anchor, checked against
/// the Godsil-McKay conditions with one block. Throws budget_exceeded when
/// the candidate estimate exceeds cfg.candidate_budget.
SearchOutcome search_exhaustive(const Graph& g, const SearchConfig& cfg);

/// Candidates restricted to the configured induced shapes, with the same
/// outside-vertex pruning as the exhaustive search.
SearchOutcome search_backtrack(const Graph& g, const SearchConfig& cfg);

SearchOutcome run_search(const Graph& g, const SearchConfig& cfg);

/// Switch on a single block and classify the mate.
void classify_mate(const Graph& g, SearchResult& result, const IsoBudget& budget, std::size_t workers = 1);

struct FixtureCheck {
  std::vector<Vertex> block;
  ValidationReport validation;
  std::vector<std::uint32_t> induced_degrees;
  bool two_four_cycles = false;
  bool six_regular = false;
  CospectralVerdict cospectral = CospectralVerdict::not_cospectral;
  NonIsoVerdict noniso;
};

struct FixtureReport {
  Graph graph;
  std::vector<FixtureCheck> checks;
};

/// Validates and switches both explicit size-8 blocks of J_{2}(8,4).
/// Throws std::runtime_error if a block stops being a nontrivial switching
/// set, block 1 stops inducing two 4-cycles, or a mate stops being a
/// distinguished cospectral mate. `six_regular` is computed and reported only.
FixtureReport verify_fixture_sets();

struct TableCell {
  JohnsonSpec spec;
  /// "0eX", "0b", "1+", "1-" or "1?" (mates undecided), or "skip" when over budget.
  std::string label;
  std::size_t found_size = 0;
  std::size_t results = 0;
  std::vector<std::string> notes;
};

struct TableOptions {
  int k = 3;
  int n_min = 6;
  int n_max = 10;
  std::vector<std::size_t> sizes = {4, 6};
  /// Empty: every nonempty proper S ⊂ {0..k−1}.
  std::vector<std::vector<int>> s_sets;
  /// Exhaustive search is used while C(|V|−1, size−1) stays below this.
  double exhaustive_limit = 3e8;
  std::size_t workers = 0;
  std::size_t vertex_budget = 2000;
};

std::vector<TableCell> build_table(const TableOptions& opts);

}  // namespace jscheme
