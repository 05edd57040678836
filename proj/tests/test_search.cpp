#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "jscheme/errors.hpp"
#include "jscheme/families.hpp"
#include "jscheme/search.hpp"

using namespace jscheme;

namespace {

using Block = std::vector<Vertex>;

SearchConfig exhaustive(std::size_t size, std::optional<Vertex> anchor = Vertex{0}) {
  SearchConfig c;
  c.size = size;
  c.mode = SearchMode::exhaustive;
  c.anchor = anchor;
  c.vertex_transitive = true;
  c.workers = 1;
  c.compute_mates = false;
  return c;
}

SearchConfig backtrack(std::size_t size, std::vector<Shape> shapes = {}) {
  SearchConfig c = exhaustive(size);
  c.mode = SearchMode::backtrack;
  c.shapes = shapes.empty() ? default_shapes(size) : shapes;
  return c;
}

std::set<Block> blocks_of(const SearchOutcome& o) {
  std::set<Block> out;
  for (const auto& r : o.results) out.insert(r.block);
  return out;
}

bool nontrivial(const Graph& g, const Block& b) {
  std::set<Vertex> in(b.begin(), b.end());
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    if (!in.count(u) && 2 * oracle::count_into(g, u, b) == b.size()) return true;
  return false;
}

// Every size-s set (containing `anchor` when given) that is a nontrivial switching set.
std::set<Block> oracle_blocks(const Graph& g, std::size_t s, std::optional<Vertex> anchor) {
  std::set<Block> out;
  const int n = static_cast<int>(g.vertex_count());
  for (const auto& e : oracle::subsets(n, static_cast<int>(s))) {
    Block b;
    for (int x : e) b.push_back(static_cast<Vertex>(x - 1));
    if (anchor && std::find(b.begin(), b.end(), *anchor) == b.end()) continue;
    if (oracle::is_switching_set(g, b) && nontrivial(g, b)) out.insert(b);
  }
  return out;
}

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

// Image of a block under a permutation of the ground set [n] (0-based).
Block translate(const Block& b, const std::vector<int>& sigma, int n, int k) {
  Block out;
  for (Vertex v : b) {
    std::vector<int> e;
    for (int x : unrank(v, n, k).elements()) e.push_back(sigma[x - 1] + 1);
    std::sort(e.begin(), e.end());
    out.push_back(static_cast<Vertex>(rank(KSubset::from_elements(e, n))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("search configuration checks") {
  SearchConfig c;
  c.size = 3;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.size = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.size = 4;
  CHECK_NOTHROW(c.validate());
  c.mode = SearchMode::backtrack;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.shapes = {Shape::induced_cycle};
  c.size = 8;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.size = 6;
  CHECK_NOTHROW(c.validate());
  CHECK(parse_shape("induced-matching") == Shape::induced_matching);
  CHECK_THROWS_AS(parse_shape("star"), std::invalid_argument);
  CHECK(parse_mode("backtrack") == SearchMode::backtrack);
  CHECK(default_shapes(4).size() == 4);
  CHECK(default_shapes(6) == std::vector<Shape>{Shape::independent_set, Shape::induced_matching, Shape::induced_cycle});
}

TEST_CASE("exhaustive search matches brute force on small graphs") {
  std::mt19937_64 rng(2024);
  std::vector<Graph> graphs{build_johnson(JohnsonSpec::make(7, 3, {0})), build_johnson(JohnsonSpec::make(7, 3, {1})),
                            build_johnson(JohnsonSpec::make(6, 3, {1})), build_johnson(JohnsonSpec::make(6, 2, {1}))};
  for (int i = 0; i < 6; ++i) graphs.push_back(random_graph(12, 0.5, rng).without_spec());
  for (const auto& g : graphs)
    for (std::size_t s : {2, 4}) {
      CHECK(blocks_of(search_exhaustive(g, exhaustive(s))) == oracle_blocks(g, s, Vertex{0}));
      CHECK(blocks_of(search_exhaustive(g, exhaustive(s, std::nullopt))) == oracle_blocks(g, s, std::nullopt));
    }
  const Graph j73 = build_johnson(JohnsonSpec::make(7, 3, {1, 2}));
  CHECK(blocks_of(search_exhaustive(j73, exhaustive(6))) == oracle_blocks(j73, 6, Vertex{0}));
}

TEST_CASE("K(9,3) and K(10,3) have no switching sets of size 4 or 6") {
  for (int n : {9, 10}) {
    const Graph g = build_johnson(JohnsonSpec::make(n, 3, {0}));
    for (std::size_t s : {4, 6}) {
      const auto o = search_exhaustive(g, exhaustive(s));
      CHECK(o.results.empty());
      CHECK(o.complete);
      CHECK(o.covers_all_orbits);
    }
  }
}

TEST_CASE("J_{0,1}(9,4) size 6 contains the family B block with a nonisomorphic mate") {
  const auto f = family_B(1, 4);
  const Graph g = build_johnson(f.spec);
  auto cfg = exhaustive(6);
  cfg.compute_mates = true;
  const auto o = search_exhaustive(g, cfg);
  REQUIRE_FALSE(o.results.empty());
  bool found = false;
  for (const auto& r : o.results) {
    CHECK(r.validation.valid);
    CHECK(r.validation.nontrivial);
    CHECK(oracle::is_switching_set(g, r.block));
    REQUIRE(r.cospectral);
    CHECK(*r.cospectral == CospectralVerdict::cospectral_mod_primes);
    if (r.block == f.partition.blocks()[0]) {
      found = true;
      CHECK(r.mate == MateStatus::nonisomorphic);
    }
  }
  CHECK(found);
}

TEST_CASE("planted family blocks are found through a translate containing the anchor") {
  std::mt19937_64 rng(4);
  for (auto [m, k] : std::vector<std::pair<int, int>>{{0, 3}, {1, 4}}) {
    const auto f = family_B(m, k);
    const int n = f.spec.n;
    const Graph g = build_johnson(f.spec);
    const auto found = blocks_of(search_exhaustive(g, exhaustive(6)));
    const Block planted = f.partition.blocks()[0];
    for (Vertex c : planted) {
      // sigma maps the elements of c onto [k], the anchor.
      std::vector<int> sigma(n), order;
      const auto elems = unrank(c, n, k).elements();
      for (int x : elems) order.push_back(x - 1);
      std::vector<int> rest;
      for (int x = 0; x < n; ++x)
        if (std::find(order.begin(), order.end(), x) == order.end()) rest.push_back(x);
      std::shuffle(order.begin(), order.end(), rng);
      std::shuffle(rest.begin(), rest.end(), rng);
      for (int i = 0; i < k; ++i) sigma[order[i]] = i;
      for (int i = 0; i < n - k; ++i) sigma[rest[i]] = k + i;
      const Block t = translate(planted, sigma, n, k);
      REQUIRE(std::find(t.begin(), t.end(), Vertex{0}) != t.end());
      CHECK(found.count(t) == 1);
    }
  }
}

TEST_CASE("J_{2}(8,4) size-4 backtracking: every mate is isomorphic") {
  const Graph g = build_johnson(JohnsonSpec::make(8, 4, {2}));
  auto cfg = backtrack(4);
  cfg.compute_mates = true;
  const auto o = search_backtrack(g, cfg);
  REQUIRE_FALSE(o.results.empty());
  CHECK(o.covers_all_orbits);
  for (const auto& r : o.results) {
    CHECK(r.mate == MateStatus::isomorphic);
    CHECK(r.mate_evidence == "exact_iso");
  }
}

TEST_CASE("J_{1,2}(12,3) backtracking finds nothing at sizes 4 and 6") {
  const Graph g = build_johnson(JohnsonSpec::make(12, 3, {1, 2}));
  for (std::size_t s : {4, 6}) {
    const auto o = search_backtrack(g, backtrack(s));
    CHECK(o.results.empty());
    CHECK(o.complete);
    CHECK(o.covers_all_orbits == (s == 4));
  }
}

TEST_CASE("clique search on a triangle-free graph is empty") {
  const Graph g = build_johnson(JohnsonSpec::make(6, 3, {0}));  // a perfect matching
  CHECK(triangle_count(g) == 0);
  CHECK(search_backtrack(g, backtrack(4, {Shape::clique})).results.empty());
  std::mt19937_64 rng(6);
  // Bipartite random graph.
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < 8; ++u)
    for (Vertex v = 8; v < 16; ++v)
      if (rng() % 2) e.emplace_back(u, v);
  auto cfg = backtrack(4, {Shape::clique});
  cfg.anchor = std::nullopt;
  CHECK(search_backtrack(Graph::from_edges(16, e), cfg).results.empty());
}

TEST_CASE("backtracking results are a subset of exhaustive results") {
  std::mt19937_64 rng(12);
  std::vector<Graph> graphs{build_johnson(JohnsonSpec::make(7, 3, {0})), build_johnson(JohnsonSpec::make(7, 3, {1})),
                            build_johnson(JohnsonSpec::make(8, 4, {2})), build_johnson(JohnsonSpec::make(8, 3, {0}))};
  for (int i = 0; i < 4; ++i) graphs.push_back(random_graph(14, 0.5, rng).without_spec());
  for (const auto& g : graphs)
    for (std::size_t s : {4, 6}) {
      const auto ex = blocks_of(search_exhaustive(g, exhaustive(s)));
      const auto bt = blocks_of(search_backtrack(g, backtrack(s)));
      CHECK(std::includes(ex.begin(), ex.end(), bt.begin(), bt.end()));
    }
}

TEST_CASE("backtracking shapes match their definitions") {
  const Graph g = build_johnson(JohnsonSpec::make(8, 4, {2}));
  const auto ex = search_exhaustive(g, exhaustive(4));
  for (Shape shape : default_shapes(4)) {
    const auto bt = blocks_of(search_backtrack(g, backtrack(4, {shape})));
    std::set<Block> expected;
    for (const auto& r : ex.results) {
      const Graph sub = induced_subgraph(g, r.block);
      const auto d = sorted_degrees(sub);
      const bool ok = [&] {
        switch (shape) {
          case Shape::independent_set: return d == std::vector<std::uint32_t>{0, 0, 0, 0};
          case Shape::induced_matching: return d == std::vector<std::uint32_t>{1, 1, 1, 1};
          case Shape::induced_cycle: return d == std::vector<std::uint32_t>{2, 2, 2, 2};
          case Shape::clique: return d == std::vector<std::uint32_t>{3, 3, 3, 3};
        }
        return false;
      }();
      if (ok) expected.insert(r.block);
    }
    CHECK(bt == expected);
  }
}

TEST_CASE("search output is independent of the worker count") {
  const Graph g = build_johnson(JohnsonSpec::make(9, 4, {0, 1}));
  auto one = exhaustive(6);
  one.compute_mates = true;
  auto many = one;
  many.workers = 4;
  const auto a = search_exhaustive(g, one);
  const auto b = search_exhaustive(g, many);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    CHECK(a.results[i].block == b.results[i].block);
    CHECK(a.results[i].mate == b.results[i].mate);
  }
  CHECK(a.nodes == b.nodes);
  CHECK(std::is_sorted(a.results.begin(), a.results.end(),
                       [](const SearchResult& x, const SearchResult& y) { return x.block < y.block; }));
}

TEST_CASE("trivial blocks are recorded separately") {
  // Two disjoint 4-cliques: each clique is a valid block with no half-class vertex.
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex base : {0U, 4U})
    for (Vertex u = 0; u < 4; ++u)
      for (Vertex v = u + 1; v < 4; ++v) e.emplace_back(base + u, base + v);
  auto cfg = exhaustive(4, std::nullopt);
  cfg.vertex_transitive = false;
  const Graph g = Graph::from_edges(8, e);
  const auto o = search_exhaustive(g, cfg);
  // Mixed sets such as {0,1,4,5} are genuine switching sets.
  CHECK(blocks_of(o) == oracle_blocks(g, 4, std::nullopt));
  CHECK(blocks_of(o).count(Block{0, 1, 4, 5}) == 1);
  for (const auto& b : o.trivial_blocks) CHECK_FALSE(nontrivial(g, b));
  CHECK(std::find(o.trivial_blocks.begin(), o.trivial_blocks.end(), Block{0, 1, 2, 3}) != o.trivial_blocks.end());
  CHECK(std::find(o.trivial_blocks.begin(), o.trivial_blocks.end(), Block{4, 5, 6, 7}) != o.trivial_blocks.end());
  CHECK(o.covers_all_orbits);
}

TEST_CASE("anchored search on a graph not declared vertex-transitive does not claim coverage") {
  auto cfg = exhaustive(4);
  cfg.vertex_transitive = false;
  const auto o = search_exhaustive(build_johnson(JohnsonSpec::make(9, 3, {0})), cfg);
  CHECK(o.complete);
  CHECK_FALSE(o.covers_all_orbits);
}

TEST_CASE("budget and result limit") {
  const Graph g = build_johnson(JohnsonSpec::make(9, 4, {0, 1}));
  auto cfg = exhaustive(6);
  cfg.candidate_budget = 1000;
  CHECK_THROWS_AS(search_exhaustive(g, cfg), budget_exceeded);
  cfg.candidate_budget = 5e10;
  cfg.result_limit = 2;
  const auto o = search_exhaustive(g, cfg);
  CHECK(o.results.size() == 2);
  cfg.result_limit = 0;
  const auto all = search_exhaustive(g, cfg);
  CHECK(o.results[0].block == all.results[0].block);
  CHECK(o.results[1].block == all.results[1].block);
}

TEST_CASE("fixture sets of J_{2}(8,4)") {
  const auto report = verify_fixture_sets();
  REQUIRE(report.checks.size() == 2);
  CHECK(report.checks[0].induced_degrees == std::vector<std::uint32_t>(8, 2));
  CHECK(report.checks[0].two_four_cycles);
  // The second block induces two 4-cycles too, not a 6-regular graph.
  CHECK(report.checks[1].induced_degrees == std::vector<std::uint32_t>(8, 2));
  CHECK(report.checks[1].two_four_cycles);
  CHECK_FALSE(report.checks[1].six_regular);
  for (const auto& c : report.checks) {
    const auto a = oracle::matrix_of(induced_subgraph(report.graph, c.block));
    for (const auto& row : a) CHECK(std::count(row.begin(), row.end(), 1) == 2);
  }
  for (const auto& c : report.checks) {
    CHECK(c.validation.valid);
    CHECK(c.validation.nontrivial);
    CHECK(c.cospectral == CospectralVerdict::cospectral_mod_primes);
    CHECK(c.noniso.distinguished);
  }
}
