#include "doctest.h"
#include "oracles.hpp"

#include <random>

#include "jscheme/families.hpp"
#include "jscheme/invariants.hpp"
#include "jscheme/switching.hpp"

using namespace jscheme;

namespace {

Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph switched(const FamilyInstance& f) { return apply_switch(build_johnson(f.spec), f.partition); }

Graph fixture_switch(std::size_t which) {
  const auto spec = JohnsonSpec::make(8, 4, {2});
  const Graph g = build_johnson(spec);
  const auto blocks = j2_8_4_fixture_blocks();
  return apply_switch(g, SwitchingPartition(g.vertex_count(), {vertices_of(blocks[which])}));
}

}  // namespace

TEST_CASE("lambda rows and vertex patterns match the oracle") {
  std::mt19937_64 rng(1);
  const Graph g = random_graph(40, 0.3, rng);
  const auto a = oracle::matrix_of(g);
  for (Vertex x = 0; x < g.vertex_count(); ++x) {
    const auto row = lambda_row(g, x);
    std::vector<std::uint32_t> expected;
    for (Vertex y = 0; y < g.vertex_count(); ++y) {
      CHECK(row[y] == oracle::common(a, x, y));
      if (y != x) expected.push_back(static_cast<std::uint32_t>(oracle::common(a, x, y)));
    }
    std::sort(expected.begin(), expected.end());
    const auto vp = vertex_pattern(g, x);
    CHECK(vp.vertex == x);
    CHECK(vp.pattern == expected);
  }
}

TEST_CASE("pattern census examples") {
  const Graph k83 = build_johnson(JohnsonSpec::make(8, 3, {0}));
  const auto c = pattern_census(k83);
  CHECK(c.patterns.size() == 56);
  CHECK(c.distinct() == 1);
  CHECK(c.patterns[0].size() == 55);

  CHECK(pattern_census(switched(family_B(0, 3))).distinct() > 1);

  const auto empty = pattern_census(Graph::from_edges(7, {}));
  CHECK(empty.distinct() == 1);
  CHECK(empty.patterns[0] == std::vector<std::uint32_t>(6, 0));
}

TEST_CASE("pattern census is invariant under relabeling") {
  std::mt19937_64 rng(23);
  std::vector<Graph> graphs{build_johnson(JohnsonSpec::make(8, 3, {0})), switched(family_B(0, 3)),
                            switched(family_B(1, 4)), fixture_switch(0), random_graph(50, 0.5, rng)};
  for (const auto& g : graphs) {
    const auto base = pattern_census(g);
    for (int t = 0; t < 20; ++t) {
      const Graph h = permute(g, oracle::random_permutation(g.vertex_count(), rng));
      CHECK(pattern_census(h) == base);
      CHECK_FALSE(noniso_certificate(g, h).distinguished);
    }
  }
}

TEST_CASE("noniso_certificate examples") {
  const auto fa = family_A(2, 10);
  const Graph ga = build_johnson(fa.spec);
  const auto va = noniso_certificate(ga, apply_switch(ga, fa.partition));
  CHECK(va.distinguished);
  CHECK(va.invariant == "pattern census");

  const Graph g84 = build_johnson(JohnsonSpec::make(8, 4, {2}));
  for (std::size_t i = 0; i < 2; ++i) {
    const Graph h = fixture_switch(i);
    // The pattern census alone cannot see these mates.
    CHECK(pattern_census(h) == pattern_census(g84));
    const auto v = noniso_certificate(g84, h);
    CHECK(v.distinguished);
    CHECK(v.invariant == "neighbourhood census");
    CHECK(exact_iso(g84, h).status == IsoStatus::not_isomorphic);
  }

  CHECK(noniso_certificate(Graph::from_edges(3, {}), Graph::from_edges(4, {})).invariant == "vertex count");
  CHECK(noniso_certificate(Graph::from_edges(3, {{0, 1}}), Graph::from_edges(3, {})).invariant == "edge count");
  const Graph path4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(noniso_certificate(path4, star).invariant == "degree sequence");
  // Both 2-regular on 6 vertices: two triangles vs a hexagon.
  const Graph two_k3 = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const Graph c6 = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK(noniso_certificate(two_k3, c6).invariant == "triangle count");
}

TEST_CASE("K4 counts through a vertex separate the J_{2}(8,4) fixture mates") {
  const Graph g84 = build_johnson(JohnsonSpec::make(8, 4, {2}));
  auto k4_through = [](const Graph& g) {
    const auto a = oracle::matrix_of(g);
    std::set<std::size_t> values;
    for (std::size_t v = 0; v < a.size(); ++v) {
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < a.size(); ++u)
        if (a[v][u]) nb.push_back(u);
      std::size_t t = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (a[nb[i]][nb[j]])
            for (std::size_t l = j + 1; l < nb.size(); ++l) t += a[nb[i]][nb[l]] && a[nb[j]][nb[l]];
      values.insert(t);
      CHECK(t == local_signature(g, static_cast<Vertex>(v)).triangles);
    }
    return values;
  };
  CHECK(k4_through(g84) == std::set<std::size_t>{960});
  for (std::size_t i = 0; i < 2; ++i) CHECK(k4_through(fixture_switch(i)) == std::set<std::size_t>{896, 928, 960});
}

TEST_CASE("refined invariants are relabeling-invariant") {
  std::mt19937_64 rng(31);
  std::vector<Graph> graphs{fixture_switch(0), switched(family_B(1, 4)), random_graph(40, 0.4, rng)};
  for (const auto& g : graphs) {
    const Graph h = permute(g, oracle::random_permutation(g.vertex_count(), rng));
    CHECK(neighbourhood_census(g) == neighbourhood_census(h));
    CHECK(refined_census(g) == refined_census(h));
    CHECK(individualized_census(g) == individualized_census(h));
  }
  // Refinement does split a non-regular graph.
  const Graph path = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto c = stable_colours(edge_colours(path));
  CHECK(c[0] == c[4]);
  CHECK(c[1] == c[3]);
  CHECK(c[0] != c[2]);
  CHECK(c[1] != c[2]);
}

TEST_CASE("exact_iso examples") {
  std::mt19937_64 rng(77);
  const Graph k83 = build_johnson(JohnsonSpec::make(8, 3, {0}));
  const Graph relabeled = permute(k83, oracle::random_permutation(k83.vertex_count(), rng));
  const auto same = exact_iso(k83, relabeled);
  CHECK(same.status == IsoStatus::isomorphic);
  CHECK(is_isomorphism(k83, relabeled, same.mapping));

  const auto diff = exact_iso(k83, switched(family_B(0, 3)));
  CHECK(diff.status == IsoStatus::not_isomorphic);

  // reflect maps s to s + n - 2k: J_{0,1}(7,3) -> J_{1,2}(7,3).
  const auto spec = JohnsonSpec::make(7, 3, {0, 1});
  const auto refl = reflect(spec);
  const auto r = exact_iso(build_johnson(spec), build_johnson(refl));
  CHECK(r.status == IsoStatus::isomorphic);
  CHECK(is_isomorphism(build_johnson(spec), build_johnson(refl), r.mapping));

  CHECK(exact_iso(Graph::from_edges(3, {}), Graph::from_edges(4, {})).status == IsoStatus::not_isomorphic);
  IsoBudget tiny;
  tiny.max_vertices = 10;
  CHECK(exact_iso(k83, relabeled, tiny).status == IsoStatus::undecided_budget);
  CHECK(std::string(to_string(IsoStatus::undecided_budget)) == "UNDECIDED_BUDGET");
}

TEST_CASE("exact_iso agrees with noniso_certificate on random pairs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + rng() % 12;
    const Graph g = random_graph(n, 0.5, rng);
    const Graph h = trial % 2 ? permute(g, oracle::random_permutation(n, rng)) : random_graph(n, 0.5, rng);
    const auto r = exact_iso(g, h);
    REQUIRE(r.status != IsoStatus::undecided_budget);
    if (noniso_certificate(g, h).distinguished) CHECK(r.status == IsoStatus::not_isomorphic);
    if (trial % 2) CHECK(r.status == IsoStatus::isomorphic);
    if (r.status == IsoStatus::isomorphic) CHECK(is_isomorphism(g, h, r.mapping));
    // Brute force over all permutations for tiny graphs.
    if (n <= 7) {
      std::vector<Vertex> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<Vertex>(i);
      bool any = false;
      do any = any || is_isomorphism(g, h, p);
      while (!any && std::next_permutation(p.begin(), p.end()));
      CHECK(any == (r.status == IsoStatus::isomorphic));
    }
  }
}

TEST_CASE("is_isomorphism rejects bad mappings") {
  const Graph path3 = Graph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(is_isomorphism(path3, path3, {0, 1, 2}));
  CHECK(is_isomorphism(path3, path3, {2, 1, 0}));
  CHECK_FALSE(is_isomorphism(path3, path3, {1, 0, 2}));
  CHECK_FALSE(is_isomorphism(path3, path3, {0, 0, 2}));
  CHECK_FALSE(is_isomorphism(path3, path3, {0, 1}));
}
