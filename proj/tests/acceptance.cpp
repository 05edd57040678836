// Acceptance suite: one PASS/FAIL line per criterion, with its runtime limit.
// Usage: acceptance [criterion ids...]
#include <algorithm>
#include <chrono>
#include <deque>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "harvest.hpp"
#include "jscheme/combin.hpp"
#include "jscheme/families.hpp"
#include "jscheme/invariants.hpp"
#include "jscheme/modular.hpp"
#include "jscheme/search.hpp"
#include "jscheme/spectra.hpp"

using namespace jscheme;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

// Graphs built by earlier criteria, for the property sweeps.
std::deque<Graph>& built() {
  static std::deque<Graph> graphs;
  return graphs;
}

const Graph& keep(Graph g) {
  built().push_back(std::move(g));
  return built().back();
}

std::vector<Vertex> common_set(const Graph& g, Vertex x, Vertex y) {
  std::vector<Vertex> out;
  for (Vertex z = 0; z < g.vertex_count(); ++z)
    if (g.adjacent(x, z) && g.adjacent(y, z)) out.push_back(z);
  return out;
}

std::size_t difference_size(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> d;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
  return d.size();
}

// Shared pipeline for the family criteria: validate, switch, cospectral,
// and non-isomorphism by both deciders.
Graph family_pipeline(const FamilyInstance& f, std::size_t block_size, Outcome& out) {
  const Graph& g = keep(build_johnson(f.spec));
  out.detail << f.spec.name() << " |V|=" << g.vertex_count() << " ";
  const auto r = validate_partition(g, f.partition);
  out.require(f.partition.block(0).size() == block_size, "block size " + std::to_string(block_size));
  out.require(r.valid && r.nontrivial, "valid nontrivial switching set");
  const Graph h = keep(apply_switch(g, f.partition, r));
  const auto cv = cospectral(g, h);
  out.detail << to_string(cv) << " ";
  out.require(cv == CospectralVerdict::cospectral_mod_primes, "cospectral");
  const auto nv = noniso_certificate(g, h);
  out.detail << (nv.distinguished ? "DISTINGUISHED by " + nv.invariant : "INCONCLUSIVE") << " ";
  out.require(nv.distinguished, "noniso_certificate distinguishes");
  IsoBudget budget;
  budget.invariant_shortcut = false;
  const auto iso = exact_iso(g, h, budget);
  out.detail << "exact_iso " << to_string(iso.status) << " ";
  out.require(iso.status == IsoStatus::not_isomorphic, "exact_iso NOT_ISOMORPHIC");
  return h;
}

SearchConfig search_config(std::size_t size, SearchMode mode) {
  SearchConfig c;
  c.size = size;
  c.mode = mode;
  c.vertex_transitive = true;
  if (mode == SearchMode::backtrack) c.shapes = default_shapes(size);
  return c;
}

void criterion_1(Outcome& out) { family_pipeline(family_B(0, 3), 6, out); }

void criterion_2(Outcome& out) {
  const auto f = family_B(1, 4);
  const Graph h = family_pipeline(f, 6, out);
  const Graph& g = built()[built().size() - 2];
  const Vertex c0 = f.witness_vertex("c0"), w = f.witness_vertex("w");
  const auto before = common_set(g, c0, w), after = common_set(h, c0, w);
  const auto p = predict_lambda_B(1, 4);
  const auto lost = difference_size(before, after), gained = difference_size(after, before);
  out.detail << "lost " << lost << "/" << p.lost << " gained " << gained << "/" << p.gained;
  out.require(static_cast<std::int64_t>(lost) == p.lost && static_cast<std::int64_t>(gained) == p.gained,
              "predict_lambda_B matches brute force");
}

void criterion_3(Outcome& out) {
  const auto f = family_A(2, 10);
  const Graph h = family_pipeline(f, 6, out);
  const Graph& g = built()[built().size() - 2];
  const Vertex c0 = f.witness_vertex("c0"), v = f.witness_vertex("v");
  const auto delta = static_cast<std::int64_t>(common_set(h, c0, v).size()) -
                     static_cast<std::int64_t>(common_set(g, c0, v).size());
  out.detail << "delta " << delta;
  out.require(delta == 60, "lambda delta 60");
  out.require(delta == sbinom(5, 3) * sbinom(4, 2), "delta = C(5,3)C(4,2)");
  out.require(predict_lambda_A(2, 10).delta == delta, "predict_lambda_A agrees");
}

void criterion_4(Outcome& out) {
  const auto report = verify_fixture_sets();
  keep(report.graph);
  out.require(report.checks.size() == 2, "two fixture blocks");
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    out.detail << "block " << i + 1 << ": valid=" << c.validation.valid << " induced degrees {";
    std::set<std::uint32_t> d(c.induced_degrees.begin(), c.induced_degrees.end());
    for (auto x : d) out.detail << x << (x == *d.rbegin() ? "" : ",");
    out.detail << "} " << to_string(c.cospectral) << " " << (c.noniso.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE")
               << "; ";
    out.require(c.validation.valid, "block " + std::to_string(i + 1) + " validates");
    out.require(c.cospectral == CospectralVerdict::cospectral_mod_primes, "mate cospectral");
    out.require(c.noniso.distinguished, "mate nonisomorphic");
  }
  if (report.checks.size() == 2) {
    out.require(report.checks[0].two_four_cycles, "block 1 induces two 4-cycles");
    out.require(report.checks[1].six_regular, "block 2 induces a 6-regular graph on 8 vertices");
  }
}

void criterion_5(Outcome& out) {
  for (int n : {9, 10}) {
    const Graph& g = keep(build_johnson(JohnsonSpec::make(n, 3, {0})));
    for (std::size_t s : {4, 6}) {
      const auto o = search_exhaustive(g, search_config(s, SearchMode::exhaustive));
      out.detail << "K(" << n << ",3) s=" << s << ": " << o.results.size() << "; ";
      out.require(o.results.empty() && o.complete && o.covers_all_orbits,
                  "K(" + std::to_string(n) + ",3) size " + std::to_string(s) + " empty");
    }
  }
  {
    const Graph& g = keep(build_johnson(JohnsonSpec::make(8, 4, {2})));
    const auto o = search_backtrack(g, search_config(4, SearchMode::backtrack));
    std::size_t iso = 0;
    for (const auto& r : o.results) iso += r.mate == MateStatus::isomorphic;
    out.detail << "J_{2}(8,4) s=4: " << o.results.size() << " found, " << iso << " ISOMORPHIC; ";
    out.require(!o.results.empty() && iso == o.results.size(), "J_{2}(8,4) mates all isomorphic");
  }
  {
    const Graph& g = keep(build_johnson(JohnsonSpec::make(9, 4, {0, 1})));
    const auto o = search_exhaustive(g, search_config(6, SearchMode::exhaustive));
    std::size_t noniso = 0;
    for (const auto& r : o.results) noniso += r.mate == MateStatus::nonisomorphic;
    out.detail << "J_{0,1}(9,4) s=6: " << o.results.size() << " found, " << noniso << " NONISOMORPHIC; ";
    out.require(noniso > 0, "J_{0,1}(9,4) has a nonisomorphic mate");
  }
  {
    const Graph& g = keep(build_johnson(JohnsonSpec::make(12, 3, {1, 2})));
    for (std::size_t s : {4, 6}) {
      const auto o = search_backtrack(g, search_config(s, SearchMode::backtrack));
      out.detail << "J_{1,2}(12,3) s=" << s << ": " << o.results.size() << "; ";
      out.require(o.results.empty() && o.complete, "J_{1,2}(12,3) size " + std::to_string(s) + " empty");
    }
  }
}

void criterion_6(Outcome& out) {
  out.require(k2prefix_predicate(6) == 25, "k = 6 gives n = 25");
  for (int k : {2, 3, 4, 5, 7, 8}) out.require(!k2prefix_predicate(k), "k = " + std::to_string(k) + " rejected");
  const auto f = k2prefix_block(25, 6, 0);
  const ImplicitJohnson g(f.spec);
  const auto counts = k2prefix_counts(25, 6, 0);
  const auto r = validate_partition(g, f.partition);
  out.detail << "K(25,6) |V|=" << f.spec.vertex_count() << " |C|=" << f.partition.block(0).size() << " histogram {";
  bool allowed = true;
  for (const auto& [count, vertices] : r.outside_histogram[0]) {
    out.detail << count << ":" << vertices << " ";
    allowed = allowed && (count == 0 || count == 105 || count == 210);
  }
  out.detail << "} case iv " << counts.case_iv;
  out.require(f.spec.vertex_count() == 177100, "177100 vertices");
  out.require(allowed, "outside counts in {0,105,210}");
  out.require(r.outside_histogram[0].count(static_cast<std::size_t>(counts.case_iv)) == 1 && counts.case_iv == 105,
              "k2prefix_counts case iv = 105 observed");
  out.require(counts.block_size == 210 && f.partition.block(0).size() == 210, "|C| = 210");
  out.require(r.valid, "block validates");
}

void criterion_7(Outcome& out) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{7, 3}, {8, 4}}) {
    const auto mb = johnson_multiblock(n, k);
    const auto r = validate_partition(keep(build_johnson(mb.spec)), mb.partition);
    out.detail << "J(" << n << "," << k << ") t=" << mb.partition.block_count() << " valid=" << r.valid << "; ";
    out.require(r.valid, "multiblock J(" + std::to_string(n) + "," + std::to_string(k) + ") validates");
  }
  const auto c = multiblock_generalization_check(0, 3);
  out.detail << "(0,3): count " << c.witness_count << " fails=" << c.fails << "; ";
  out.require(c.witness_count == 4 && c.fails, "blocking count k-m+1 = 4 at (0,3)");
  for (int k = 3; k <= 6; ++k) {
    const auto s = multiblock_generalization_check(k - 2, k);
    out.detail << "(" << k - 2 << "," << k << "): fails=" << s.fails << " ";
    out.require(!s.fails, "no failure at m = k-2, k = " + std::to_string(k));
  }
}

void criterion_8(Outcome& out) {
  std::mt19937_64 rng(2718);
  // (i) involution and degree sequence on 50 randomized harvested partitions.
  const auto pool = harvest::from_searches();
  const auto samples = harvest::randomized(pool, 50, 1);
  std::size_t involution = 0;
  for (const auto& s : samples) {
    const Graph h = apply_switch(s.graph, s.partition);
    involution += apply_switch(h, s.partition) == s.graph && h.degrees() == s.graph.degrees();
  }
  out.detail << "(i) " << involution << "/" << samples.size() << " ";
  out.require(samples.size() == 50 && involution == 50, "involution and degrees on 50 partitions");

  // (ii) every partition seen: harvested, randomized, constructed.
  auto all = harvest::from_constructions();
  all.insert(all.end(), pool.begin(), pool.end());
  all.insert(all.end(), samples.begin(), samples.end());
  std::size_t cospec = 0;
  for (const auto& s : all) {
    keep(s.graph);
    const Graph& h = keep(apply_switch(s.graph, s.partition));
    cospec += cospectral(s.graph, h) == CospectralVerdict::cospectral_mod_primes;
  }
  out.detail << "(ii) " << cospec << "/" << all.size() << " ";
  out.require(cospec == all.size(), "cospectral for every valid partition");

  // Distinct graphs only for the sweeps.
  std::vector<const Graph*> distinct;
  for (const auto& g : built())
    if (std::none_of(distinct.begin(), distinct.end(), [&](const Graph* d) { return *d == g; })) distinct.push_back(&g);

  // (iii) census invariance, 20 relabelings per graph.
  std::size_t relabel_ok = 0, relabels = 0;
  for (const Graph* g : distinct) {
    const auto base = pattern_census(*g);
    for (int t = 0; t < 20; ++t) {
      std::vector<Vertex> perm(g->vertex_count());
      for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = static_cast<Vertex>(v);
      std::shuffle(perm.begin(), perm.end(), rng);
      relabel_ok += pattern_census(permute(*g, perm)) == base;
      ++relabels;
    }
  }
  out.detail << "(iii) " << relabel_ok << "/" << relabels << " over " << distinct.size() << " graphs ";
  out.require(relabel_ok == relabels, "pattern census invariant under relabeling");

  // (iv) char poly sanity on every built graph.
  std::size_t sane = 0;
  for (const Graph* g : distinct) {
    const auto n = g->vertex_count();
    const auto c = char_poly_mod(*g, default_primes[0]);
    sane += c[n] == 1 && c[n - 1] == 0 &&
            c[n - 2] == modp::from_signed(-static_cast<std::int64_t>(g->edge_count()), default_primes[0]);
  }
  out.detail << "(iv) " << sane << "/" << distinct.size() << " ";
  out.require(sane == distinct.size(), "trace 0 and x^(n-2) = -|E|");

  // (v) rank/unrank roundtrip for n <= 12.
  std::size_t roundtrips = 0, bad = 0;
  for (int n = 1; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      std::uint64_t expected = 0;
      for (const auto& s : all_subsets(n, k)) {
        const auto r = rank(s);
        bad += r != expected++ || unrank(r, n, k) != s;
        ++roundtrips;
      }
      bad += expected != binom(n, k);
    }
  out.detail << "(v) " << roundtrips << " subsets";
  out.require(bad == 0, "rank/unrank roundtrip");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "family B (m=0,k=3) on K(8,3)", 5, criterion_1},
      {2, "family B (m=1,k=4) on J_{0,1}(9,4) with lambda prediction", 30, criterion_2},
      {3, "family A (m=2,n=10) on J_{0,1,2}(10,5), lambda delta 60", 120, criterion_3},
      {4, "size-8 fixture blocks of J_{2}(8,4)", 10, criterion_4},
      {5, "table cells at sizes <= 6", 1800, criterion_5},
      {6, "k2prefix predicate and K(25,6) outside counts", 300, criterion_6},
      {7, "multiblock partitions and the generalization counterexample", 60, criterion_7},
      {8, "property suites", 600, criterion_8},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.require(seconds < c.limit_seconds, "runtime limit");
    failures += !out.pass;
    std::printf("%s criterion %d: %s (%.2f s, limit %.0f s) %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                seconds, c.limit_seconds, out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
