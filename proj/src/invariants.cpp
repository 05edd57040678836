#include "jscheme/invariants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "jscheme/parallel.hpp"

namespace jscheme {

std::vector<std::uint32_t> lambda_row(const Graph& g, Vertex x) {
  std::vector<std::uint32_t> out(g.vertex_count());
  const auto rx = g.row(x);
  for (Vertex y = 0; y < g.vertex_count(); ++y) out[y] = static_cast<std::uint32_t>(bits::count_and(rx, g.row(y)));
  return out;
}

VertexPattern vertex_pattern(const Graph& g, Vertex x) {
  auto row = lambda_row(g, x);
  row.erase(row.begin() + x);
  std::sort(row.begin(), row.end());
  return {x, std::move(row)};
}

std::size_t PatternCensus::distinct() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < patterns.size(); ++i) d += (i == 0 || patterns[i] != patterns[i - 1]);
  return d;
}

PatternCensus pattern_census(const Graph& g, std::size_t workers) {
  PatternCensus c;
  c.patterns.resize(g.vertex_count());
  parallel_for(g.vertex_count(), workers == 0 ? default_workers() : workers,
               [&](std::size_t x) { c.patterns[x] = vertex_pattern(g, static_cast<Vertex>(x)).pattern; });
  std::sort(c.patterns.begin(), c.patterns.end());
  // FNV-1a over the sorted census.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& p : c.patterns) {
    mix(p.size());
    for (auto v : p) mix(v);
  }
  c.hash = h;
  return c;
}

std::vector<std::uint32_t> sorted_degrees(const Graph& g) {
  auto d = g.degrees();
  std::sort(d.begin(), d.end());
  return d;
}

EdgeColours edge_colours(const Graph& g) {
  EdgeColours e;
  e.n = g.vertex_count();
  e.colour.resize(e.n * e.n);
  for (Vertex x = 0; x < e.n; ++x) {
    const auto row = lambda_row(g, x);
    for (Vertex y = 0; y < e.n; ++y) e.colour[x * e.n + y] = (row[y] << 1) | (g.adjacent(x, y) ? 1U : 0U);
  }
  return e;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t distinct_count(std::vector<std::uint64_t> c) {
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

}  // namespace

std::vector<std::uint64_t> stable_colours(const EdgeColours& e, std::optional<Vertex> individualized) {
  const std::size_t n = e.n;
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t v = 0; v < n; ++v) c[v] = mix64(e.at(v, v));
  if (individualized) c[*individualized] = mix64(c[*individualized] ^ 0x5bd1e995ULL);
  std::size_t classes = distinct_count(c);
  std::vector<std::uint64_t> keys(n);
  std::vector<std::uint64_t> next(n);
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      keys.clear();
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) keys.push_back(mix64(c[u] + 0x100000001b3ULL * e.at(v, u)));
      std::sort(keys.begin(), keys.end());
      std::uint64_t hsh = mix64(c[v]);
      for (auto k : keys) hsh = mix64(hsh ^ k);
      next[v] = hsh;
    }
    c.swap(next);
    const std::size_t now = distinct_count(c);
    if (now == classes) return c;
    classes = now;
  }
}

LocalSignature local_signature(const Graph& g, Vertex v) {
  std::vector<Vertex> nbrs;
  bits::for_each_set(g.row(v), [&](std::size_t u) { nbrs.push_back(static_cast<Vertex>(u)); });
  const Graph local = induced_subgraph(g, nbrs);
  return {local.edge_count(), triangle_count(local), pattern_census(local, 1).hash};
}

std::vector<LocalSignature> neighbourhood_census(const Graph& g, std::size_t workers) {
  std::vector<LocalSignature> out(g.vertex_count());
  parallel_for(g.vertex_count(), workers == 0 ? default_workers() : workers,
               [&](std::size_t v) { out[v] = local_signature(g, static_cast<Vertex>(v)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> refined_census(const Graph& g) {
  auto c = stable_colours(edge_colours(g));
  std::sort(c.begin(), c.end());
  return c;
}

std::vector<std::uint64_t> individualized_census(const Graph& g, std::size_t workers) {
  const EdgeColours e = edge_colours(g);
  std::vector<std::uint64_t> out(g.vertex_count());
  parallel_for(g.vertex_count(), workers == 0 ? default_workers() : workers, [&](std::size_t v) {
    auto c = stable_colours(e, static_cast<Vertex>(v));
    std::sort(c.begin(), c.end());
    std::uint64_t hsh = mix64(c.size());
    for (auto x : c) hsh = mix64(hsh ^ x);
    out[v] = hsh;
  });
  std::sort(out.begin(), out.end());
  return out;
}

NonIsoVerdict noniso_certificate(const Graph& g, const Graph& h, std::size_t workers) {
  if (g.vertex_count() != h.vertex_count()) return {true, "vertex count"};
  if (g.edge_count() != h.edge_count()) return {true, "edge count"};
  if (sorted_degrees(g) != sorted_degrees(h)) return {true, "degree sequence"};
  if (triangle_count(g) != triangle_count(h)) return {true, "triangle count"};
  if (!(pattern_census(g, workers) == pattern_census(h, workers))) return {true, "pattern census"};
  if (neighbourhood_census(g, workers) != neighbourhood_census(h, workers)) return {true, "neighbourhood census"};
  if (refined_census(g) != refined_census(h)) return {true, "refined census"};
  if (individualized_census(g, workers) != individualized_census(h, workers)) return {true, "individualized census"};
  return {false, ""};
}

const char* to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::isomorphic: return "ISOMORPHIC";
    case IsoStatus::not_isomorphic: return "NOT_ISOMORPHIC";
    case IsoStatus::undecided_budget: return "UNDECIDED_BUDGET";
  }
  return "?";
}

bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<Vertex>& mapping) {
  const std::size_t n = g.vertex_count();
  if (h.vertex_count() != n || mapping.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Vertex m : mapping) {
    if (m >= n || hit[m]) return false;
    hit[m] = true;
  }
  if (g.edge_count() != h.edge_count()) return false;
  for (auto [u, v] : g.edge_list())
    if (!h.adjacent(mapping[u], mapping[v])) return false;
  return true;
}

namespace {

using Colors = std::vector<std::uint32_t>;

struct budget_hit {};

class IsoSearch {
 public:
  IsoSearch(const Graph& g, const Graph& h, std::size_t max_nodes)
      : g_(g), h_(h), eg_(edge_colours(g)), eh_(edge_colours(h)), max_nodes_(max_nodes) {}

  // Seed colours from (degree, local signature, sorted λ-row); false if the
  // class sizes differ.
  bool seed(Colors& cg, Colors& ch, std::uint32_t& num) {
    std::vector<std::vector<std::uint64_t>> sg(g_.vertex_count()), sh(h_.vertex_count());
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      const auto p = vertex_pattern(g_, v).pattern;
      sg[v].assign(p.begin(), p.end());
      const auto l = local_signature(g_, v);
      sg[v].insert(sg[v].begin(), {g_.degree(v), l.edges, l.triangles, l.census_hash});
    }
    for (Vertex v = 0; v < h_.vertex_count(); ++v) {
      const auto p = vertex_pattern(h_, v).pattern;
      sh[v].assign(p.begin(), p.end());
      const auto l = local_signature(h_, v);
      sh[v].insert(sh[v].begin(), {h_.degree(v), l.edges, l.triangles, l.census_hash});
    }
    return assign(sg, sh, cg, ch, num) && refine(cg, ch, num);
  }

  // Refinement over (colour, adjacency, λ) of every other vertex, to a
  // stable joint colouring.
  bool refine(Colors& cg, Colors& ch, std::uint32_t& num) {
    while (true) {
      const std::uint32_t before = num;
      auto sg = signatures(eg_, cg);
      auto sh = signatures(eh_, ch);
      if (!assign(sg, sh, cg, ch, num)) return false;
      if (num == before) return true;
    }
  }

  bool search(Colors& cg, Colors& ch, std::uint32_t num, std::vector<Vertex>& mapping) {
    if (++nodes > max_nodes_) throw budget_hit{};
    std::vector<std::uint32_t> size(num, 0);
    for (auto c : cg) ++size[c];
    std::uint32_t target = num;
    for (std::uint32_t c = 0; c < num; ++c)
      if (size[c] > 1 && (target == num || size[c] < size[target])) target = c;
    if (target == num) {
      std::vector<Vertex> by_color(num);
      for (Vertex w = 0; w < ch.size(); ++w) by_color[ch[w]] = w;
      mapping.resize(cg.size());
      for (Vertex v = 0; v < cg.size(); ++v) mapping[v] = by_color[cg[v]];
      return is_isomorphism(g_, h_, mapping);
    }
    Vertex v = 0;
    while (cg[v] != target) ++v;
    for (Vertex w = 0; w < ch.size(); ++w) {
      if (ch[w] != target) continue;
      Colors ng = cg, nh = ch;
      ng[v] = num;
      nh[w] = num;
      std::uint32_t nn = num + 1;
      if (refine(ng, nh, nn) && search(ng, nh, nn, mapping)) return true;
    }
    return false;
  }

  std::size_t nodes = 0;

 private:
  static std::vector<std::vector<std::uint64_t>> signatures(const EdgeColours& e, const Colors& c) {
    const std::size_t n = c.size();
    std::vector<std::vector<std::uint64_t>> s(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto& sig = s[v];
      sig.reserve(n);
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) sig.push_back((std::uint64_t{c[u]} << 32) | e.at(v, u));
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), c[v]);
    }
    return s;
  }

  // Joint canonical ids: ids follow the sorted order of the union of signatures.
  static bool assign(const std::vector<std::vector<std::uint64_t>>& sg, const std::vector<std::vector<std::uint64_t>>& sh,
                     Colors& cg, Colors& ch, std::uint32_t& num) {
    std::map<std::vector<std::uint64_t>, std::pair<std::uint32_t, std::int64_t>> ids;  // sig -> (id, balance)
    for (const auto& s : sg) ++ids[s].second;
    for (const auto& s : sh) --ids[s].second;
    std::uint32_t next = 0;
    for (auto& [sig, entry] : ids) {
      if (entry.second != 0) return false;
      entry.first = next++;
    }
    cg.resize(sg.size());
    ch.resize(sh.size());
    for (std::size_t v = 0; v < sg.size(); ++v) cg[v] = ids[sg[v]].first;
    for (std::size_t v = 0; v < sh.size(); ++v) ch[v] = ids[sh[v]].first;
    num = next;
    return true;
  }

  const Graph& g_;
  const Graph& h_;
  EdgeColours eg_;
  EdgeColours eh_;
  std::size_t max_nodes_;
};

}  // namespace

IsoResult exact_iso(const Graph& g, const Graph& h, const IsoBudget& budget) {
  IsoResult r;
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) {
    r.status = IsoStatus::not_isomorphic;
    return r;
  }
  if (g.vertex_count() > budget.max_vertices) return r;
  if (budget.invariant_shortcut && noniso_certificate(g, h).distinguished) {
    r.status = IsoStatus::not_isomorphic;
    return r;
  }
  if (g.vertex_count() == 0) {
    r.status = IsoStatus::isomorphic;
    return r;
  }
  IsoSearch search(g, h, budget.max_nodes);
  try {
    Colors cg, ch;
    std::uint32_t num = 0;
    if (!search.seed(cg, ch, num)) {
      r.status = IsoStatus::not_isomorphic;
    } else if (search.search(cg, ch, num, r.mapping)) {
      r.status = IsoStatus::isomorphic;
    } else {
      r.status = IsoStatus::not_isomorphic;
      r.mapping.clear();
    }
  } catch (const budget_hit&) {
    r.status = IsoStatus::undecided_budget;
    r.mapping.clear();
  }
  r.search_nodes = search.nodes;
  if (r.status == IsoStatus::isomorphic && !is_isomorphism(g, h, r.mapping))
    throw std::logic_error("exact_iso produced an unverified mapping");
  return r;
}

}  // namespace jscheme
