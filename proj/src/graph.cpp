#include "jscheme/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "jscheme/errors.hpp"

namespace jscheme {

JohnsonSpec JohnsonSpec::make(int n, int k, const std::vector<int>& s) {
  JohnsonSpec spec{n, k, 0};
  for (int v : s) {
    if (v < 0 || v >= 64) throw std::invalid_argument("intersection size out of range");
    spec.intersections |= std::uint64_t{1} << v;
  }
  spec.validate();
  return spec;
}

void JohnsonSpec::validate() const {
  if (k < 2 || k > n) throw std::invalid_argument("need 2 <= k <= n");
  if (n > 64) throw std::invalid_argument("ground sets above 64 elements are not supported");
  if (intersections == 0) throw std::invalid_argument("S must be nonempty");
  if (std::bit_width(intersections) > static_cast<unsigned>(k))
    throw std::invalid_argument("S may only contain intersection sizes 0..k-1");
}

std::vector<int> JohnsonSpec::s_values() const {
  std::vector<int> out;
  for (std::uint64_t b = intersections; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::uint64_t JohnsonSpec::degree() const {
  std::uint64_t d = 0;
  for (int i : s_values()) d += binom(k, i) * binom(n - k, k - i);
  return d;
}

std::string JohnsonSpec::name() const {
  std::string s = "J_{";
  bool first = true;
  for (int v : s_values()) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + "}(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

JohnsonSpec reflect(const JohnsonSpec& spec) {
  spec.validate();
  std::vector<int> shifted;
  for (int s : spec.s_values()) {
    const int t = s + spec.n - 2 * spec.k;
    if (t >= 0) shifted.push_back(t);
  }
  if (shifted.empty()) throw std::invalid_argument("reflected spec has no realizable intersection sizes");
  return JohnsonSpec::make(spec.n, spec.n - spec.k, shifted);
}

JohnsonSpec complementary(const JohnsonSpec& spec) {
  spec.validate();
  const std::uint64_t all = (std::uint64_t{1} << spec.k) - 1;
  JohnsonSpec out{spec.n, spec.k, all & ~spec.intersections};
  out.validate();
  return out;
}

Graph::Graph(std::size_t vertex_count, std::vector<std::uint64_t> rows, std::vector<KSubset> labels,
             std::optional<JohnsonSpec> spec)
    : n_(vertex_count),
      words_(bits::words_for(vertex_count)),
      rows_(std::move(rows)),
      labels_(std::move(labels)),
      spec_(spec) {
  if (rows_.size() != n_ * words_) throw std::invalid_argument("adjacency row storage has the wrong size");
  if (!labels_.empty() && labels_.size() != n_) throw std::invalid_argument("label count differs from vertex count");
  degrees_.resize(n_);
  std::size_t total = 0;
  for (Vertex u = 0; u < n_; ++u) {
    auto r = row(u);
    if (bits::test(r, u)) throw std::invalid_argument("self-loop in adjacency");
    if (n_ % 64 && (r[words_ - 1] >> (n_ % 64)) != 0) throw std::invalid_argument("adjacency bit beyond vertex count");
    bits::for_each_set(r, [&](std::size_t v) {
      if (!bits::test(row(static_cast<Vertex>(v)), u)) throw std::invalid_argument("adjacency is not symmetric");
    });
    degrees_[u] = static_cast<std::uint32_t>(bits::count(r));
    total += degrees_[u];
  }
  edges_ = total / 2;
}

Graph Graph::from_edges(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  const std::size_t w = bits::words_for(vertex_count);
  std::vector<std::uint64_t> rows(vertex_count * w, 0);
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop in edge list");
    bits::set({rows.data() + std::size_t{u} * w, w}, v);
    bits::set({rows.data() + std::size_t{v} * w, w}, u);
  }
  return Graph(vertex_count, std::move(rows));
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edges_);
  for (Vertex u = 0; u < n_; ++u)
    bits::for_each_set(row(u), [&](std::size_t v) {
      if (v > u) out.emplace_back(u, static_cast<Vertex>(v));
    });
  return out;
}

Graph Graph::without_spec() const { return Graph(n_, rows_, labels_); }

Graph build_johnson(const JohnsonSpec& spec, std::size_t vertex_budget) {
  spec.validate();
  const std::uint64_t count = spec.vertex_count();
  if (count > vertex_budget)
    throw budget_exceeded(spec.name() + " has " + std::to_string(count) + " vertices, over the budget of " +
                          std::to_string(vertex_budget));
  auto labels = all_subsets(spec.n, spec.k);
  const std::size_t n = labels.size();
  const std::size_t w = bits::words_for(n);
  std::vector<std::uint64_t> rows(n * w, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const std::uint64_t a = labels[u].bits();
    std::span<std::uint64_t> ru{rows.data() + u * w, w};
    for (std::size_t v = u + 1; v < n; ++v) {
      if (spec.allows(std::popcount(a & labels[v].bits()))) {
        bits::set(ru, v);
        bits::set({rows.data() + v * w, w}, u);
      }
    }
  }
  return Graph(n, std::move(rows), std::move(labels), spec);
}

Graph complement(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t w = g.words();
  std::vector<std::uint64_t> rows(g.raw_rows());
  for (std::size_t u = 0; u < n; ++u) {
    std::span<std::uint64_t> r{rows.data() + u * w, w};
    for (auto& word : r) word = ~word;
    if (n % 64) r[w - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
    bits::flip(r, u);
  }
  return Graph(n, std::move(rows), g.labels());
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  const std::size_t m = vertices.size();
  const std::size_t w = bits::words_for(m);
  std::vector<std::uint64_t> rows(m * w, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && g.adjacent(vertices[i], vertices[j])) bits::set({rows.data() + i * w, w}, j);
  std::vector<KSubset> labels;
  if (g.has_labels())
    for (Vertex v : vertices) labels.push_back(g.labels()[v]);
  return Graph(m, std::move(rows), std::move(labels));
}

Graph permute(const Graph& g, std::span<const Vertex> perm) {
  const std::size_t n = g.vertex_count();
  if (perm.size() != n) throw std::invalid_argument("permutation size differs from vertex count");
  std::vector<bool> seen(n, false);
  for (Vertex p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  const std::size_t w = g.words();
  std::vector<std::uint64_t> rows(n * w, 0);
  for (Vertex u = 0; u < n; ++u)
    bits::for_each_set(g.row(u), [&](std::size_t v) { bits::set({rows.data() + std::size_t{perm[u]} * w, w}, perm[v]); });
  std::vector<KSubset> labels;
  if (g.has_labels()) {
    labels.resize(n);
    for (Vertex u = 0; u < n; ++u) labels[perm[u]] = g.labels()[u];
  }
  return Graph(n, std::move(rows), std::move(labels));
}

std::size_t triangle_count(const Graph& g) {
  std::size_t t = 0;
  for (auto [u, v] : g.edge_list()) t += common_neighbors(g, u, v);
  return t / 3;
}

ImplicitJohnson::ImplicitJohnson(const JohnsonSpec& spec) : spec_(spec), labels_(all_subsets(spec.n, spec.k)) {
  spec.validate();
}

std::size_t ImplicitJohnson::degree(Vertex u) const {
  std::size_t d = 0;
  for (Vertex v = 0; v < labels_.size(); ++v) d += adjacent(u, v);
  return d;
}

std::size_t ImplicitJohnson::neighbors_in(Vertex u, std::span<const Vertex> block) const {
  std::size_t c = 0;
  for (Vertex v : block) c += adjacent(u, v);
  return c;
}

}  // namespace jscheme
