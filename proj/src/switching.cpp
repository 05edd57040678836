#include "jscheme/switching.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace jscheme {

SwitchingPartition::SwitchingPartition(std::size_t vertex_count, std::vector<std::vector<Vertex>> blocks)
    : vertex_count_(vertex_count), words_(bits::words_for(vertex_count)), blocks_(std::move(blocks)) {
  owner_.assign(vertex_count_, -1);
  masks_.assign(blocks_.size() * words_, 0);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    if (b.empty()) throw std::invalid_argument("empty block " + std::to_string(i));
    std::sort(b.begin(), b.end());
    for (Vertex v : b) {
      if (v >= vertex_count_) throw std::invalid_argument("block vertex " + std::to_string(v) + " out of range");
      if (owner_[v] != -1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " appears in more than one block position");
      owner_[v] = static_cast<int>(i);
      bits::set({masks_.data() + i * words_, words_}, v);
    }
  }
}

const char* to_string(OutsideClass c) {
  switch (c) {
    case OutsideClass::member: return "member";
    case OutsideClass::none: return "none";
    case OutsideClass::half: return "half";
    case OutsideClass::full: return "full";
    case OutsideClass::violation: return "violation";
  }
  return "?";
}

namespace {

template <class CountFn>
ValidationReport validate_impl(std::size_t vertex_count, const SwitchingPartition& p, CountFn count_in) {
  if (p.vertex_count() != vertex_count) throw std::invalid_argument("partition and graph sizes differ");
  const std::size_t t = p.block_count();
  ValidationReport r;
  r.internal_counts.assign(t, std::vector<std::size_t>(t, 0));
  r.classes.assign(t, std::vector<OutsideClass>(vertex_count, OutsideClass::member));
  r.outside_histogram.resize(t);
  r.half_class.resize(t);

  for (std::size_t i = 0; i < t; ++i) {
    const auto block = p.block(i);
    for (std::size_t j = 0; j < t; ++j) {
      const std::size_t expected = count_in(block[0], j);
      r.internal_counts[i][j] = expected;
      for (std::size_t a = 1; a < block.size(); ++a) {
        const std::size_t c = count_in(block[a], j);
        if (c != expected) r.internal_violations.push_back({i, j, block[a], c, expected});
      }
    }
  }

  for (Vertex u = 0; u < vertex_count; ++u) {
    if (p.owner(u) != -1) continue;
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t size = p.block(i).size();
      const std::size_t c = count_in(u, i);
      ++r.outside_histogram[i][c];
      OutsideClass cls;
      if (c == 0) {
        cls = OutsideClass::none;
      } else if (c == size) {
        cls = OutsideClass::full;
      } else if (size % 2 == 0 && 2 * c == size) {
        cls = OutsideClass::half;
        r.half_class[i].push_back(u);
      } else {
        cls = OutsideClass::violation;
        r.outside_violations.push_back({u, i, c});
      }
      r.classes[i][u] = cls;
    }
  }

  r.valid = r.internal_violations.empty() && r.outside_violations.empty();
  r.nontrivial = std::any_of(r.half_class.begin(), r.half_class.end(), [](const auto& h) { return !h.empty(); });
  return r;
}

}  // namespace

ValidationReport validate_partition(const Graph& g, const SwitchingPartition& p) {
  return validate_impl(g.vertex_count(), p,
                       [&](Vertex u, std::size_t i) { return bits::count_and(g.row(u), p.mask(i)); });
}

ValidationReport validate_partition(const ImplicitJohnson& g, const SwitchingPartition& p) {
  return validate_impl(g.vertex_count(), p, [&](Vertex u, std::size_t i) { return g.neighbors_in(u, p.block(i)); });
}

Graph apply_switch(const Graph& g, const SwitchingPartition& p) { return apply_switch(g, p, validate_partition(g, p)); }

Graph apply_switch(const Graph& g, const SwitchingPartition& p, const ValidationReport& report) {
  if (!report.valid) throw std::invalid_argument("cannot switch on an invalid partition");
  const std::size_t w = g.words();
  std::vector<std::uint64_t> rows(g.raw_rows());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const auto mask = p.mask(i);
    for (Vertex u : report.half_class[i]) {
      std::span<std::uint64_t> ru{rows.data() + std::size_t{u} * w, w};
      for (std::size_t a = 0; a < w; ++a) ru[a] ^= mask[a];
      for (Vertex c : p.block(i)) bits::flip({rows.data() + std::size_t{c} * w, w}, u);
    }
  }
  return Graph(g.vertex_count(), std::move(rows), g.labels());
}

std::vector<Vertex> vertices_of(std::span<const KSubset> subsets) {
  std::vector<Vertex> out;
  out.reserve(subsets.size());
  for (const auto& s : subsets) out.push_back(static_cast<Vertex>(rank(s)));
  return out;
}

}  // namespace jscheme
