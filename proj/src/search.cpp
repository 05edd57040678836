#include "jscheme/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jscheme/errors.hpp"
#include "jscheme/families.hpp"
#include "jscheme/parallel.hpp"

namespace jscheme {

const char* to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "backtrack"; }

const char* to_string(Shape s) {
  switch (s) {
    case Shape::independent_set: return "independent-set";
    case Shape::induced_matching: return "induced-matching";
    case Shape::induced_cycle: return "induced-cycle";
    case Shape::clique: return "clique";
  }
  return "?";
}

const char* to_string(MateStatus s) {
  switch (s) {
    case MateStatus::isomorphic: return "ISOMORPHIC";
    case MateStatus::nonisomorphic: return "NONISOMORPHIC";
    case MateStatus::undecided: return "UNDECIDED";
    case MateStatus::not_computed: return "NOT_COMPUTED";
  }
  return "?";
}

Shape parse_shape(const std::string& name) {
  for (Shape s : {Shape::independent_set, Shape::induced_matching, Shape::induced_cycle, Shape::clique})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown shape '" + name + "'");
}

SearchMode parse_mode(const std::string& name) {
  if (name == "exhaustive") return SearchMode::exhaustive;
  if (name == "backtrack") return SearchMode::backtrack;
  throw std::invalid_argument("unknown search mode '" + name + "'");
}

std::vector<Shape> default_shapes(std::size_t size) {
  if (size == 4) return {Shape::independent_set, Shape::induced_matching, Shape::induced_cycle, Shape::clique};
  if (size == 6) return {Shape::independent_set, Shape::induced_matching, Shape::induced_cycle};
  return {Shape::independent_set, Shape::induced_matching};
}

void SearchConfig::validate() const {
  if (size < 2 || size % 2 != 0) throw std::invalid_argument("switching set size must be even and at least 2");
  if (mode == SearchMode::backtrack) {
    if (shapes.empty()) throw std::invalid_argument("backtracking search needs at least one shape");
    const bool cycles = std::find(shapes.begin(), shapes.end(), Shape::induced_cycle) != shapes.end();
    if (cycles && size != 4 && size != 6) throw std::invalid_argument("induced cycles are searched at sizes 4 and 6 only");
  }
}

namespace {

double choose_estimate(double a, double b) {
  if (b < 0 || b > a) return 0;
  return std::exp(std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1));
}

struct UnitOutput {
  std::vector<std::vector<Vertex>> found;
  std::vector<std::vector<Vertex>> trivial;
  std::uint64_t nodes = 0;
};

// Depth-first enumeration of increasing vertex sequences with incremental
// neighbour counts. One instance per worker.
class Kernel {
 public:
  Kernel(const Graph& g, std::size_t size, std::optional<Shape> shape, std::optional<Vertex> anchor)
      : g_(g), n_(g.vertex_count()), size_(size), shape_(shape), counts_(n_, 0), in_set_(n_, 0) {
    if (shape_) {
      switch (*shape_) {
        case Shape::independent_set: degree_ = 0; break;
        case Shape::induced_matching: degree_ = 1; break;
        case Shape::induced_cycle: degree_ = 2; break;
        case Shape::clique: degree_ = size - 1; break;
      }
    }
    if (anchor) push(*anchor);
  }

  void run_unit(Vertex first, UnitOutput& out) {
    out_ = &out;
    if (in_set_[first]) return;
    const std::size_t remaining = size_ - members_.size();
    if (remaining == 1) {
      leaf(first);
    } else if (shape_allows(first)) {
      push(first);
      if (prune_ok(first, remaining - 1)) dfs(first, remaining - 1);
      pop();
    }
  }

 private:
  void push(Vertex x) {
    in_set_[x] = 1;
    members_.push_back(x);
    bits::for_each_set(g_.row(x), [&](std::size_t u) { ++counts_[u]; });
  }

  void pop() {
    const Vertex x = members_.back();
    members_.pop_back();
    in_set_[x] = 0;
    bits::for_each_set(g_.row(x), [&](std::size_t u) { --counts_[u]; });
  }

  // Final neighbour count p + (0..r) must be able to land in {0, s/2, s}.
  bool feasible(std::size_t p, std::size_t r) const {
    const std::size_t half = size_ / 2;
    return p == 0 || (p <= half && half <= p + r) || p + r >= size_;
  }

  bool shape_allows(Vertex x) const {
    if (!shape_) return true;
    if (*shape_ == Shape::clique) return counts_[x] == members_.size();
    if (counts_[x] > degree_) return false;
    for (Vertex m : members_)
      if (counts_[m] >= degree_ && g_.adjacent(m, x)) return false;
    return true;
  }

  bool prune_ok(Vertex last, std::size_t r) {
    ++out_->nodes;
    if (shape_) {
      for (Vertex m : members_)
        if (counts_[m] + r < degree_) return false;
    } else {
      std::size_t lo = size_, hi = 0;
      for (Vertex m : members_) {
        lo = std::min<std::size_t>(lo, counts_[m]);
        hi = std::max<std::size_t>(hi, counts_[m]);
      }
      if (hi > lo + r) return false;
    }
    for (Vertex u = 0; u < last; ++u)
      if (!in_set_[u] && !feasible(counts_[u], r)) return false;
    return true;
  }

  void dfs(Vertex last, std::size_t r) {
    if (r == 1) {
      for (Vertex x = last + 1; x < n_; ++x)
        if (!in_set_[x]) leaf(x);
      return;
    }
    for (Vertex x = last + 1; x < n_; ++x) {
      if (in_set_[x] || !shape_allows(x)) continue;
      push(x);
      if (prune_ok(x, r - 1)) dfs(x, r - 1);
      pop();
    }
  }

  // The block is 2-regular here, so it is one cycle iff it is connected.
  bool single_cycle(const std::vector<Vertex>& block) const {
    std::vector<bool> seen(block.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t visited = 0;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++visited;
      for (std::size_t j = 0; j < block.size(); ++j)
        if (!seen[j] && g_.adjacent(block[i], block[j])) {
          seen[j] = true;
          stack.push_back(j);
        }
    }
    return visited == block.size();
  }

  void leaf(Vertex x) {
    ++out_->nodes;
    const auto rx = g_.row(x);
    const std::size_t d = counts_[x];
    if (shape_) {
      if (*shape_ == Shape::clique ? d != members_.size() : d != degree_) return;
    }
    for (Vertex m : members_)
      if (counts_[m] + bits::test(rx, m) != d) return;
    const std::size_t half = size_ / 2;
    bool nontrivial = false;
    for (Vertex u = 0; u < n_; ++u) {
      if (in_set_[u] || u == x) continue;
      const std::size_t c = counts_[u] + bits::test(rx, u);
      if (c == half) {
        nontrivial = true;
      } else if (c != 0 && c != size_) {
        return;
      }
    }
    std::vector<Vertex> block = members_;
    block.push_back(x);
    std::sort(block.begin(), block.end());
    if (shape_ && *shape_ == Shape::induced_cycle && !single_cycle(block)) return;
    (nontrivial ? out_->found : out_->trivial).push_back(std::move(block));
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t size_;
  std::optional<Shape> shape_;
  std::size_t degree_ = 0;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint8_t> in_set_;
  std::vector<Vertex> members_;
  UnitOutput* out_ = nullptr;
};

void enumerate(const Graph& g, const SearchConfig& cfg, std::optional<Shape> shape, SearchOutcome& outcome) {
  const std::size_t n = g.vertex_count();
  if (cfg.anchor && *cfg.anchor >= n) throw std::invalid_argument("anchor vertex out of range");
  if (cfg.size > n) return;
  std::vector<Vertex> units;
  for (Vertex v = 0; v < n; ++v)
    if (!cfg.anchor || v != *cfg.anchor) units.push_back(v);
  std::vector<UnitOutput> outputs(units.size());
  const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;
  parallel_for(units.size(), workers, [&](std::size_t i) {
    Kernel kernel(g, cfg.size, shape, cfg.anchor);
    kernel.run_unit(units[i], outputs[i]);
  });
  for (auto& o : outputs) {
    outcome.nodes += o.nodes;
    for (auto& b : o.found) outcome.results.push_back({std::move(b), {}, MateStatus::not_computed, "", std::nullopt});
    for (auto& b : o.trivial) outcome.trivial_blocks.push_back(std::move(b));
  }
}

void finish(const Graph& g, const SearchConfig& cfg, SearchOutcome& outcome) {
  auto by_block = [](const SearchResult& a, const SearchResult& b) { return a.block < b.block; };
  std::sort(outcome.results.begin(), outcome.results.end(), by_block);
  outcome.results.erase(std::unique(outcome.results.begin(), outcome.results.end(),
                                    [](const auto& a, const auto& b) { return a.block == b.block; }),
                        outcome.results.end());
  std::sort(outcome.trivial_blocks.begin(), outcome.trivial_blocks.end());
  outcome.trivial_blocks.erase(std::unique(outcome.trivial_blocks.begin(), outcome.trivial_blocks.end()),
                               outcome.trivial_blocks.end());
  if (cfg.result_limit && outcome.results.size() > cfg.result_limit) {
    outcome.results.resize(cfg.result_limit);
    outcome.complete = false;
    outcome.covers_all_orbits = false;
  }
  for (auto& r : outcome.results) {
    r.validation = validate_partition(g, SwitchingPartition(g.vertex_count(), {r.block}));
    if (!r.validation.valid || !r.validation.nontrivial)
      throw std::logic_error("search emitted a block that does not re-validate");
  }
  if (cfg.compute_mates) {
    const std::size_t workers = cfg.workers == 0 ? default_workers() : cfg.workers;
    parallel_for(outcome.results.size(), workers,
                 [&](std::size_t i) { classify_mate(g, outcome.results[i], cfg.iso_budget, 1); });
  }
}

}  // namespace

void classify_mate(const Graph& g, SearchResult& result, const IsoBudget& budget, std::size_t workers) {
  const SwitchingPartition p(g.vertex_count(), {result.block});
  if (result.validation.classes.empty()) result.validation = validate_partition(g, p);
  const Graph h = apply_switch(g, p, result.validation);
  if (g.vertex_count() <= default_dense_budget) result.cospectral = cospectral(g, h, default_primes, workers);
  const auto cert = noniso_certificate(g, h, workers);
  if (cert.distinguished) {
    result.mate = MateStatus::nonisomorphic;
    result.mate_evidence = cert.invariant;
    return;
  }
  const auto iso = exact_iso(g, h, budget);
  result.mate_evidence = "exact_iso";
  switch (iso.status) {
    case IsoStatus::isomorphic: result.mate = MateStatus::isomorphic; break;
    case IsoStatus::not_isomorphic: result.mate = MateStatus::nonisomorphic; break;
    case IsoStatus::undecided_budget: result.mate = MateStatus::undecided; break;
  }
}

SearchOutcome search_exhaustive(const Graph& g, const SearchConfig& cfg_in) {
  SearchConfig cfg = cfg_in;
  cfg.mode = SearchMode::exhaustive;
  cfg.validate();
  const double n = static_cast<double>(g.vertex_count());
  const double estimate = cfg.anchor ? choose_estimate(n - 1, static_cast<double>(cfg.size) - 1)
                                     : choose_estimate(n, static_cast<double>(cfg.size));
  if (estimate > cfg.candidate_budget)
    throw budget_exceeded("exhaustive search would examine about " + std::to_string(estimate) +
                          " candidates, over the budget");
  SearchOutcome outcome;
  enumerate(g, cfg, std::nullopt, outcome);
  outcome.complete = true;
  outcome.covers_all_orbits = !cfg.anchor || cfg.vertex_transitive;
  finish(g, cfg, outcome);
  return outcome;
}

SearchOutcome search_backtrack(const Graph& g, const SearchConfig& cfg_in) {
  SearchConfig cfg = cfg_in;
  cfg.mode = SearchMode::backtrack;
  cfg.validate();
  SearchOutcome outcome;
  auto shapes = cfg.shapes;
  std::sort(shapes.begin(), shapes.end());
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());
  for (Shape s : shapes) enumerate(g, cfg, s, outcome);
  outcome.complete = true;
  // At size 4 the four shapes are every regular graph on four vertices.
  outcome.covers_all_orbits = cfg.size == 4 && shapes.size() == 4 && (!cfg.anchor || cfg.vertex_transitive);
  finish(g, cfg, outcome);
  return outcome;
}

SearchOutcome run_search(const Graph& g, const SearchConfig& cfg) {
  return cfg.mode == SearchMode::exhaustive ? search_exhaustive(g, cfg) : search_backtrack(g, cfg);
}

FixtureReport verify_fixture_sets() {
  FixtureReport report{build_johnson(JohnsonSpec::make(8, 4, {2})), {}};
  const Graph& g = report.graph;
  const auto blocks = j2_8_4_fixture_blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    FixtureCheck check;
    check.block = vertices_of(blocks[i]);
    const SwitchingPartition p(g.vertex_count(), {check.block});
    check.validation = validate_partition(g, p);
    const Graph induced = induced_subgraph(g, check.block);
    check.induced_degrees = induced.degrees();
    const bool two_regular = std::all_of(check.induced_degrees.begin(), check.induced_degrees.end(),
                                         [](auto d) { return d == 2; });
    if (two_regular) {
      // Component sizes of a 2-regular graph.
      std::vector<bool> seen(induced.vertex_count(), false);
      std::vector<std::size_t> sizes;
      for (Vertex s = 0; s < induced.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::size_t count = 0;
        std::vector<Vertex> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
          const Vertex v = stack.back();
          stack.pop_back();
          ++count;
          bits::for_each_set(induced.row(v), [&](std::size_t u) {
            if (!seen[u]) {
              seen[u] = true;
              stack.push_back(static_cast<Vertex>(u));
            }
          });
        }
        sizes.push_back(count);
      }
      check.two_four_cycles = sizes == std::vector<std::size_t>{4, 4};
    }
    check.six_regular = induced.vertex_count() == 8 && std::all_of(check.induced_degrees.begin(),
                                                                   check.induced_degrees.end(),
                                                                   [](auto d) { return d == 6; });
    if (!check.validation.valid || !check.validation.nontrivial)
      throw std::runtime_error("fixture block " + std::to_string(i + 1) + " is not a nontrivial switching set");
    const Graph h = apply_switch(g, p, check.validation);
    check.cospectral = cospectral(g, h);
    check.noniso = noniso_certificate(g, h);
    if (i == 0 && !check.two_four_cycles) throw std::runtime_error("fixture block 1 does not induce two 4-cycles");
    // Block 2 induces two 4-cycles as well; six_regular is reported, not enforced.
    if (check.cospectral != CospectralVerdict::cospectral_mod_primes)
      throw std::runtime_error("fixture mate " + std::to_string(i + 1) + " is not cospectral");
    if (!check.noniso.distinguished)
      throw std::runtime_error("fixture mate " + std::to_string(i + 1) + " is not distinguished from the original");
    report.checks.push_back(std::move(check));
  }
  return report;
}

std::vector<TableCell> build_table(const TableOptions& opts) {
  std::vector<std::vector<int>> s_sets = opts.s_sets;
  if (s_sets.empty()) {
    // Nonempty proper subsets of {0..k-1}, by size then lexicographically.
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << opts.k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < opts.k; ++i)
        if ((mask >> i) & 1U) s.push_back(i);
      s_sets.push_back(s);
    }
    std::stable_sort(s_sets.begin(), s_sets.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
  auto sizes = opts.sizes;
  std::sort(sizes.begin(), sizes.end());

  std::vector<TableCell> cells;
  for (int n = opts.n_min; n <= opts.n_max; ++n) {
    for (const auto& s : s_sets) {
      TableCell cell{JohnsonSpec::make(n, opts.k, s), "", 0, 0, {}};
      if (cell.spec.vertex_count() > opts.vertex_budget) {
        cell.label = "skip";
        cell.notes.push_back("over the vertex budget");
        cells.push_back(std::move(cell));
        continue;
      }
      const Graph g = build_johnson(cell.spec);
      bool all_exhaustive = true;
      for (std::size_t size : sizes) {
        SearchConfig cfg;
        cfg.size = size;
        cfg.vertex_transitive = true;
        cfg.workers = opts.workers;
        cfg.compute_mates = false;
        const double estimate = choose_estimate(static_cast<double>(g.vertex_count()) - 1, static_cast<double>(size) - 1);
        if (estimate <= opts.exhaustive_limit) {
          cfg.mode = SearchMode::exhaustive;
        } else {
          cfg.mode = SearchMode::backtrack;
          cfg.shapes = default_shapes(size);
          all_exhaustive = false;
        }
        auto outcome = run_search(g, cfg);
        cell.notes.push_back("size " + std::to_string(size) + ": " + to_string(cfg.mode) + ", " +
                             std::to_string(outcome.results.size()) + " switching sets");
        if (outcome.results.empty()) continue;
        cell.found_size = size;
        cell.results = outcome.results.size();
        bool undecided = false;
        bool nonisomorphic = false;
        for (auto& r : outcome.results) {
          classify_mate(g, r, cfg.iso_budget, opts.workers == 0 ? default_workers() : opts.workers);
          if (r.mate == MateStatus::nonisomorphic) {
            nonisomorphic = true;
            break;
          }
          if (r.mate == MateStatus::undecided) undecided = true;
        }
        cell.label = nonisomorphic ? "1+" : (undecided ? "1?" : "1-");
        break;
      }
      if (cell.label.empty()) cell.label = all_exhaustive ? "0e" + std::to_string(sizes.back()) : "0b";
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace jscheme
