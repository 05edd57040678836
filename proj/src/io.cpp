#include "jscheme/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jscheme {

using nlohmann::json;

std::string to_graph6(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else if (n <= 68719476735ULL) {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    throw std::invalid_argument("graph too large for graph6");
  }
  int acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Graph from_graph6(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  if (text.empty()) throw std::invalid_argument("graph6: empty input");
  for (char c : text)
    if (c < 63 || c > 126) throw std::invalid_argument("graph6: byte outside 63..126");

  std::size_t pos = 0;
  std::size_t n = 0;
  auto take = [&](int groups) {
    if (pos + groups > text.size()) throw std::invalid_argument("graph6: truncated size field");
    std::size_t v = 0;
    for (int i = 0; i < groups; ++i) v = (v << 6) | static_cast<std::size_t>(text[pos++] - 63);
    return v;
  };
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] != 126) {
    pos = 1;
    n = take(3);
  } else {
    pos = 2;
    n = take(6);
  }
  const std::size_t bit_count = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t byte_count = (bit_count + 5) / 6;
  if (text.size() - pos != byte_count) throw std::invalid_argument("graph6: wrong data length for vertex count");

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const int byte = text[pos + bit / 6] - 63;
      if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  if (bit % 6) {
    const int last = text.back() - 63;
    if (last & ((1 << (6 - bit % 6)) - 1)) throw std::invalid_argument("graph6: nonzero padding bits");
  }
  return Graph::from_edges(n, edges);
}

json subset_to_json(const KSubset& s) { return s.elements(); }

KSubset subset_from_json(const json& j, int n) { return KSubset::from_elements(j.get<std::vector<int>>(), n); }

json spec_to_json(const JohnsonSpec& spec) { return {{"n", spec.n}, {"k", spec.k}, {"S", spec.s_values()}}; }

JohnsonSpec spec_from_json(const json& j) {
  return JohnsonSpec::make(j.at("n").get<int>(), j.at("k").get<int>(), j.at("S").get<std::vector<int>>());
}

json graph_to_json(const Graph& g) {
  json j = json::object();
  if (g.spec()) j = spec_to_json(*g.spec());
  j["vertex_count"] = g.vertex_count();
  if (g.has_labels()) {
    json vs = json::array();
    for (const auto& s : g.labels()) vs.push_back(subset_to_json(s));
    j["vertices"] = std::move(vs);
  }
  json es = json::array();
  for (auto [u, v] : g.edge_list()) es.push_back({u, v});
  j["edges"] = std::move(es);
  return j;
}

Graph graph_from_json(const json& j) {
  std::optional<JohnsonSpec> spec;
  if (j.contains("n") && j.contains("k") && j.contains("S")) spec = spec_from_json(j);
  std::vector<KSubset> labels;
  if (j.contains("vertices")) {
    const int n = spec ? spec->n : j.at("ground_size").get<int>();
    for (const auto& v : j.at("vertices")) labels.push_back(subset_from_json(v, n));
  }
  std::size_t count = 0;
  if (j.contains("vertex_count")) {
    count = j.at("vertex_count").get<std::size_t>();
  } else if (!labels.empty()) {
    count = labels.size();
  } else {
    throw std::invalid_argument("graph JSON needs vertex_count or vertices");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  const auto plain = Graph::from_edges(count, edges);
  if (spec) {
    // Only keep the JohnsonSpec if the edges really are J_S(n,k) in rank order.
    auto built = build_johnson(*spec);
    if (built == plain) return built;
    spec.reset();
  }
  return Graph(count, plain.raw_rows(), std::move(labels));
}

std::vector<int> parse_int_set(std::string_view text) {
  std::string s(text);
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    const int v = std::stoi(cur, &used);
    if (used != cur.size()) throw std::invalid_argument("bad integer '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == '{' || c == '}' || std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

JohnsonSpec parse_spec(std::string_view text) {
  const auto first = text.find(',');
  if (first == std::string_view::npos) throw std::invalid_argument("spec must look like n,k,{S}");
  const auto second = text.find(',', first + 1);
  if (second == std::string_view::npos) throw std::invalid_argument("spec must look like n,k,{S}");
  const auto n = parse_int_set(text.substr(0, first));
  const auto k = parse_int_set(text.substr(first + 1, second - first - 1));
  const auto s = parse_int_set(text.substr(second + 1));
  if (n.size() != 1 || k.size() != 1 || s.empty()) throw std::invalid_argument("spec must look like n,k,{S}");
  return JohnsonSpec::make(n[0], k[0], s);
}

json partition_to_json(const SwitchingPartition& p) { return {{"blocks", p.blocks()}}; }

SwitchingPartition partition_from_json(const json& j, std::size_t vertex_count, const JohnsonSpec* spec) {
  std::vector<std::vector<Vertex>> blocks;
  for (const auto& b : j.at("blocks")) {
    std::vector<Vertex> block;
    for (const auto& v : b) {
      if (v.is_array()) {
        if (!spec) throw std::invalid_argument("subset-valued blocks need a Johnson spec");
        const auto s = subset_from_json(v, spec->n);
        if (s.k() != spec->k) throw std::invalid_argument("block subset has the wrong size");
        block.push_back(static_cast<Vertex>(rank(s)));
      } else {
        block.push_back(v.get<Vertex>());
      }
    }
    blocks.push_back(std::move(block));
  }
  return SwitchingPartition(vertex_count, std::move(blocks));
}

json report_to_json(const ValidationReport& r) {
  json j;
  j["valid"] = r.valid;
  j["nontrivial"] = r.nontrivial;
  j["internal_counts"] = r.internal_counts;
  json iv = json::array();
  for (const auto& v : r.internal_violations)
    iv.push_back({{"block", v.block}, {"target", v.target}, {"vertex", v.vertex}, {"count", v.count},
                  {"expected", v.expected}});
  j["internal_violations"] = std::move(iv);
  json ov = json::array();
  for (const auto& v : r.outside_violations) ov.push_back({{"vertex", v.vertex}, {"block", v.block}, {"count", v.count}});
  j["outside_violations"] = std::move(ov);
  json hist = json::array();
  for (const auto& h : r.outside_histogram) {
    json hb = json::object();
    for (auto [count, vertices] : h) hb[std::to_string(count)] = vertices;
    hist.push_back(std::move(hb));
  }
  j["outside_histogram"] = std::move(hist);
  j["half_class"] = r.half_class;
  return j;
}

json certificate_to_json(const SpectralCertificate& c) { return {{"primes", c.primes}, {"residues", c.residues}}; }

SpectralCertificate certificate_from_json(const json& j) {
  SpectralCertificate c;
  c.primes = j.at("primes").get<std::vector<std::uint64_t>>();
  c.residues = j.at("residues").get<std::vector<std::vector<std::uint64_t>>>();
  if (c.primes.size() != c.residues.size()) throw std::invalid_argument("certificate: primes and residues differ in length");
  return c;
}

json family_to_json(const FamilyInstance& f) {
  json w = json::object();
  for (const auto& [name, s] : f.witnesses) w[name] = {{"subset", subset_to_json(s)}, {"vertex", rank(s)}};
  return {{"family", to_string(f.family)},
          {"spec", spec_to_json(f.spec)},
          {"partition", partition_to_json(f.partition)},
          {"witnesses", std::move(w)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << contents;
}

Graph load_graph(const std::string& path) {
  const auto text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (path.ends_with(".json") || (first != std::string::npos && text[first] == '{'))
    return graph_from_json(json::parse(text));
  return from_graph6(text);
}

}  // namespace jscheme
