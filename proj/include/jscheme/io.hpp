#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "jscheme/families.hpp"
#include "jscheme/graph.hpp"
#include "jscheme/invariants.hpp"
#include "jscheme/spectra.hpp"
#include "jscheme/switching.hpp"

namespace jscheme {

/// graph6 encoding (no header, no trailing newline).
std::string to_graph6(const Graph& g);
/// Accepts an optional ">>graph6<<" header and surrounding whitespace.
/// Throws std::invalid_argument on malformed input.
Graph from_graph6(std::string_view text);

/// {"n","k","S"} when the graph carries a Johnson spec, "vertices" (1-based
/// subsets in vertex order) when labelled, "vertex_count", and "edges" as
/// 0-based [u, v] pairs with u < v.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json subset_to_json(const KSubset& s);
KSubset subset_from_json(const nlohmann::json& j, int n);

nlohmann::json spec_to_json(const JohnsonSpec& spec);
JohnsonSpec spec_from_json(const nlohmann::json& j);
/// Parses "n,k,{s1,s2,...}" (braces optional around S).
JohnsonSpec parse_spec(std::string_view text);
/// Parses "{0,1,2}" or "0,1,2".
std::vector<int> parse_int_set(std::string_view text);

/// {"blocks": [[v, ...], ...]}.
nlohmann::json partition_to_json(const SwitchingPartition& p);
/// Accepts blocks given as vertex indices or, when `spec` is provided, as
/// 1-based subsets (resolved through rank).
SwitchingPartition partition_from_json(const nlohmann::json& j, std::size_t vertex_count,
                                       const JohnsonSpec* spec = nullptr);

nlohmann::json report_to_json(const ValidationReport& r);
nlohmann::json certificate_to_json(const SpectralCertificate& c);
SpectralCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const FamilyInstance& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Reads graph6 or labelled JSON, chosen by extension (.json) or content.
Graph load_graph(const std::string& path);

}  // namespace jscheme
