// jscheme: construct Johnson scheme graphs, verify and apply switchings,
// certify mates, and search for switching sets.
//
// Exit codes: 0 success, 1 verified negative, 2 usage or input error,
// 3 budget exceeded.
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jscheme/errors.hpp"
#include "jscheme/families.hpp"
#include "jscheme/invariants.hpp"
#include "jscheme/io.hpp"
#include "jscheme/parallel.hpp"
#include "jscheme/search.hpp"
#include "jscheme/spectra.hpp"

#ifndef JSCHEME_VERSION
#define JSCHEME_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace jscheme;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return out.str();
}

// Records what a command did; written only when --manifest is given.
class RunManifest {
 public:
  void command_line(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) args_.push_back(argv[i]);
  }
  void spec(const JohnsonSpec& s) { spec_ = spec_to_json(s); }
  void parameter(const std::string& key, json value) { params_[key] = std::move(value); }

  // Times a stage and logs it when verbose.
  template <typename F>
  auto stage(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      timings_[name] = s;
      if (verbose) std::cerr << json{{"event", "stage"}, {"name", name}, {"seconds", s}}.dump() << "\n";
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto r = f();
      finish();
      return r;
    }
  }

  void output(const std::string& path, std::string_view contents) {
    write_file(path, contents);
    outputs_.push_back({{"path", path}, {"sha256", sha256_hex(contents)}, {"bytes", contents.size()}});
  }

  json to_json() const {
    json j{{"command_line", args_},
           {"tool_version", JSCHEME_VERSION},
           {"prime_list_version", prime_list_version},
           {"primes", std::vector<std::uint64_t>(default_primes.begin(), default_primes.end())},
           {"parameters", params_},
           {"timings", timings_},
           {"outputs", outputs_}};
    if (!spec_.is_null()) j["spec"] = spec_;
    return j;
  }

  bool verbose = false;

 private:
  std::vector<std::string> args_;
  json spec_;
  json params_ = json::object();
  json timings_ = json::object();
  json outputs_ = json::array();
};

RunManifest manifest;

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::size_t workers_from(std::size_t flag) { return flag == 0 ? default_workers() : flag; }

// Graph from --graph FILE or --spec n,k,{S}.
struct GraphInput {
  std::string path;
  std::string spec;
  std::size_t budget = 100000;

  void add_to(CLI::App* app) {
    app->add_option("--graph", path, "graph6 or labelled JSON file");
    app->add_option("--spec", spec, "n,k,{S}");
    app->add_option("--vertex-budget", budget, "largest graph built from --spec");
  }

  Graph load() const {
    if (path.empty() == spec.empty()) throw usage_error("give exactly one of --graph and --spec");
    if (!spec.empty()) {
      const auto s = parse_spec(spec);
      manifest.spec(s);
      return manifest.stage("build", [&] { return build_johnson(s, budget); });
    }
    manifest.parameter("graph", path);
    return manifest.stage("load", [&] { return load_graph(path); });
  }
};

SwitchingPartition load_partition(const std::string& path, const Graph& g) {
  const json j = json::parse(read_file(path));
  const JohnsonSpec* spec = g.spec() ? &*g.spec() : nullptr;
  std::optional<JohnsonSpec> file_spec;
  if (!spec && j.contains("spec")) {
    file_spec = spec_from_json(j["spec"]);
    if (file_spec->vertex_count() == g.vertex_count()) spec = &*file_spec;
  }
  return partition_from_json(j, g.vertex_count(), spec);
}

std::string encode_graph(const Graph& g, const std::string& path, const std::string& format) {
  const bool as_json = format == "json" || (format.empty() && fs::path(path).extension() == ".json");
  return as_json ? graph_to_json(g).dump(2) + "\n" : to_graph6(g) + "\n";
}

json block_json(const Graph& g, const std::vector<Vertex>& block) {
  json j{{"vertices", block}};
  if (!g.labels().empty()) {
    json subsets = json::array();
    for (Vertex v : block) subsets.push_back(subset_to_json(g.labels()[v]));
    j["subsets"] = subsets;
  }
  return j;
}

FamilyInstance make_family(const std::string& name, int m, int n, int k, bool unchecked) {
  if (name == "A") return family_A(m, n, unchecked);
  if (name == "B") return family_B(m, k, unchecked);
  if (name == "jnk3") return johnson_multiblock(n, k);
  if (name == "k2prefix") return k2prefix_block(n, k, m);
  throw usage_error("unknown family '" + name + "' (expected A, B, jnk3 or k2prefix)");
}

// Mate verdict for a switched pair: noniso_certificate first, then exact_iso.
json mate_verdict(const Graph& g, const Graph& h, std::size_t workers, const IsoBudget& budget, MateStatus& status) {
  const auto nv = manifest.stage("noniso", [&] { return noniso_certificate(g, h, workers); });
  json j{{"noniso", {{"verdict", nv.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE"}, {"invariant", nv.invariant}}}};
  if (nv.distinguished) {
    status = MateStatus::nonisomorphic;
  } else {
    const auto iso = manifest.stage("exact_iso", [&] { return exact_iso(g, h, budget); });
    j["exact_iso"] = {{"verdict", to_string(iso.status)}, {"search_nodes", iso.search_nodes}};
    status = iso.status == IsoStatus::isomorphic       ? MateStatus::isomorphic
             : iso.status == IsoStatus::not_isomorphic ? MateStatus::nonisomorphic
                                                       : MateStatus::undecided;
  }
  j["mate_status"] = to_string(status);
  return j;
}

int mate_exit(CospectralVerdict cv, MateStatus status) {
  if (cv != CospectralVerdict::cospectral_mod_primes) return exit_negative;
  if (status == MateStatus::undecided) return exit_budget;
  return status == MateStatus::nonisomorphic ? exit_ok : exit_negative;
}

}  // namespace

int main(int argc, char** argv) {
  manifest.command_line(argc, argv);
  CLI::App app{"Johnson scheme graphs and Godsil-McKay switching"};
  app.set_version_flag("--version", JSCHEME_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  std::string manifest_path;
  std::size_t workers = 0;
  app.add_option("--manifest", manifest_path, "write a run manifest (JSON) to this file");
  app.add_option("--workers", workers, "worker threads (default: JS_WORKERS or hardware)");
  app.add_flag("-v,--verbose", manifest.verbose, "log stage timings to stderr");

  int code = exit_ok;
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "build J_S(n,k)");
  std::string gen_spec, gen_out, gen_format;
  std::size_t gen_budget = 100000;
  gen->add_option("--spec", gen_spec, "n,k,{S}")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");
  gen->add_option("--format", gen_format, "graph6 or json")->check(CLI::IsMember({"graph6", "json"}));
  gen->add_option("--vertex-budget", gen_budget);
  gen->callback([&] {
    action = [&] {
      const auto spec = parse_spec(gen_spec);
      manifest.spec(spec);
      const Graph g = manifest.stage("build", [&] { return build_johnson(spec, gen_budget); });
      const std::string text = encode_graph(g, gen_out, gen_format);
      if (gen_out.empty()) std::cout << text;
      else manifest.output(gen_out, text);
      return exit_ok;
    };
  });

  // family
  auto* fam = app.add_subcommand("family", "explicit switching constructions");
  std::string fam_name, fam_out;
  int fam_m = 0, fam_n = 0, fam_k = 0;
  bool fam_unchecked = false, fam_validate = false;
  fam->add_option("--name", fam_name, "A, B, jnk3 or k2prefix")->required();
  fam->add_option("--m", fam_m);
  fam->add_option("--n", fam_n);
  fam->add_option("--k", fam_k);
  fam->add_flag("--unchecked", fam_unchecked, "relax the lower bound on m");
  fam->add_flag("--validate", fam_validate, "build the graph and validate the partition");
  fam->add_option("--out", fam_out);
  fam->callback([&] {
    action = [&] {
      const auto f = make_family(fam_name, fam_m, fam_n, fam_k, fam_unchecked);
      manifest.spec(f.spec);
      json j = family_to_json(f);
      int rc = exit_ok;
      if (fam_validate) {
        const auto r = manifest.stage("validate", [&] {
          return f.spec.vertex_count() <= default_dense_budget ? validate_partition(build_johnson(f.spec), f.partition)
                                                               : validate_partition(ImplicitJohnson(f.spec), f.partition);
        });
        j["validation"] = report_to_json(r);
        rc = r.valid ? exit_ok : exit_negative;
      }
      if (fam_out.empty()) print(j);
      else manifest.output(fam_out, j.dump(2) + "\n");
      return rc;
    };
  });

  // verify-partition
  auto* ver = app.add_subcommand("verify-partition", "check the Godsil-McKay conditions");
  GraphInput ver_in;
  std::string ver_partition;
  ver_in.add_to(ver);
  ver->add_option("--partition", ver_partition, "partition JSON")->required();
  ver->callback([&] {
    action = [&] {
      const Graph g = ver_in.load();
      const auto p = load_partition(ver_partition, g);
      const auto r = manifest.stage("validate", [&] { return validate_partition(g, p); });
      print(report_to_json(r));
      return r.valid ? exit_ok : exit_negative;
    };
  });

  // switch
  auto* sw = app.add_subcommand("switch", "apply a switching partition");
  GraphInput sw_in;
  std::string sw_partition, sw_out, sw_format;
  sw_in.add_to(sw);
  sw->add_option("--partition", sw_partition, "partition JSON")->required();
  sw->add_option("--out", sw_out, "output file (default stdout)");
  sw->add_option("--format", sw_format, "graph6 or json")->check(CLI::IsMember({"graph6", "json"}));
  sw->callback([&] {
    action = [&] {
      const Graph g = sw_in.load();
      const auto p = load_partition(sw_partition, g);
      const auto r = manifest.stage("validate", [&] { return validate_partition(g, p); });
      if (!r.valid) {
        print(report_to_json(r));
        return exit_negative;
      }
      const Graph h = manifest.stage("switch", [&] { return apply_switch(g, p, r); });
      const std::string text = encode_graph(h, sw_out, sw_format);
      if (sw_out.empty()) std::cout << text;
      else manifest.output(sw_out, text);
      return exit_ok;
    };
  });

  // cospectral
  auto* cos = app.add_subcommand("cospectral", "compare characteristic polynomials modulo fixed primes");
  std::string cos_a, cos_b, cos_cert;
  cos->add_option("first", cos_a)->required();
  cos->add_option("second", cos_b)->required();
  cos->add_option("--certificate-out", cos_cert, "write both certificates as JSON");
  cos->callback([&] {
    action = [&] {
      const Graph g = load_graph(cos_a), h = load_graph(cos_b);
      if (g.vertex_count() != h.vertex_count()) throw usage_error("graphs have different vertex counts");
      const std::size_t w = workers_from(workers);
      const auto ca = manifest.stage("certificate", [&] { return spectral_certificate(g, default_primes, w); });
      const auto cb = manifest.stage("certificate", [&] { return spectral_certificate(h, default_primes, w); });
      const auto verdict = compare_certificates(ca, cb);
      print({{"verdict", to_string(verdict)}, {"primes", ca.primes}, {"prime_list_version", prime_list_version}});
      if (!cos_cert.empty())
        manifest.output(cos_cert, json{{"first", certificate_to_json(ca)}, {"second", certificate_to_json(cb)}}.dump(2) + "\n");
      return verdict == CospectralVerdict::cospectral_mod_primes ? exit_ok : exit_negative;
    };
  });

  // iso
  auto* iso = app.add_subcommand("iso", "non-isomorphism certificate or exact decision");
  std::string iso_a, iso_b;
  bool iso_exact = false;
  IsoBudget iso_budget;
  iso->add_option("first", iso_a)->required();
  iso->add_option("second", iso_b)->required();
  iso->add_flag("--exact", iso_exact, "decide isomorphism and print the mapping");
  iso->add_option("--max-nodes", iso_budget.max_nodes);
  iso->add_option("--max-vertices", iso_budget.max_vertices);
  iso->callback([&] {
    action = [&] {
      const Graph g = load_graph(iso_a), h = load_graph(iso_b);
      if (!iso_exact) {
        const auto v = manifest.stage("noniso", [&] { return noniso_certificate(g, h, workers_from(workers)); });
        print({{"verdict", v.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE"}, {"invariant", v.invariant}});
        return v.distinguished ? exit_negative : exit_ok;
      }
      const auto r = manifest.stage("exact_iso", [&] { return exact_iso(g, h, iso_budget); });
      json j{{"verdict", to_string(r.status)}, {"search_nodes", r.search_nodes}};
      if (r.status == IsoStatus::isomorphic) j["mapping"] = r.mapping;
      print(j);
      if (r.status == IsoStatus::undecided_budget) return exit_budget;
      return r.status == IsoStatus::isomorphic ? exit_ok : exit_negative;
    };
  });

  // predict
  auto* pred = app.add_subcommand("predict", "predicted common-neighbour changes at the witnesses");
  std::string pred_family;
  int pred_m = 0, pred_n = 0, pred_k = 0;
  bool pred_verify = false;
  pred->add_option("--family", pred_family, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
  pred->add_option("--m", pred_m)->required();
  pred->add_option("--n", pred_n, "family A");
  pred->add_option("--k", pred_k, "family B");
  pred->add_flag("--verify", pred_verify, "compare with a brute-force count on the switched graph");
  pred->callback([&] {
    action = [&] {
      json j;
      FamilyInstance f;
      std::string a = "c0", b;
      if (pred_family == "A") {
        const auto p = predict_lambda_A(pred_m, pred_n);
        j = {{"family", "A"}, {"m", pred_m}, {"n", pred_n}, {"lost", p.lost}, {"gained", p.gained}, {"delta", p.delta}};
        if (pred_verify) f = family_A(pred_m, pred_n);
        b = "v";
      } else {
        const auto p = predict_lambda_B(pred_m, pred_k);
        j = {{"family", "B"}, {"m", pred_m}, {"k", pred_k}, {"lost", p.lost}, {"gained", p.gained}};
        if (pred_verify) f = family_B(pred_m, pred_k);
        b = "w";
      }
      int rc = exit_ok;
      if (pred_verify) {
        const Graph g = manifest.stage("build", [&] { return build_johnson(f.spec); });
        const Graph h = manifest.stage("switch", [&] { return apply_switch(g, f.partition); });
        const Vertex x = f.witness_vertex(a), y = f.witness_vertex(b);
        std::int64_t lost = 0, gained = 0;
        for (Vertex z = 0; z < g.vertex_count(); ++z) {
          const bool before = g.adjacent(x, z) && g.adjacent(y, z);
          const bool after = h.adjacent(x, z) && h.adjacent(y, z);
          lost += before && !after;
          gained += after && !before;
        }
        j["observed"] = {{"lost", lost}, {"gained", gained}};
        rc = lost == j["lost"].get<std::int64_t>() && gained == j["gained"].get<std::int64_t>() ? exit_ok : exit_negative;
      }
      print(j);
      return rc;
    };
  });

  // k2prefix
  auto* k2 = app.add_subcommand("k2prefix", "the [k-2]-prefix block and its parameter condition");
  int k2_k = 0, k2_n = 0, k2_m = 0;
  bool k2_check = false;
  k2->add_option("--k", k2_k)->required();
  k2->add_option("--n", k2_n, "also report neighbour counts for this n");
  k2->add_option("--m", k2_m);
  k2->add_flag("--check", k2_check, "validate the block on the implicit graph");
  k2->callback([&] {
    action = [&] {
      json j{{"k", k2_k}};
      const auto n = k2prefix_predicate(k2_k);
      j["predicted_n"] = n ? json(*n) : json(nullptr);
      int rc = exit_ok;
      if (k2_n > 0) {
        const auto c = k2prefix_counts(k2_n, k2_k, k2_m);
        j["counts"] = {{"n", k2_n}, {"m", k2_m}, {"case_iii", c.case_iii_possible ? json(c.case_iii) : json(nullptr)},
                       {"case_iv", c.case_iv}, {"block_size", c.block_size}};
        if (k2_check) {
          const auto f = k2prefix_block(k2_n, k2_k, k2_m);
          manifest.spec(f.spec);
          const auto r = manifest.stage("validate", [&] { return validate_partition(ImplicitJohnson(f.spec), f.partition); });
          json hist = json::object();
          for (const auto& [count, vertices] : r.outside_histogram[0]) hist[std::to_string(count)] = vertices;
          j["check"] = {{"valid", r.valid}, {"nontrivial", r.nontrivial}, {"outside_histogram", hist}};
          rc = r.valid ? exit_ok : exit_negative;
        }
      }
      print(j);
      return rc;
    };
  });

  // search
  auto* se = app.add_subcommand("search", "search for single-block switching sets");
  GraphInput se_in;
  std::string se_mode = "exhaustive", se_out;
  std::vector<std::string> se_shapes;
  bool se_no_anchor = false, se_transitive = false, se_no_mates = false;
  SearchConfig se_cfg;
  std::size_t se_anchor = 0;
  se_in.add_to(se);
  se->add_option("--size", se_cfg.size)->required();
  se->add_option("--mode", se_mode)->check(CLI::IsMember({"exhaustive", "backtrack"}));
  se->add_option("--shape", se_shapes, "independent-set, induced-matching, induced-cycle or clique (repeatable)");
  se->add_option("--anchor", se_anchor, "vertex every candidate contains");
  se->add_flag("--no-anchor", se_no_anchor, "enumerate every subset");
  se->add_flag("--vertex-transitive", se_transitive, "assert vertex-transitivity of a --graph input");
  se->add_flag("--no-mates", se_no_mates, "skip mate classification");
  se->add_option("--limit", se_cfg.result_limit, "keep the first N results");
  se->add_option("--candidate-budget", se_cfg.candidate_budget);
  se->add_option("--out", se_out, "write the results array as JSON");
  se->callback([&] {
    action = [&] {
      const Graph g = se_in.load();
      se_cfg.mode = parse_mode(se_mode);
      for (const auto& s : se_shapes) se_cfg.shapes.push_back(parse_shape(s));
      if (se_cfg.mode == SearchMode::backtrack && se_cfg.shapes.empty()) se_cfg.shapes = default_shapes(se_cfg.size);
      se_cfg.anchor = se_no_anchor ? std::nullopt : std::optional<Vertex>(static_cast<Vertex>(se_anchor));
      if (se_cfg.anchor && *se_cfg.anchor >= g.vertex_count()) throw usage_error("anchor out of range");
      se_cfg.vertex_transitive = se_transitive || g.spec().has_value();
      se_cfg.workers = workers_from(workers);
      se_cfg.compute_mates = !se_no_mates;
      manifest.parameter("size", se_cfg.size);
      manifest.parameter("mode", se_mode);
      const auto o = manifest.stage("search", [&] { return run_search(g, se_cfg); });
      json results = json::array();
      for (const auto& r : o.results) {
        json e = block_json(g, r.block);
        e["block"] = r.block;
        e["trivial"] = false;
        e["mate_status"] = to_string(r.mate);
        if (!r.mate_evidence.empty()) e["evidence"] = r.mate_evidence;
        if (r.cospectral) e["cospectral"] = to_string(*r.cospectral);
        results.push_back(e);
      }
      for (const auto& b : o.trivial_blocks) {
        json e = block_json(g, b);
        e["block"] = b;
        e["trivial"] = true;
        e["mate_status"] = to_string(MateStatus::not_computed);
        results.push_back(e);
      }
      print({{"size", se_cfg.size},
             {"mode", to_string(se_cfg.mode)},
             {"found", o.results.size()},
             {"trivial", o.trivial_blocks.size()},
             {"nodes", o.nodes},
             {"complete", o.complete},
             {"covers_all_orbits", o.covers_all_orbits},
             {"results", se_out.empty() ? results : json(se_out)}});
      if (!se_out.empty()) manifest.output(se_out, results.dump(2) + "\n");
      return exit_ok;
    };
  });

  // table
  auto* tab = app.add_subcommand("table", "search a range of J_S(n,k) and label each cell");
  TableOptions tab_opts;
  std::vector<std::string> tab_s;
  std::string tab_out;
  tab->add_option("--k", tab_opts.k)->required();
  tab->add_option("--n-min", tab_opts.n_min);
  tab->add_option("--n-max", tab_opts.n_max);
  tab->add_option("--sizes", tab_opts.sizes)->delimiter(',');
  tab->add_option("--S", tab_s, "intersection set such as {0,1} (repeatable)");
  tab->add_option("--exhaustive-limit", tab_opts.exhaustive_limit);
  tab->add_option("--out", tab_out, "write the cells as JSON");
  tab->callback([&] {
    action = [&] {
      for (const auto& s : tab_s) tab_opts.s_sets.push_back(parse_int_set(s));
      tab_opts.workers = workers_from(workers);
      const auto cells = manifest.stage("table", [&] { return build_table(tab_opts); });
      json j = json::array();
      std::cout << "legend: 0eX none up to size X (exhaustive), 0b none (restricted backtracking), "
                   "1+ found with a nonisomorphic mate, 1- found with isomorphic mates only, 1? mates undecided\n";
      for (const auto& c : cells) {
        std::cout << std::left << std::setw(22) << c.spec.name() << " " << std::setw(5) << c.label;
        for (const auto& note : c.notes) std::cout << "  " << note << ";";
        std::cout << "\n";
        j.push_back({{"spec", spec_to_json(c.spec)},
                     {"name", c.spec.name()},
                     {"label", c.label},
                     {"found_size", c.found_size},
                     {"results", c.results},
                     {"notes", c.notes}});
      }
      if (!tab_out.empty()) manifest.output(tab_out, j.dump(2) + "\n");
      return exit_ok;
    };
  });

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "build, switch and certify a family or an explicit block");
  std::string pipe_family, pipe_spec, pipe_block, pipe_dir;
  int pipe_m = 0, pipe_n = 0, pipe_k = 0;
  bool pipe_unchecked = false;
  IsoBudget pipe_budget;
  pipe->add_option("--family", pipe_family, "A, B, jnk3 or k2prefix");
  pipe->add_option("--m", pipe_m);
  pipe->add_option("--n", pipe_n);
  pipe->add_option("--k", pipe_k);
  pipe->add_flag("--unchecked", pipe_unchecked);
  pipe->add_option("--spec", pipe_spec, "n,k,{S}, with --block-file");
  pipe->add_option("--block-file", pipe_block, "partition JSON");
  pipe->add_option("--out-dir", pipe_dir, "write graphs, certificates and a manifest here");
  pipe->add_option("--max-nodes", pipe_budget.max_nodes);
  pipe->callback([&] {
    action = [&] {
      if (pipe_family.empty() == pipe_spec.empty()) throw usage_error("give exactly one of --family and --spec");
      if (!pipe_spec.empty() && pipe_block.empty()) throw usage_error("--spec needs --block-file");
      JohnsonSpec spec;
      std::optional<FamilyInstance> family;
      if (!pipe_family.empty()) {
        family = make_family(pipe_family, pipe_m, pipe_n, pipe_k, pipe_unchecked);
        spec = family->spec;
      } else {
        spec = parse_spec(pipe_spec);
      }
      manifest.spec(spec);
      const Graph g = manifest.stage("build", [&] { return build_johnson(spec); });
      const SwitchingPartition p = family ? family->partition : load_partition(pipe_block, g);
      const auto r = manifest.stage("validate", [&] { return validate_partition(g, p); });
      json j{{"spec", spec_to_json(spec)}, {"name", spec.name()}, {"validation", report_to_json(r)}};
      if (family) j["family"] = family_to_json(*family);
      if (!r.valid || !r.nontrivial) {
        j["verdict"] = r.valid ? "TRIVIAL_SWITCH" : "INVALID_PARTITION";
        print(j);
        return exit_negative;
      }
      const Graph h = manifest.stage("switch", [&] { return apply_switch(g, p, r); });
      const std::size_t w = workers_from(workers);
      const auto ca = manifest.stage("certificate", [&] { return spectral_certificate(g, default_primes, w); });
      const auto cb = manifest.stage("certificate", [&] { return spectral_certificate(h, default_primes, w); });
      const auto cv = compare_certificates(ca, cb);
      j["cospectral"] = to_string(cv);
      MateStatus status = MateStatus::not_computed;
      j["mate"] = mate_verdict(g, h, w, pipe_budget, status);
      j["graph6"] = {{"original", to_graph6(g)}, {"switched", to_graph6(h)}};
      if (!pipe_dir.empty()) {
        fs::create_directories(pipe_dir);
        const fs::path dir(pipe_dir);
        manifest.output((dir / "original.g6").string(), to_graph6(g) + "\n");
        manifest.output((dir / "switched.g6").string(), to_graph6(h) + "\n");
        manifest.output((dir / "partition.json").string(), partition_to_json(p).dump(2) + "\n");
        manifest.output((dir / "certificate.json").string(),
                        json{{"original", certificate_to_json(ca)}, {"switched", certificate_to_json(cb)}}.dump(2) + "\n");
        manifest.output((dir / "verdict.json").string(), j.dump(2) + "\n");
        if (manifest_path.empty()) manifest_path = (dir / "manifest.json").string();
      }
      print(j);
      return mate_exit(cv, status);
    };
  });

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "check the two size-8 switching sets of J_{2}(8,4)");
  std::string fix_dir;
  fix->add_option("--out-dir", fix_dir, "also write each block as partition JSON");
  fix->callback([&] {
    action = [&] {
      const auto report = manifest.stage("fixtures", [] { return verify_fixture_sets(); });
      manifest.spec(*report.graph.spec());
      json checks = json::array();
      for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        json blocks = json::array({json::array()});
        for (Vertex v : c.block) blocks[0].push_back(subset_to_json(report.graph.labels()[v]));
        checks.push_back({{"block", block_json(report.graph, c.block)},
                          {"valid", c.validation.valid},
                          {"nontrivial", c.validation.nontrivial},
                          {"induced_degrees", c.induced_degrees},
                          {"two_four_cycles", c.two_four_cycles},
                          {"six_regular", c.six_regular},
                          {"cospectral", to_string(c.cospectral)},
                          {"noniso", {{"verdict", c.noniso.distinguished ? "DISTINGUISHED" : "INCONCLUSIVE"},
                                      {"invariant", c.noniso.invariant}}}});
        if (!fix_dir.empty()) {
          fs::create_directories(fix_dir);
          const json file{{"spec", spec_to_json(*report.graph.spec())}, {"blocks", blocks}};
          manifest.output((fs::path(fix_dir) / ("j2_8_4_block" + std::to_string(i + 1) + ".json")).string(),
                          file.dump(2) + "\n");
        }
      }
      print({{"spec", spec_to_json(*report.graph.spec())}, {"checks", checks}});
      return exit_ok;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return exit_usage;
  }

  try {
    code = action();
  } catch (const budget_exceeded& e) {
    std::cerr << json{{"error", {{"kind", "budget"}, {"message", e.what()}}}}.dump() << "\n";
    return exit_budget;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "error"}, {"message", e.what()}}}}.dump() << "\n";
    return exit_usage;
  }
  if (!manifest_path.empty()) {
    manifest.parameter("exit_code", code);
    write_file(manifest_path, manifest.to_json().dump(2) + "\n");
  }
  return code;
}
