#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rigidlab/errors.hpp"
#include "rigidlab/experiment.hpp"
#include "rigidlab/json_io.hpp"

using namespace rigidlab;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitProperty = 1;
constexpr int kExitUsage = 2;

struct GraphInput {
  std::string path;
  std::string format = "edgelist";

  void attach(CLI::App* app) {
    app->add_option("graphfile", path, "graph file (edge list or JSON)")->required();
    app->add_option("--format", format, "edgelist | json")->check(CLI::IsMember({"edgelist", "json"}));
  }
  Graph load() const { return read_graph_file(path, parse_format_name(format)); }
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

// Consecutive id blocks of the given sizes.
std::vector<VertexSet> blocks(const std::vector<int>& sizes, int n) {
  std::vector<VertexSet> sides;
  int next = 0;
  for (int s : sizes) {
    if (s < 1) throw ParameterError("side sizes must be positive");
    VertexSet side(s);
    std::iota(side.begin(), side.end(), next);
    next += s;
    sides.push_back(std::move(side));
  }
  if (next != n) throw ParameterError("side sizes must sum to n");
  return sides;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigidity: generic rigidity and partition experiments"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int code = kExitClean;

  // check
  GraphInput check_in;
  int check_d = 2, check_trials = 3;
  std::uint64_t check_prime = kMersenne61, check_seed = 0;
  auto* check = app.add_subcommand("check", "certify d-rigidity by rigidity-matrix rank");
  check_in.attach(check);
  check->add_option("--d", check_d)->required();
  check->add_option("--trials", check_trials);
  check->add_option("--prime", check_prime);
  check->add_option("--seed", check_seed);
  check->callback([&] {
    auto v = is_d_rigid(check_in.load(), check_d, check_trials, check_prime, check_seed);
    emit(to_json(v));
    if (!v.certified()) code = kExitProperty;
  });

  // gsigma
  GraphInput gs_in;
  int gs_d = 2;
  std::size_t gs_perms = 100;
  std::uint64_t gs_seed = 0;
  auto* gsigma = app.add_subcommand("gsigma", "audit |E_sigma| against d*n - C(d+1,2)");
  gs_in.attach(gsigma);
  gsigma->add_option("--d", gs_d)->required();
  gsigma->add_option("--perms", gs_perms);
  gsigma->add_option("--seed", gs_seed);
  gsigma->callback([&] {
    auto audit = audit_gsigma_bound(gs_in.load(), gs_d, gs_perms, gs_seed);
    Json rows = Json::array();
    bool violated = false;
    for (const auto& row : audit.rows) {
      rows.push_back(to_json(row));
      violated = violated || row.violated;
    }
    emit(rows);
    if (violated) code = kExitProperty;
  });

  // exact-pipeline
  GraphInput ep_in;
  int ep_d = 1;
  ExactPipelineOptions ep_opts;
  auto* exact = app.add_subcommand("exact-pipeline", "closure, simplicial vertex and clique absorption");
  ep_in.attach(exact);
  exact->add_option("--d", ep_d)->required();
  exact->add_option("--seed", ep_opts.seed);
  exact->add_option("--trials", ep_opts.rigidity_trials);
  exact->callback([&] {
    auto trace = theorem_exact_pipeline(ep_in.load(), ep_d, ep_opts);
    emit(to_json(trace));
    if (trace.flagged || trace.closure_violation) code = kExitProperty;
  });

  // partition
  GraphInput part_in;
  std::string part_mode = "bipartite";
  int part_d = 2, part_retries = 32;
  double part_beta = 0.01;
  std::uint64_t part_seed = 0;
  std::vector<int> part_sides;
  std::string part_csv;
  auto* partition = app.add_subcommand("partition", "find a strong d-rigid partition");
  part_in.attach(partition);
  partition->add_option("--mode", part_mode)->check(CLI::IsMember({"bipartite", "tripartite"}));
  partition->add_option("--d", part_d)->required();
  partition->add_option("--seed", part_seed);
  partition->add_option("--retries", part_retries);
  partition->add_option("--beta", part_beta);
  partition->add_option("--sides", part_sides, "tripartite side sizes, ids in consecutive blocks")->delimiter(',');
  partition->add_option("--csv", part_csv, "write the colouring as vertex,class CSV");
  partition->callback([&] {
    Graph g = part_in.load();
    Json out;
    PartitionAttempt attempt;
    if (part_mode == "bipartite") {
      auto r = close_bipartite_partition(g, part_d, part_beta, part_seed, part_retries);
      attempt = r.outcome;
      out["refinement"] = to_json(r.refinement);
    } else {
      if (part_sides.size() != 3) throw ParameterError("--sides needs three sizes");
      attempt = tripartite_partition(g, blocks(part_sides, g.n()), part_d, part_seed, part_retries);
    }
    out["attempts"] = attempt.attempts;
    if (attempt.certificate) {
      out["certificate"] = to_json(*attempt.certificate);
      if (!part_csv.empty()) write_text(part_csv, coloring_csv(attempt.certificate->partition));
    } else {
      out["failure"] = attempt.failure;
      code = kExitProperty;
    }
    emit(out);
  });

  // pseudo
  GraphInput ps_in;
  int ps_d = 2, ps_retries = 64;
  std::uint64_t ps_seed = 0;
  bool ps_exact = false;
  std::string ps_csv;
  auto* pseudo = app.add_subcommand("pseudo", "search for a pseudocomplete (d+1)-colouring");
  ps_in.attach(pseudo);
  pseudo->add_option("--d", ps_d)->required();
  pseudo->add_option("--retries", ps_retries);
  pseudo->add_option("--seed", ps_seed);
  pseudo->add_flag("--exact", ps_exact, "also compute the exact value by exhaustive search");
  pseudo->add_option("--csv", ps_csv);
  pseudo->callback([&] {
    Graph g = ps_in.load();
    auto r = pseudoachromatic_lower_bound(g, ps_d, ps_retries, ps_seed);
    Json out = {{"found", r.coloring.has_value()}, {"attempts", r.attempts}, {"classes", ps_d + 1}};
    if (r.coloring) {
      out["coloring"] = to_json(*r.coloring);
      if (!ps_csv.empty()) write_text(ps_csv, coloring_csv(*r.coloring));
    } else {
      code = kExitProperty;
    }
    if (ps_exact) out["pseudoachromatic"] = brute_force_pseudoachromatic(g);
    emit(out);
  });

  // expansion
  GraphInput ex_in;
  int ex_k = 600, ex_d = 4, ex_trials = 200;
  std::uint64_t ex_seed = 0;
  auto* expansion = app.add_subcommand("expansion", "random subset neighbourhood statistics");
  ex_in.attach(expansion);
  expansion->add_option("--K", ex_k)->required();
  expansion->add_option("--d", ex_d)->required();
  expansion->add_option("--trials", ex_trials);
  expansion->add_option("--seed", ex_seed);
  expansion->callback([&] { emit(to_json(expansion_trial(ex_in.load(), ex_k, ex_d, ex_trials, ex_seed))); });

  // regpair
  GraphInput rp_in;
  std::string rp_criterion = "regular";
  double rp_eps = 0.1, rp_delta = 0.1;
  int rp_samples = 2000;
  std::uint64_t rp_seed = 0;
  std::vector<int> rp_a, rp_b;
  auto* regpair = app.add_subcommand("regpair", "check a vertex pair (A, B) for regularity");
  rp_in.attach(regpair);
  regpair->add_option("--criterion", rp_criterion)->check(CLI::IsMember({"regular", "dense", "super"}));
  regpair->add_option("--eps", rp_eps)->required();
  regpair->add_option("--delta", rp_delta)->required();
  regpair->add_option("--samples", rp_samples);
  regpair->add_option("--seed", rp_seed);
  regpair->add_option("--A", rp_a)->required()->delimiter(',');
  regpair->add_option("--B", rp_b)->required()->delimiter(',');
  regpair->callback([&] {
    Graph g = rp_in.load();
    auto v = check_pair(g, make_vertex_set(rp_a), make_vertex_set(rp_b), rp_eps, rp_delta,
                        parse_criterion(rp_criterion), rp_samples, rp_seed);
    emit(to_json(v));
    if (v.outcome == PairOutcome::fail) code = kExitProperty;
  });

  // experiment
  std::string exp_name, exp_config, exp_output;
  auto* experiment = app.add_subcommand("experiment", "run a named experiment from a JSON config");
  experiment->add_option("--name", exp_name)
      ->required()
      ->check(CLI::IsMember({"thm_exact", "thm_approx", "thm_pseudo", "expansion"}));
  experiment->add_option("--config", exp_config)->required()->check(CLI::ExistingFile);
  experiment->add_option("--out", exp_output, "report path (overrides the config)");
  experiment->callback([&] {
    std::ifstream in(exp_config);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParameterError("experiment config must be a JSON object");
    j["name"] = exp_name;
    auto cfg = config_from_json(j);
    if (!exp_output.empty()) cfg.output = exp_output;
    auto report = run_experiment(cfg);
    emit(to_json(report));
    code = report.exit_code();
  });

  // replay
  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a serialized failing instance");
  replay_cmd->add_option("instance", replay_path)->required()->check(CLI::ExistingFile);
  replay_cmd->callback([&] {
    std::ifstream in(replay_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError(std::string("instance is not valid JSON: ") + e.what());
    }
    Json r = replay(failing_instance_from_json(j));
    emit(r);
    if (!r["pass"].get<bool>()) code = kExitProperty;
  });

  // scan
  ScanConfig scan_cfg;
  auto* scan = app.add_subcommand("scan", "sample graphs at the conjectured minimum degree");
  scan->add_option("--n-min", scan_cfg.n_min);
  scan->add_option("--n-max", scan_cfg.n_max);
  scan->add_option("--d-min", scan_cfg.d_min);
  scan->add_option("--d-max", scan_cfg.d_max);
  scan->add_option("--samples", scan_cfg.samples);
  scan->add_option("--seed", scan_cfg.seed);
  scan->add_option("--trials", scan_cfg.trials);
  scan->add_option("--out", scan_cfg.output);
  scan->callback([&] {
    auto report = conjecture_scan(scan_cfg);
    emit(to_json(report));
    code = report.exit_code();
  });

  // curve
  int curve_n = 100;
  std::string curve_out;
  auto* curve = app.add_subcommand("curve", "emit the two minimum-degree bound curves as CSV");
  curve->add_option("--n", curve_n)->required();
  curve->add_option("--out", curve_out);
  curve->callback([&] {
    std::string csv = curve_csv(emit_conjecture_curve(curve_n));
    if (curve_out.empty())
      std::cout << csv;
    else
      write_text(curve_out, csv);
  });

  // generate
  std::string gen_family;
  std::vector<int> gen_sizes;
  int gen_overlap = 0, gen_min_degree = 0, gen_degree = 0;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_format = "edgelist";
  auto* gen = app.add_subcommand("generate", "write a graph from a named family");
  gen->add_option("--family", gen_family)->required();
  gen->add_option("--sizes", gen_sizes)->required()->delimiter(',');
  gen->add_option("--overlap", gen_overlap);
  gen->add_option("--min-degree", gen_min_degree);
  gen->add_option("--degree", gen_degree);
  gen->add_option("--p", gen_p);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"edgelist", "json"}));
  gen->callback([&] {
    FamilySpec spec;
    spec.family = parse_family_name(gen_family);
    spec.sizes = gen_sizes;
    spec.overlap = gen_overlap;
    spec.min_degree = gen_min_degree;
    spec.degree = gen_degree;
    spec.p = gen_p;
    spec.seed = gen_seed;
    Graph g = generate(spec);
    std::cout << (gen_format == "json" ? to_json_text(g) : to_edge_list(g));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitClean : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}
