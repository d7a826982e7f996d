#include "rigidlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

unsigned experiment_threads() {
  if (const char* env = std::getenv("RIGIDLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void parallel_for(int count, const std::function<void(int)>& body) {
  unsigned workers = std::min<unsigned>(experiment_threads(), static_cast<unsigned>(std::max(count, 1)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CheckOutcome {
  bool pass = false;
  Json outcome;
};

// Stated success probability minus two binomial standard deviations.
double expansion_tolerance_floor(double bound, int trials) {
  double sigma = std::sqrt(std::max(bound * (1.0 - bound), 0.0) / std::max(trials, 1));
  return bound - 2.0 * sigma;
}

CheckOutcome run_checker(const FailingInstance& f) {
  if (f.checker == "rigidity") {
    auto v = is_d_rigid(f.graph, f.d, f.trials, kMersenne61, f.seed);
    return {v.certified(), to_json(v)};
  }
  if (f.checker == "exact_pipeline") {
    ExactPipelineOptions opts;
    opts.rigidity_trials = f.trials;
    opts.seed = f.seed;
    auto t = theorem_exact_pipeline(f.graph, f.d, opts);
    return {t.complete && t.cross_check.certified() && !t.flagged, to_json(t)};
  }
  if (f.checker == "pseudo") {
    auto r = pseudoachromatic_lower_bound(f.graph, f.d, f.trials, f.seed);
    Json j = {{"found", r.coloring.has_value()}, {"attempts", r.attempts}, {"classes", f.d + 1}};
    if (r.coloring) j["coloring"] = to_json(*r.coloring);
    return {r.coloring.has_value(), j};
  }
  if (f.checker == "pseudo_exact") {
    int value = brute_force_pseudoachromatic(f.graph);
    return {value == f.d + 1, {{"pseudoachromatic", value}, {"expected", f.d + 1}}};
  }
  if (f.checker == "expansion") {
    auto st = expansion_trial(f.graph, f.k, f.d, f.trials, f.seed);
    double floor = expansion_tolerance_floor(st.paper_bound, st.trials);
    Json j = to_json(st);
    j["tolerance_floor"] = floor;
    return {st.hypothesis_ok && st.empirical_rate >= floor, j};
  }
  throw ParameterError("unknown checker: " + f.checker);
}

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

void ExperimentConfig::validate() const {
  static const std::vector<std::string> names = {"thm_exact", "thm_approx", "thm_pseudo", "expansion"};
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ParameterError("unknown experiment: " + name);
  if (n_values.empty()) throw ParameterError("n_values must not be empty");
  for (int n : n_values)
    if (n < 1) throw ParameterError("n values must be positive");
  if (d_values.empty() && name != "thm_exact") throw ParameterError("d_values required for " + name);
  for (int d : d_values)
    if (d < 1) throw ParameterError("d values must be positive");
  if (samples < 1) throw ParameterError("samples must be positive");
  if (trials < 1) throw ParameterError("trials must be positive");
  if (retries < 1) throw ParameterError("retries must be positive");
  if (!(p_scale > 0.0)) throw ParameterError("p_scale must be positive");
  if (expansion_k < 1 || expansion_trials < 1) throw ParameterError("expansion parameters must be positive");
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("experiment config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.name = j.at("name").get<std::string>();
    cfg.n_values = j.at("n_values").get<std::vector<int>>();
    cfg.d_values = j.value("d_values", std::vector<int>{});
    cfg.samples = j.value("samples", cfg.samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.retries = j.value("retries", cfg.retries);
    cfg.p_scale = j.value("p_scale", cfg.p_scale);
    cfg.expansion_k = j.value("expansion_k", cfg.expansion_k);
    cfg.expansion_trials = j.value("expansion_trials", cfg.expansion_trials);
    cfg.output = j.value("output", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  return {{"name", cfg.name},
          {"n_values", cfg.n_values},
          {"d_values", cfg.d_values},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"trials", cfg.trials},
          {"retries", cfg.retries},
          {"p_scale", cfg.p_scale},
          {"expansion_k", cfg.expansion_k},
          {"expansion_trials", cfg.expansion_trials},
          {"output", cfg.output}};
}

Json to_json(const FailingInstance& f) {
  return {{"checker", f.checker}, {"graph", graph_to_json(f.graph)},
          {"d", f.d},             {"seed", f.seed},
          {"trials", f.trials},   {"k", f.k},
          {"outcome", f.outcome}};
}

FailingInstance failing_instance_from_json(const Json& j) {
  FailingInstance f;
  try {
    f.checker = j.at("checker").get<std::string>();
    f.graph = graph_from_json(j.at("graph"));
    f.d = j.at("d").get<int>();
    f.seed = j.at("seed").get<std::uint64_t>();
    f.trials = j.at("trials").get<int>();
    f.k = j.value("k", 0);
    f.outcome = j.value("outcome", Json());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad failing instance: ") + e.what());
  }
  return f;
}

Json replay(const FailingInstance& f) {
  auto r = run_checker(f);
  return {{"checker", f.checker}, {"pass", r.pass}, {"outcome", r.outcome}};
}

Json to_json(const CellResult& c) {
  Json failures = Json::array();
  for (const auto& f : c.failures) failures.push_back(to_json(f));
  Json j = {{"n", c.n},           {"d", c.d},           {"samples", c.samples}, {"passed", c.passed},
            {"failed", c.failed}, {"skipped", c.skipped}, {"details", c.details}, {"failures", failures}};
  if (!c.notice.empty()) j["notice"] = c.notice;
  return j;
}

int Report::total_failures() const {
  int total = 0;
  for (const auto& c : cells) total += c.failed;
  return total;
}

Json to_json(const Report& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return {{"config", r.config},
          {"cells", cells},
          {"wall_time_seconds", r.wall_time_seconds},
          {"tool_version", r.tool_version},
          {"master_seed", r.master_seed},
          {"total_failures", r.total_failures()}};
}

namespace {

class JsonLinesLog {
 public:
  explicit JsonLinesLog(const std::string& output) {
    if (!output.empty()) out_.open(output + ".jsonl", std::ios::app);
  }
  void write(const Json& j) {
    if (out_) out_ << j.dump() << '\n' << std::flush;
  }

 private:
  std::ofstream out_;
};

void write_report(const Report& r, const std::string& output) {
  if (output.empty()) return;
  std::ofstream out(output);
  if (!out) throw ParameterError("cannot write " + output);
  out << to_json(r).dump(2) << '\n';
}

struct SampleResult {
  bool pass = true;
  std::optional<FailingInstance> failure;
  Json summary;
};

// Runs `samples` independent instances and folds them into the cell.
void run_samples(CellResult& cell, int samples, const std::function<SampleResult(int)>& one) {
  std::vector<SampleResult> results(samples);
  parallel_for(samples, [&](int s) { results[s] = one(s); });
  Json per_sample = Json::array();
  for (auto& r : results) {
    ++cell.samples;
    if (r.pass) {
      ++cell.passed;
    } else {
      ++cell.failed;
      if (r.failure) cell.failures.push_back(std::move(*r.failure));
    }
    per_sample.push_back(std::move(r.summary));
  }
  cell.details["samples"] = std::move(per_sample);
}

SampleResult check_one(FailingInstance inst) {
  auto r = run_checker(inst);
  SampleResult s;
  s.pass = r.pass;
  s.summary = {{"seed", inst.seed}, {"pass", r.pass}};
  if (inst.checker == "rigidity") s.summary["rank"] = r.outcome["rank"];
  if (inst.checker == "exact_pipeline") s.summary["verdict"] = r.outcome["verdict"];
  if (!r.pass) {
    inst.outcome = r.outcome;
    s.failure = std::move(inst);
  }
  return s;
}

void assert_hypothesis(const Graph& g, int min_degree) {
  if (g.min_degree() < min_degree)
    throw std::logic_error("generated graph misses the minimum degree hypothesis");
}

Graph min_degree_graph(int n, int delta, double p_scale, std::uint64_t seed) {
  double p = n > 1 ? std::clamp(p_scale * delta / (n - 1), 0.0, 1.0) : 0.0;
  return generate(FamilySpec::min_degree_random(n, delta, p, seed));
}

CellResult min_degree_cell(const ExperimentConfig& cfg, int cell_index, int n, int d, int delta,
                           const std::string& checker) {
  CellResult cell;
  cell.n = n;
  cell.d = d;
  cell.details["min_degree"] = delta;
  if (n <= d) {
    cell.skipped = true;
    cell.notice = "n must exceed d";
    return cell;
  }
  if (delta > n - 1) {
    cell.skipped = true;
    cell.notice = "minimum degree exceeds n - 1";
    return cell;
  }
  run_samples(cell, cfg.samples, [&](int s) {
    auto ci = static_cast<std::uint64_t>(cell_index);
    auto si = static_cast<std::uint64_t>(s);
    Graph g = min_degree_graph(n, delta, cfg.p_scale, derive_seed(cfg.seed, {ci, si, 0}));
    assert_hypothesis(g, delta);
    return check_one({checker, std::move(g), d, derive_seed(cfg.seed, {ci, si, 1}), cfg.trials, 0, {}});
  });
  return cell;
}

CellResult pseudo_cell(const ExperimentConfig& cfg, int cell_index, int n, int d) {
  CellResult cell;
  cell.n = n;
  cell.d = d;
  Graph g = generate(FamilySpec::complete_bipartite(d, n));
  cell.details["graph"] = "K_{" + std::to_string(d) + "," + std::to_string(n) + "}";
  if (g.min_degree() < d) {
    cell.skipped = true;
    cell.notice = "minimum degree below d";
    return cell;
  }
  run_samples(cell, cfg.samples, [&](int s) {
    auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(cell_index), static_cast<std::uint64_t>(s)});
    return check_one({"pseudo", g, d, seed, cfg.retries, 0, {}});
  });
  if (g.n() <= kBruteForcePseudoachromaticCap) {
    auto exact = check_one({"pseudo_exact", g, d, 0, 0, 0, {}});
    cell.details["brute_force"] = exact.summary;
    ++cell.samples;
    if (exact.pass) {
      ++cell.passed;
    } else {
      ++cell.failed;
      cell.failures.push_back(std::move(*exact.failure));
    }
  } else {
    cell.details["brute_force"] = "skipped: graph too large";
  }
  return cell;
}

CellResult expansion_cell(const ExperimentConfig& cfg, int cell_index, int n, int d) {
  CellResult cell;
  cell.n = n;
  cell.d = d;
  if (n <= d || (n * d) % 2 != 0) {
    cell.skipped = true;
    cell.notice = "no d-regular graph on n vertices";
    return cell;
  }
  if (4LL * cfg.expansion_k * d > n) {
    cell.skipped = true;
    cell.notice = "maximum degree exceeds n / (4K)";
    return cell;
  }
  auto ci = static_cast<std::uint64_t>(cell_index);
  run_samples(cell, cfg.samples, [&](int s) {
    auto si = static_cast<std::uint64_t>(s);
    Graph g = generate(FamilySpec::random_regular(n, d, derive_seed(cfg.seed, {ci, si, 0})));
    auto r = check_one({"expansion", std::move(g), d, derive_seed(cfg.seed, {ci, si, 1}), cfg.expansion_trials,
                        cfg.expansion_k, {}});
    return r;
  });
  return cell;
}

}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = to_json(cfg);
  report.master_seed = cfg.seed;
  JsonLinesLog log(cfg.output);
  log.write({{"event", "start"}, {"config", report.config}, {"tool_version", kToolVersion}});

  int cell_index = 0;
  for (int n : cfg.n_values) {
    std::vector<int> ds = cfg.d_values;
    if (ds.empty()) ds = {exact_theorem_max_d(n)};
    for (int d : ds) {
      CellResult cell;
      if (d < 1) {
        cell.n = n;
        cell.d = d;
        cell.skipped = true;
        cell.notice = "no d covered for this n";
      } else if (cfg.name == "thm_exact") {
        cell = min_degree_cell(cfg, cell_index, n, d, exact_theorem_min_degree(n, d), "exact_pipeline");
        if (d > exact_theorem_max_d(n)) cell.notice = "d outside the covered range";
      } else if (cfg.name == "thm_approx") {
        cell = min_degree_cell(cfg, cell_index, n, d, ceil_div(n + 2 * d - 2, 2), "rigidity");
      } else if (cfg.name == "thm_pseudo") {
        cell = pseudo_cell(cfg, cell_index, n, d);
      } else {
        cell = expansion_cell(cfg, cell_index, n, d);
      }
      log.write({{"event", "cell"}, {"cell", to_json(cell)}});
      report.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log.write({{"event", "done"}, {"total_failures", report.total_failures()},
             {"wall_time_seconds", report.wall_time_seconds}});
  write_report(report, cfg.output);
  return report;
}

int conjecture_min_degree(int n, int d) {
  if (n < 1) throw ParameterError("n must be positive");
  // (n+d)/2 - 1 rounded up.
  int conn = ceil_div(n + d - 2, 2);
  // 2d - d(d+1)/n rounded up: (2dn - d(d+1)) / n.
  int edge = ceil_div(2 * d * n - d * (d + 1), n);
  return std::max(conn, edge);
}

Report conjecture_scan(const ScanConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.d_min < 1 || cfg.d_max < cfg.d_min)
    throw ParameterError("empty scan range");
  if (cfg.samples < 1 || cfg.trials < 1) throw ParameterError("samples and trials must be positive");
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = {{"name", "scan"},        {"n_min", cfg.n_min},     {"n_max", cfg.n_max},
                   {"d_min", cfg.d_min},    {"d_max", cfg.d_max},     {"samples", cfg.samples},
                   {"seed", cfg.seed},      {"trials", cfg.trials},   {"output", cfg.output}};
  report.master_seed = cfg.seed;
  JsonLinesLog log(cfg.output);
  log.write({{"event", "start"}, {"config", report.config}, {"tool_version", kToolVersion}});

  int cell_index = 0;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    for (int d = cfg.d_min; d <= cfg.d_max; ++d, ++cell_index) {
      CellResult cell;
      cell.n = n;
      cell.d = d;
      int delta = conjecture_min_degree(n, d);
      cell.details["min_degree"] = delta;
      cell.details["theorem_covered"] = d <= exact_theorem_max_d(n);
      if (n <= d) {
        cell.skipped = true;
        cell.notice = "n must exceed d";
      } else if (delta > n - 1) {
        cell.skipped = true;
        cell.notice = "minimum degree exceeds n - 1";
      } else {
        auto ci = static_cast<std::uint64_t>(cell_index);
        int escalated = 0;
        std::mutex m;
        run_samples(cell, cfg.samples, [&](int s) {
          auto si = static_cast<std::uint64_t>(s);
          Graph g = min_degree_graph(n, delta, 1.0, derive_seed(cfg.seed, {ci, si, 0}));
          assert_hypothesis(g, delta);
          auto first = check_one({"rigidity", g, d, derive_seed(cfg.seed, {ci, si, 1}), cfg.trials, 0, {}});
          if (first.pass) return first;
          {
            std::lock_guard lock(m);
            ++escalated;
          }
          // Escalation: many more random trials, then the exact oracle.
          auto retry = check_one({"rigidity", g, d, derive_seed(cfg.seed, {ci, si, 2}), cfg.trials * 8, 0, {}});
          retry.summary["escalation"] = "more_trials";
          if (retry.pass) return retry;
          if (n * d > 64) {
            retry.summary["escalation"] = "flag_for_human";
            if (retry.failure) retry.failure->outcome["status"] = "flag_for_human";
            return retry;
          }
          std::size_t target = rigidity_rank_bound(n, d);
          std::size_t best = 0;
          for (std::uint64_t t = 0; t < 3 && best < target; ++t)
            best = std::max(best, exact_rational_rank(g, d, derive_seed(cfg.seed, {ci, si, 3, t})));
          retry.summary["escalation"] = "exact";
          retry.summary["exact_rank"] = best;
          if (best == target) {
            retry.pass = true;
            retry.failure.reset();
          } else if (retry.failure) {
            retry.failure->outcome["status"] = "counterexample_candidate";
            retry.failure->outcome["exact_rank"] = best;
          }
          return retry;
        });
        cell.details["escalated"] = escalated;
      }
      log.write({{"event", "cell"}, {"cell", to_json(cell)}});
      report.cells.push_back(std::move(cell));
    }
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log.write({{"event", "done"}, {"total_failures", report.total_failures()}});
  write_report(report, cfg.output);
  return report;
}

ConjectureCurve emit_conjecture_curve(int n) {
  if (n < 2) throw ParameterError("n must be at least 2");
  ConjectureCurve curve;
  curve.n = n;
  curve.crossing_delta = (3.0 * n - 6.0) / 4.0;
  for (int delta = 0; delta <= n - 1; ++delta) {
    CurveRow row;
    row.delta = delta;
    row.d_conn = std::clamp(2 * delta + 2 - n, 0, n - 1);
    // 2dn - d(d+1) is increasing in d on [0, n-1].
    int d = 0;
    while (d + 1 <= n - 1 && 2LL * (d + 1) * n - 1LL * (d + 1) * (d + 2) <= 1LL * delta * n) ++d;
    row.d_edge = d;
    row.d_star = std::min(row.d_conn, row.d_edge);
    curve.rows.push_back(row);
  }
  return curve;
}

std::string curve_csv(const ConjectureCurve& curve) {
  std::ostringstream out;
  out << "delta,d_conn,d_edge,d_star\n";
  for (const auto& r : curve.rows) out << r.delta << ',' << r.d_conn << ',' << r.d_edge << ',' << r.d_star << '\n';
  return out.str();
}

}  // namespace rigidlab
