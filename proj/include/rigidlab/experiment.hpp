#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidlab/json_io.hpp"

namespace rigidlab {

inline constexpr const char* kToolVersion = "0.3.0";

/// Worker count for experiment cells: RIGIDLAB_THREADS if set and positive,
/// else the hardware concurrency.
unsigned experiment_threads();

struct ExperimentConfig {
  std::string name;  // thm_exact | thm_approx | thm_pseudo | expansion | scan
  std::vector<int> n_values;
  /// Empty means "derived": the largest d covered by the exact-threshold
  /// theorem for thm_exact; required for the other experiments.
  std::vector<int> d_values;
  int samples = 25;
  std::uint64_t seed = 1;
  int trials = 3;
  int retries = 64;
  /// G(n, p) starts at p = p_scale * min_degree / (n - 1) before repair.
  double p_scale = 1.0;
  int expansion_k = 600;
  int expansion_trials = 200;
  std::string output;  // optional; a JSON-lines log is written to output + ".jsonl"

  void validate() const;
};

ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& cfg);

/// Everything needed to re-run one failing check bit-for-bit.
struct FailingInstance {
  std::string checker;  // "rigidity", "exact_pipeline", "pseudo", "expansion"
  Graph graph;
  int d = 0;
  std::uint64_t seed = 0;
  int trials = 0;  // rank trials, or retries for the colouring checkers
  int k = 0;       // expansion subset size
  Json outcome;
};

Json to_json(const FailingInstance& f);
FailingInstance failing_instance_from_json(const Json& j);
/// Re-runs the recorded checker and returns its outcome JSON.
Json replay(const FailingInstance& f);

struct CellResult {
  int n = 0;
  int d = 0;
  int samples = 0;
  int passed = 0;
  int failed = 0;
  bool skipped = false;
  std::string notice;
  Json details = Json::object();
  std::vector<FailingInstance> failures;
};

Json to_json(const CellResult& c);

struct Report {
  Json config;
  std::vector<CellResult> cells;
  double wall_time_seconds = 0.0;
  std::string tool_version = kToolVersion;
  std::uint64_t master_seed = 0;

  int total_failures() const;
  int exit_code() const { return total_failures() == 0 ? 0 : 1; }
};

Json to_json(const Report& r);

/// Runs a named theorem experiment over the configured cells. Per-sample
/// seeds are derived from (master seed, cell index, sample index).
Report run_experiment(const ExperimentConfig& cfg);

struct ScanConfig {
  int n_min = 4;
  int n_max = 10;
  int d_min = 1;
  int d_max = 3;
  int samples = 10;
  std::uint64_t seed = 1;
  int trials = 3;
  std::string output;
};

/// ceil(max{(n+d)/2 - 1, 2d - d(d+1)/n}), computed in integers.
int conjecture_min_degree(int n, int d);

/// Samples graphs at the conjectured minimum degree and tests d-rigidity.
/// Non-certified instances are escalated (more trials, then the exact
/// rational oracle when n*d <= 64) and reported as counterexample candidates.
Report conjecture_scan(const ScanConfig& cfg);

struct CurveRow {
  int delta = 0;
  int d_conn = 0;
  int d_edge = 0;
  int d_star = 0;
};

struct ConjectureCurve {
  int n = 0;
  std::vector<CurveRow> rows;
  double crossing_delta = 0.0;  // (3n - 6) / 4
};

/// For each delta in [0, n-1]: the largest d allowed by the connectivity
/// bound (n+d)/2 - 1 <= delta, by the edge bound 2d - d(d+1)/n <= delta, and
/// their minimum.
ConjectureCurve emit_conjecture_curve(int n);
std::string curve_csv(const ConjectureCurve& curve);

}  // namespace rigidlab
