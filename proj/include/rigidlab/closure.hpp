#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/prime_field.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

bool is_clique(const Graph& g, std::span<const Vertex> set);

/// A vertex whose neighbourhood induces a clique. Vertices are scanned by
/// ascending degree, ties by id.
std::optional<Vertex> find_simplicial_vertex(const Graph& g);

enum class SigmaRule { all, first_d, nonclique_d_plus_1 };
std::string_view sigma_rule_name(SigmaRule r);

struct SigmaVertexRecord {
  Vertex vertex = 0;
  VertexSet earlier_neighbors;  // N_sigma(v)
  int earlier_degree = 0;       // deg_sigma(v)
  SigmaRule rule = SigmaRule::all;
  VertexSet chosen;
};

/// sigma[v] is the position of vertex v in the processing order.
struct GSigmaTrace {
  std::vector<int> sigma;
  std::vector<SigmaVertexRecord> records;  // indexed by vertex id
  Graph g_sigma;
  std::size_t edge_total = 0;
};

/// Builds G_sigma. "First d" means the d smallest sigma-values; for a
/// non-clique N_sigma(v) the chosen set is the sigma-lexicographically first
/// non-adjacent pair plus the d-1 earliest remaining vertices.
GSigmaTrace build_g_sigma(const Graph& g, std::span<const int> sigma, int d);

struct GSigmaAuditRow {
  std::size_t sigma_index = 0;
  std::size_t edge_total = 0;
  std::size_t bound = 0;
  bool violated = false;
};

struct GSigmaAudit {
  Graph closure;
  std::size_t bound = 0;
  std::size_t max_edge_total = 0;
  std::size_t violations = 0;
  std::vector<GSigmaAuditRow> rows;
};

/// Computes the d-closure of G, then records |E_sigma| against
/// d*n - C(d+1, 2) for `num_perms` random permutations.
GSigmaAudit audit_gsigma_bound(const Graph& g, int d, std::size_t num_perms, std::uint64_t seed,
                               int closure_trials = 2);
/// Same audit on a graph the caller already knows to be d-closed.
GSigmaAudit audit_gsigma_on_closed(const Graph& closed, int d, std::size_t num_perms, std::uint64_t seed);

enum class DpuzVertexState { ok, neighborhood_is_clique, large_intersection, cap_exceeded };
std::string_view dpuz_state_name(DpuzVertexState s);

struct DpuzVertexReport {
  Vertex vertex = 0;
  DpuzVertexState state = DpuzVertexState::ok;
  std::size_t maximal_cliques = 0;
  std::size_t max_intersection = 0;
};

struct DpuzReport {
  int d = 0;
  bool min_degree_ok = false;        // delta(G) >= d(d+1)
  bool no_clique_neighborhood = true;  // condition (a)
  bool small_intersections = true;     // condition (b)
  std::size_t capped_vertices = 0;
  std::vector<DpuzVertexReport> vertices;

  bool hypotheses_hold() const {
    return min_degree_ok && no_clique_neighborhood && small_intersections && capped_vertices == 0;
  }
};

inline constexpr std::size_t kDefaultCliqueCap = 10000;

/// Maximal cliques of G[vertices] (Bron-Kerbosch with pivoting). Returns
/// nullopt when more than `cap` cliques exist.
std::optional<std::vector<VertexSet>> maximal_cliques_within(const Graph& g, std::span<const Vertex> vertices,
                                                             std::size_t cap);

DpuzReport check_dpuz_hypotheses(const Graph& g, int d, std::size_t per_vertex_clique_cap = kDefaultCliqueCap);

struct AbsorptionResult {
  VertexSet final_set;
  std::vector<Vertex> order;
  bool complete = false;
};

/// Grows the clique S inside a d-closed graph: any v with deg(v, S) >= d must
/// be adjacent to all of S and joins it. Throws ClosureViolation otherwise.
AbsorptionResult absorb_clique(const Graph& closed, int d, std::span<const Vertex> clique);

struct ExactPipelineOptions {
  int closure_trials = 2;
  int rigidity_trials = 3;
  std::uint64_t prime = kMersenne61;
  std::uint64_t seed = 0;
};

struct ExactPipelineTrace {
  int n = 0;
  int d = 0;
  int min_degree = 0;
  bool hypotheses_hold = false;  // delta >= ceil((n+d)/2 - 1) and d <= (sqrt(8n-15)-1)/4
  std::size_t closure_edges = 0;
  double closure_error_bound = 0.0;
  std::optional<Vertex> simplicial_vertex;
  VertexSet clique;
  std::vector<Vertex> absorption_order;
  std::size_t final_clique_size = 0;
  bool complete = false;
  bool closure_violation = false;
  std::string closure_violation_detail;
  RigidityVerdict cross_check;
  /// The hypotheses hold but the pipeline or the cross-check did not confirm rigidity.
  bool flagged = false;

  std::string verdict() const { return complete ? "complete" : "incomplete"; }
};

/// Largest d with d <= (sqrt(8n - 15) - 1) / 4, computed in integers.
int exact_theorem_max_d(int n);
/// ceil((n + d)/2 - 1) = ceil((n + d - 2) / 2).
int exact_theorem_min_degree(int n, int d);

ExactPipelineTrace theorem_exact_pipeline(const Graph& g, int d, const ExactPipelineOptions& opts = {});

}  // namespace rigidlab
