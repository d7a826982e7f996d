#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Total vertex colouring with classes 0..k-1 (classes may be empty).
struct Coloring {
  int k = 0;
  std::vector<int> assignment;

  std::vector<VertexSet> classes() const;
  /// A colouring whose classes are all nonempty.
  bool is_partition() const;
};

Coloring coloring_from_classes(int n, const std::vector<VertexSet>& classes);

struct PseudocompleteCheck {
  bool pseudocomplete = false;
  std::vector<std::pair<int, int>> missing_pairs;
};

/// True iff every pair of distinct classes is joined by an edge.
PseudocompleteCheck verify_pseudocomplete(const Graph& g, const Coloring& c);

struct PairConnectivity {
  int i = 0;
  int j = 0;
  bool connected = false;
};

struct StrongPartitionCertificate {
  Coloring partition;
  std::vector<PairConnectivity> verified_pairs;  // all i <= j
  bool overall = false;
  std::string diagnostic;
};

/// Checks that G[V_i, V_j] is connected for every i <= j. An empty class
/// yields overall = false with a diagnostic.
StrongPartitionCertificate verify_strong_partition(const Graph& g, const Coloring& p);

// ---------------------------------------------------------------------------
// Random colourings with per-vertex class guarantees

struct ColoringDistribution {
  int d = 0;
  double degree_threshold = 0.0;  // 5 d ln n
  VertexSet high_degree;          // L
  int ell = 0;                    // min(|L|, d)
  int d_prime = 0;                // d - ell
  VertexSet pinned;               // L', the ell lowest ids of L
  std::vector<double> q;          // d + 1 class probabilities

  bool satisfies_vector_q_claims() const;
};

ColoringDistribution build_coloring_distribution(const Graph& g, int d);

struct RandomColoringSample {
  Coloring coloring;  // d + 1 classes
  ColoringDistribution distribution;
  bool hypothesis_warning = false;  // delta(G) < d
};

/// Free vertices are coloured i.i.d. by q; pinned vertex i goes to class i.
RandomColoringSample sample_randomcol(const Graph& g, int d, std::uint64_t seed);

struct PseudoachromaticResult {
  std::optional<Coloring> coloring;
  int attempts = 0;
};

/// Retries sample_randomcol until a pseudocomplete (d+1)-colouring appears.
PseudoachromaticResult pseudoachromatic_lower_bound(const Graph& g, int d, int retries, std::uint64_t seed);

inline constexpr int kBruteForcePseudoachromaticCap = 14;

/// Exact pseudoachromatic number by exhaustive search over set partitions
/// (with branch-and-bound). Throws CapacityError when n exceeds the cap.
int brute_force_pseudoachromatic(const Graph& g, int max_n = kBruteForcePseudoachromaticCap);

// ---------------------------------------------------------------------------
// Near-bipartite pipeline

struct BetaFamily {
  double beta = 0.01;
  double beta_prime = 0.0;   // 4 beta
  double beta_circ = 0.0;    // sqrt(2 beta)
  double beta_0 = 0.0;       // beta + 2 beta_circ
  double beta_1 = 0.0;       // beta' + 2 beta_circ
  double beta_star = 0.0;    // sqrt(2 beta_0)

  static BetaFamily from_beta(double beta);
};

struct BipartiteRefinementState {
  VertexSet original_a;
  VertexSet original_b;
  BetaFamily betas;
  std::vector<Vertex> moves;
  std::size_t move_cap = 0;
  bool cap_hit = false;
  VertexSet a;  // A'
  VertexSet b;  // B'
  VertexSet exceptional_a;  // A*
  VertexSet exceptional_b;  // B*
  /// Paper-style budget 2 beta_circ n; exceeding it is reported, not enforced.
  double move_budget = 0.0;
};

BipartiteRefinementState refine_bipartition(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                                            std::size_t move_cap, double beta = 0.01);

struct PartitionAttempt {
  std::optional<StrongPartitionCertificate> certificate;
  int attempts = 0;
  std::string failure;  // set when no certificate is returned
};

struct CloseBipartiteResult {
  PartitionAttempt outcome;
  BipartiteRefinementState refinement;
  bool larger_side_is_a = true;
};

CloseBipartiteResult close_bipartite_partition(const Graph& g, int d, double beta, std::uint64_t seed,
                                               int retries = 32);

/// Uniform random d-colouring of V, verified, retried.
PartitionAttempt tripartite_partition(const Graph& g, const std::vector<VertexSet>& sides, int d,
                                      std::uint64_t seed, int retries = 32);

// ---------------------------------------------------------------------------
// Expansion of random K-subsets

struct ExpansionStats {
  int n = 0;
  int k = 0;
  int d = 0;
  int trials = 0;
  int success_count = 0;         // |N_G(U)| >= dK/3
  int digraph_success_count = 0;  // |N_D(U)| >= dK/3 (implies the above)
  double empirical_rate = 0.0;
  double paper_bound = 0.0;  // 1 - 2 exp(-K/288)
  bool hypothesis_ok = false;  // d <= delta(G) and Delta(G) <= n/(4K)
  std::vector<std::vector<Vertex>> out_edges;  // F_v as out-neighbour lists
  double mean_neighborhood = 0.0;
};

ExpansionStats expansion_trial(const Graph& g, int k, int d, int trials, std::uint64_t seed);

/// External neighbourhood N(U) = vertices outside U with a neighbour in U.
VertexSet external_neighborhood(const Graph& g, std::span<const Vertex> u);

}  // namespace rigidlab
