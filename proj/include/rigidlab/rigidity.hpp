#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rigidlab/graph.hpp"
#include "rigidlab/prime_field.hpp"

namespace rigidlab {

/// Smallest prime accepted for embeddings. Below this the Schwartz-Zippel
/// error bounds stop being informative.
inline constexpr std::uint64_t kMinEmbeddingPrime = std::uint64_t{1} << 20;

/// Maximum rank of a d-dimensional rigidity matrix on n vertices:
/// d*n - C(d+1, 2) when n >= d + 1, else C(n, 2).
std::size_t rigidity_rank_bound(int n, int d);

/// Random stand-in for a generic embedding: n*d i.i.d. uniform points of F_p.
struct Embedding {
  int d = 0;
  std::uint64_t prime = kMersenne61;
  std::vector<FieldElem> coords;  // row-major, n x d

  int n() const { return d == 0 ? 0 : static_cast<int>(coords.size() / d); }
  FieldElem coord(Vertex v, int i) const { return coords[static_cast<std::size_t>(v) * d + i]; }
};

Embedding sample_embedding(const Graph& g, int d, std::uint64_t prime, std::uint64_t seed);

/// |E| x (d*n) matrix; row r belongs to edges[r] = {u, v} and carries
/// p(u) - p(v) on u's column block and p(v) - p(u) on v's block.
struct RigidityMatrix {
  int d = 0;
  std::uint64_t prime = kMersenne61;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Edge> edges;
  std::vector<FieldElem> entries;  // row-major

  FieldElem at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  static std::size_t column(Vertex v, int i, int d) { return static_cast<std::size_t>(v) * d + i; }
};

RigidityMatrix build_rigidity_matrix(const Graph& g, const Embedding& emb);
std::size_t field_rank(const RigidityMatrix& m);

/// Row of the rigidity matrix for the pair {u, v}, which need not be an edge.
std::vector<FieldElem> rigidity_row(const PrimeField& field, const Embedding& emb, Vertex u, Vertex v);

/// Rank of R(G, p) computed row by row into `basis`, stopping once the rank
/// bound is reached.
std::size_t rank_at_embedding(const Graph& g, const Embedding& emb, RowBasis& basis);

struct GenericRank {
  std::size_t rank = 0;
  /// Upper bound on Pr[rank < generic rank].
  double error_bound = 0.0;
  int trials = 0;
};

/// Max of the rank over `trials` independent embeddings. Always a lower bound
/// on the generic rank; equal to it except with probability <= error_bound.
GenericRank generic_rank(const Graph& g, int d, int trials = 2, std::uint64_t prime = kMersenne61,
                         std::uint64_t seed = 0);

enum class Verdict { RigidCertified, ProbablyFlexible };
std::string_view verdict_name(Verdict v);

struct RigidityVerdict {
  int d = 0;
  int n = 0;
  std::size_t estimated_rank = 0;
  std::size_t target_rank = 0;
  Verdict verdict = Verdict::ProbablyFlexible;
  int trials = 0;
  double error_bound = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t prime = kMersenne61;

  bool certified() const { return verdict == Verdict::RigidCertified; }
};

/// Tries up to `trials` embeddings, stopping at the first that reaches the
/// target rank. RigidCertified is a proof; ProbablyFlexible carries the
/// probability that all attempts were unlucky. Throws DimensionError when
/// n <= d.
RigidityVerdict is_d_rigid(const Graph& g, int d, int trials = 3, std::uint64_t prime = kMersenne61,
                           std::uint64_t seed = 0);

struct ClosureResult {
  Graph closure;
  std::size_t rank = 0;
  int trials = 0;
  /// Trials whose rank equalled the maximum; membership is intersected over these.
  int trials_used = 0;
  std::size_t added_edges = 0;
  double error_bound = 0.0;
};

/// d-closure: G plus every non-edge whose rigidity row lies in the row space
/// of R(G, p) for every maximum-rank trial embedding.
ClosureResult compute_closure(const Graph& g, int d, int trials = 2, std::uint64_t prime = kMersenne61,
                              std::uint64_t seed = 0);
Graph d_closure(const Graph& g, int d, int trials = 2, std::uint64_t prime = kMersenne61, std::uint64_t seed = 0);
bool is_d_closed(const Graph& g, int d, int trials = 2, std::uint64_t prime = kMersenne61, std::uint64_t seed = 0);

/// Adds vertex v_new (which must equal G.n()) joined to the d vertices of S.
Graph zero_extension(const Graph& g, Vertex v_new, std::span<const Vertex> s, int d);

/// Some x outside A with deg(x, A) >= d, preferring the largest deg(x, A)
/// and then the smallest id. Throws DomainError when A = V.
std::optional<Vertex> find_dense_attachment(const Graph& g, std::span<const Vertex> a, int d);

struct GrowthResult {
  VertexSet rigid_set;
  std::vector<Vertex> attachment_order;
  RigidityVerdict seed_verdict;
  bool spans_graph = false;
};

/// Starting from a certified d-rigid G[seed], absorbs vertices with at least
/// d neighbours in the current set. Every intermediate G[A] is d-rigid by
/// 0-extension, so spans_graph == true means G itself is d-rigid.
GrowthResult greedy_rigid_growth(const Graph& g, int d, std::span<const Vertex> seed_set, int trials = 3,
                                 std::uint64_t prime = kMersenne61, std::uint64_t seed = 0);

/// Rank of R(G, p) over the rationals at a random integer embedding with
/// coordinates in [1, 10^6]. Requires n*d <= 64 (CapacityError otherwise).
std::size_t exact_rational_rank(const Graph& g, int d, std::uint64_t seed);

/// Exact rational rank of an integer matrix (row-major), by fraction-free elimination.
std::size_t exact_integer_matrix_rank(std::span<const long long> entries, std::size_t rows, std::size_t cols);

}  // namespace rigidlab
