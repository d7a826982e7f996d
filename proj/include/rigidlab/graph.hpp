#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rigidlab {

using Vertex = int;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u;
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Builds a graph from an edge list. Duplicate edges (in either
  /// orientation) collapse; loops throw DomainError, ids outside [0,n) throw
  /// RangeError.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int n() const noexcept { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  bool has_edge(Vertex u, Vertex v) const;

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  int min_degree() const;
  int max_degree() const;

  /// deg(v, A) where A is given as a membership mask of length n.
  int degree_into(Vertex v, const std::vector<char>& mask) const;

  /// Graph plus one extra edge. Returns a copy.
  Graph with_edge(Vertex u, Vertex v) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

std::vector<char> membership_mask(int n, std::span<const Vertex> set);
VertexSet make_vertex_set(std::vector<Vertex> vertices);
VertexSet all_vertices(int n);
void check_vertices(const Graph& g, std::span<const Vertex> set);

/// |E(A,B)| for disjoint A, B, by summing deg(a, B) over a in A.
std::size_t edges_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);

/// A subgraph relabelled onto 0..k-1; to_parent[i] is the id of vertex i in
/// the parent graph.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

/// G[A,B]: vertex set A ∪ B, edges with both ends in A ∪ B meeting both A and
/// B. With A == B this is the induced subgraph G[A].
Subgraph subgraph_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b);
Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> a);

Graph disjoint_union(const Graph& g, const Graph& h);

// ---------------------------------------------------------------------------
// Text formats

enum class GraphFormat { edge_list, json };

/// Edge list: header "n m" then m lines "u v". JSON: {"n": n, "edges": [[u,v],...]}.
Graph parse_graph(std::string_view text, GraphFormat format = GraphFormat::edge_list);
std::string to_edge_list(const Graph& g);
std::string to_json_text(const Graph& g);
Graph read_graph_file(const std::string& path, GraphFormat format);
GraphFormat parse_format_name(std::string_view name);

// ---------------------------------------------------------------------------
// Families

enum class Family {
  ok_glued,
  complete_bipartite,
  complete,
  cycle,
  path,
  tripartite_random,
  min_degree_random,
  hyperoctahedral,
  random_regular,
};

std::string_view family_name(Family f);
Family parse_family_name(std::string_view name);

struct FamilySpec {
  Family family = Family::complete;
  /// Part/clique sizes: {n} for complete/cycle/path/min_degree_random/
  /// random_regular, {m, n} for ok_glued and complete_bipartite, {a, b, c} for
  /// tripartite_random, {k} (number of pairs) for hyperoctahedral.
  std::vector<int> sizes;
  int overlap = 0;     // ok_glued: shared clique vertices
  int min_degree = 0;  // min_degree_random
  int degree = 0;      // random_regular
  double p = 0.0;      // edge probability for random families
  std::uint64_t seed = 0;

  static FamilySpec ok_glued(int m, int n, int d);
  static FamilySpec complete_bipartite(int a, int b);
  static FamilySpec complete(int n);
  static FamilySpec cycle(int n);
  static FamilySpec path(int n);
  static FamilySpec tripartite_random(int a, int b, int c, double p, std::uint64_t seed);
  static FamilySpec min_degree_random(int n, int min_degree, double p, std::uint64_t seed);
  static FamilySpec hyperoctahedral(int pairs);
  static FamilySpec random_regular(int n, int degree, std::uint64_t seed);
};

/// Deterministic given spec.seed. Throws ParameterError on infeasible
/// parameters.
Graph generate(const FamilySpec& spec);

/// Vertex sides of a multipartite family (complete_bipartite, tripartite_random),
/// in the vertex numbering used by generate().
std::vector<VertexSet> family_sides(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Connectivity

std::vector<VertexSet> connected_components(const Graph& g);
/// The empty graph and the single-vertex graph count as connected.
bool is_connected(const Graph& g);
/// True iff n > k and no vertex cut of size < k exists.
bool is_k_connected(const Graph& g, int k);

struct Cut {
  VertexSet a;
  VertexSet b;
  std::size_t size = 0;
};

/// Single-vertex-move local search for a large cut. The result is a local
/// optimum: no single move increases the cut.
Cut heuristic_max_cut(const Graph& g, std::uint64_t seed);

}  // namespace rigidlab
