#include "rigidlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

namespace {

void check_dimension(const Graph& g, int d) {
  if (d < 1) throw DimensionError("dimension must be at least 1");
  if (g.n() <= d)
    throw DimensionError("need n >= d + 1 (n=" + std::to_string(g.n()) + ", d=" + std::to_string(d) + ")");
}

// Pr[a degree-`degree` polynomial that is nonzero vanishes at all of
// `trials` independent uniform points], by Schwartz-Zippel.
double miss_probability(std::size_t degree, std::uint64_t prime, int trials) {
  const double single = static_cast<double>(degree) / static_cast<double>(prime);
  return std::pow(std::min(1.0, single), trials);
}

std::size_t edge_rank_cap(const Graph& g, int d) {
  return std::min(g.edge_count(), rigidity_rank_bound(g.n(), d));
}

}  // namespace

std::size_t rigidity_rank_bound(int n, int d) {
  if (n <= 0 || d <= 0) return 0;
  const std::size_t nn = static_cast<std::size_t>(n), dd = static_cast<std::size_t>(d);
  if (n >= d + 1) return dd * nn - dd * (dd + 1) / 2;
  return nn * (nn - 1) / 2;
}

Embedding sample_embedding(const Graph& g, int d, std::uint64_t prime, std::uint64_t seed) {
  if (d < 1) throw ParameterError("dimension must be at least 1");
  if (prime < kMinEmbeddingPrime) throw ParameterError("prime too small for meaningful error bounds (< 2^20)");
  if (!is_prime_u64(prime)) throw ParameterError("modulus is not prime");
  Embedding emb;
  emb.d = d;
  emb.prime = prime;
  emb.coords.resize(static_cast<std::size_t>(g.n()) * d);
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<std::uint64_t> uniform(0, prime - 1);
  for (auto& c : emb.coords) c = uniform(rng);
  return emb;
}

std::vector<FieldElem> rigidity_row(const PrimeField& field, const Embedding& emb, Vertex u, Vertex v) {
  const int d = emb.d;
  std::vector<FieldElem> row(static_cast<std::size_t>(emb.n()) * d, 0);
  for (int i = 0; i < d; ++i) {
    FieldElem diff = field.sub(emb.coord(u, i), emb.coord(v, i));
    row[RigidityMatrix::column(u, i, d)] = diff;
    row[RigidityMatrix::column(v, i, d)] = field.neg(diff);
  }
  return row;
}

RigidityMatrix build_rigidity_matrix(const Graph& g, const Embedding& emb) {
  if (emb.n() != g.n()) throw ParameterError("embedding does not cover the graph's vertices");
  PrimeField field(emb.prime);
  RigidityMatrix m;
  m.d = emb.d;
  m.prime = emb.prime;
  m.edges = g.edges();
  m.rows = m.edges.size();
  m.cols = static_cast<std::size_t>(g.n()) * emb.d;
  m.entries.assign(m.rows * m.cols, 0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    auto row = rigidity_row(field, emb, m.edges[r].u, m.edges[r].v);
    std::copy(row.begin(), row.end(), m.entries.begin() + r * m.cols);
  }
  return m;
}

std::size_t field_rank(const RigidityMatrix& m) {
  return field_rank(PrimeField(m.prime), m.entries, m.rows, m.cols);
}

std::size_t rank_at_embedding(const Graph& g, const Embedding& emb, RowBasis& basis) {
  PrimeField field(emb.prime);
  const std::size_t cap = rigidity_rank_bound(g.n(), emb.d);
  for (Edge e : g.edges()) {
    if (basis.rank() >= cap) break;
    basis.insert(rigidity_row(field, emb, e.u, e.v));
  }
  return basis.rank();
}

GenericRank generic_rank(const Graph& g, int d, int trials, std::uint64_t prime, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (d < 1) throw ParameterError("dimension must be at least 1");
  PrimeField field(prime);
  const std::size_t cap = edge_rank_cap(g, d);
  GenericRank out;
  for (int t = 0; t < trials; ++t) {
    Embedding emb = sample_embedding(g, d, prime, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    RowBasis basis(field, static_cast<std::size_t>(g.n()) * d);
    out.rank = std::max(out.rank, rank_at_embedding(g, emb, basis));
    out.trials = t + 1;
    if (out.rank == cap) break;
  }
  out.error_bound = out.rank == cap ? 0.0 : miss_probability(cap, prime, out.trials);
  return out;
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::RigidCertified ? "RigidCertified" : "ProbablyFlexible";
}

RigidityVerdict is_d_rigid(const Graph& g, int d, int trials, std::uint64_t prime, std::uint64_t seed) {
  check_dimension(g, d);
  if (trials < 1) throw ParameterError("trials must be >= 1");
  RigidityVerdict out;
  out.d = d;
  out.n = g.n();
  out.target_rank = rigidity_rank_bound(g.n(), d);
  out.seed = seed;
  out.prime = prime;
  // generic_rank already stops at the first full-rank trial.
  GenericRank r = generic_rank(g, d, trials, prime, seed);
  out.estimated_rank = r.rank;
  out.trials = r.trials;
  if (r.rank == out.target_rank) {
    out.verdict = Verdict::RigidCertified;
    out.error_bound = 0.0;
  } else {
    out.verdict = Verdict::ProbablyFlexible;
    out.error_bound = miss_probability(out.target_rank, prime, r.trials);
  }
  return out;
}

ClosureResult compute_closure(const Graph& g, int d, int trials, std::uint64_t prime, std::uint64_t seed) {
  check_dimension(g, d);
  if (trials < 1) throw ParameterError("trials must be >= 1");
  PrimeField field(prime);
  const int n = g.n();
  const std::size_t cols = static_cast<std::size_t>(n) * d;
  const std::size_t bound = rigidity_rank_bound(n, d);

  std::vector<Embedding> embeddings;
  std::vector<RowBasis> bases;
  std::vector<std::size_t> ranks;
  for (int t = 0; t < trials; ++t) {
    embeddings.push_back(sample_embedding(g, d, prime, derive_seed(seed, {static_cast<std::uint64_t>(t)})));
    bases.emplace_back(field, cols);
    ranks.push_back(rank_at_embedding(g, embeddings.back(), bases.back()));
  }
  const std::size_t max_rank = *std::max_element(ranks.begin(), ranks.end());

  ClosureResult out;
  out.rank = max_rank;
  out.trials = trials;
  std::vector<std::size_t> kept;
  for (int t = 0; t < trials; ++t)
    if (ranks[t] == max_rank) kept.push_back(t);
  out.trials_used = static_cast<int>(kept.size());

  std::vector<Edge> edges = g.edges();
  const std::size_t original = edges.size();
  const std::size_t non_edges = static_cast<std::size_t>(n) * (n - 1) / 2 - original;
  if (max_rank == bound) {
    // Full rank: the row space is that of the complete graph.
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!g.has_edge(u, v)) edges.push_back({u, v});
  } else {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (g.has_edge(u, v)) continue;
        bool member = true;
        for (std::size_t t : kept) {
          if (!bases[t].contains(rigidity_row(field, embeddings[t], u, v))) {
            member = false;
            break;
          }
        }
        if (member) edges.push_back({u, v});
      }
    }
  }
  out.added_edges = edges.size() - original;
  out.closure = Graph::from_edges(n, edges);
  // Either every trial under-ranked G, or some non-closure row fell into the
  // span at every kept embedding.
  const double deficient = max_rank == bound ? 0.0 : miss_probability(bound, prime, trials);
  const double spurious =
      max_rank == bound ? 0.0
                        : static_cast<double>(non_edges) * miss_probability(max_rank + 1, prime, out.trials_used);
  out.error_bound = std::min(1.0, deficient + spurious);
  return out;
}

Graph d_closure(const Graph& g, int d, int trials, std::uint64_t prime, std::uint64_t seed) {
  return compute_closure(g, d, trials, prime, seed).closure;
}

bool is_d_closed(const Graph& g, int d, int trials, std::uint64_t prime, std::uint64_t seed) {
  return compute_closure(g, d, trials, prime, seed).added_edges == 0;
}

Graph zero_extension(const Graph& g, Vertex v_new, std::span<const Vertex> s, int d) {
  if (v_new != g.n()) throw ParameterError("new vertex must take the next free id " + std::to_string(g.n()));
  VertexSet attach = make_vertex_set({s.begin(), s.end()});
  if (static_cast<int>(attach.size()) != d || static_cast<int>(s.size()) != d)
    throw ParameterError("0-extension needs exactly d distinct attachment vertices");
  check_vertices(g, attach);
  auto edges = g.edges();
  for (Vertex w : attach) edges.push_back({w, v_new});
  return Graph::from_edges(g.n() + 1, edges);
}

std::optional<Vertex> find_dense_attachment(const Graph& g, std::span<const Vertex> a, int d) {
  auto mask = membership_mask(g.n(), a);
  std::optional<Vertex> best;
  int best_degree = -1;
  bool any_outside = false;
  for (Vertex x = 0; x < g.n(); ++x) {
    if (mask[x]) continue;
    any_outside = true;
    int deg = g.degree_into(x, mask);
    if (deg >= d && deg > best_degree) {
      best = x;
      best_degree = deg;
    }
  }
  if (!any_outside) throw DomainError("A must be a proper subset of V");
  return best;
}

GrowthResult greedy_rigid_growth(const Graph& g, int d, std::span<const Vertex> seed_set, int trials,
                                 std::uint64_t prime, std::uint64_t seed) {
  VertexSet current = make_vertex_set({seed_set.begin(), seed_set.end()});
  check_vertices(g, current);
  if (static_cast<int>(current.size()) < std::max(d + 1, 2 * d))
    throw PreconditionError("seed set must have at least max(d+1, 2d) vertices");

  GrowthResult out;
  Subgraph seed_graph = induced_subgraph(g, current);
  out.seed_verdict = is_d_rigid(seed_graph.graph, d, trials, prime, seed);
  if (!out.seed_verdict.certified()) throw PreconditionError("G[seed] is not certified d-rigid");

  while (static_cast<int>(current.size()) < g.n()) {
    auto x = find_dense_attachment(g, current, d);
    if (!x) break;
    out.attachment_order.push_back(*x);
    current.insert(std::lower_bound(current.begin(), current.end(), *x), *x);
  }
  out.spans_graph = static_cast<int>(current.size()) == g.n();
  out.rigid_set = std::move(current);
  return out;
}

}  // namespace rigidlab
