#include "rigidlab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

std::vector<VertexSet> Coloring::classes() const {
  std::vector<VertexSet> out(std::max(k, 0));
  for (Vertex v = 0; v < static_cast<Vertex>(assignment.size()); ++v) out[assignment[v]].push_back(v);
  return out;
}

bool Coloring::is_partition() const {
  std::vector<char> used(std::max(k, 0), 0);
  for (int c : assignment) used[c] = 1;
  return std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
}

Coloring coloring_from_classes(int n, const std::vector<VertexSet>& classes) {
  Coloring c;
  c.k = static_cast<int>(classes.size());
  c.assignment.assign(n, -1);
  for (int i = 0; i < c.k; ++i)
    for (Vertex v : classes[i]) {
      if (v < 0 || v >= n) throw RangeError("vertex " + std::to_string(v) + " out of range");
      if (c.assignment[v] != -1) throw ParameterError("vertex " + std::to_string(v) + " is in two classes");
      c.assignment[v] = i;
    }
  for (Vertex v = 0; v < n; ++v)
    if (c.assignment[v] < 0) throw ParameterError("vertex " + std::to_string(v) + " is uncoloured");
  return c;
}

namespace {

void check_coloring(const Graph& g, const Coloring& c) {
  if (static_cast<int>(c.assignment.size()) != g.n()) throw ParameterError("colouring does not cover V(G)");
  for (int cls : c.assignment)
    if (cls < 0 || cls >= c.k) throw ParameterError("class index out of range");
}

// Connectivity of G[V_i, V_j] without materialising it.
bool pair_connected(const Graph& g, const std::vector<int>& assignment, int i, int j) {
  auto in_pair = [&](Vertex v) { return assignment[v] == i || assignment[v] == j; };
  auto usable = [&](Vertex u, Vertex w) {
    if (i == j) return assignment[u] == i && assignment[w] == i;
    return (assignment[u] == i && assignment[w] == j) || (assignment[u] == j && assignment[w] == i);
  };
  Vertex start = -1;
  std::size_t members = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (in_pair(v)) {
      ++members;
      if (start < 0) start = v;
    }
  if (members <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u))
      if (!seen[w] && usable(u, w)) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == members;
}

}  // namespace

PseudocompleteCheck verify_pseudocomplete(const Graph& g, const Coloring& c) {
  check_coloring(g, c);
  PseudocompleteCheck out;
  if (c.k < 2) {
    out.pseudocomplete = true;
    return out;
  }
  std::vector<char> joined(static_cast<std::size_t>(c.k) * c.k, 0);
  for (Edge e : g.edges()) {
    int a = c.assignment[e.u], b = c.assignment[e.v];
    joined[static_cast<std::size_t>(a) * c.k + b] = joined[static_cast<std::size_t>(b) * c.k + a] = 1;
  }
  for (int i = 0; i < c.k; ++i)
    for (int j = i + 1; j < c.k; ++j)
      if (!joined[static_cast<std::size_t>(i) * c.k + j]) out.missing_pairs.emplace_back(i, j);
  out.pseudocomplete = out.missing_pairs.empty();
  return out;
}

StrongPartitionCertificate verify_strong_partition(const Graph& g, const Coloring& p) {
  check_coloring(g, p);
  StrongPartitionCertificate cert;
  cert.partition = p;
  if (p.k < 1) {
    cert.diagnostic = "partition has no classes";
    return cert;
  }
  if (!p.is_partition()) {
    cert.diagnostic = "colouring has an empty class, so it is not a partition";
    return cert;
  }
  cert.overall = true;
  for (int i = 0; i < p.k; ++i)
    for (int j = i; j < p.k; ++j) {
      bool ok = pair_connected(g, p.assignment, i, j);
      cert.verified_pairs.push_back({i, j, ok});
      if (!ok) {
        cert.overall = false;
        if (cert.diagnostic.empty())
          cert.diagnostic = "G[V_" + std::to_string(i) + ", V_" + std::to_string(j) + "] is disconnected";
      }
    }
  return cert;
}

// ---------------------------------------------------------------------------
// Random colourings

bool ColoringDistribution::satisfies_vector_q_claims() const {
  if (static_cast<int>(q.size()) != d + 1) return false;
  constexpr double tol = 1e-12;
  double sum = 0.0;
  for (double qi : q) {
    if (qi < 0.0 || qi + tol < 1.0 / (2.0 * d)) return false;
    sum += qi;
  }
  if (std::abs(sum - 1.0) > 1e-9) return false;
  if (ell < d) {
    for (int i = ell; i <= d; ++i)
      if (q[i] + tol < 1.0 / (4.0 * d_prime)) return false;
  }
  return true;
}

ColoringDistribution build_coloring_distribution(const Graph& g, int d) {
  if (d < 1) throw ParameterError("d must be >= 1");
  if (g.n() < 2) throw ParameterError("need at least two vertices");
  ColoringDistribution dist;
  dist.d = d;
  dist.degree_threshold = 5.0 * d * std::log(static_cast<double>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) >= dist.degree_threshold) dist.high_degree.push_back(v);
  dist.ell = std::min(static_cast<int>(dist.high_degree.size()), d);
  dist.d_prime = d - dist.ell;
  dist.pinned.assign(dist.high_degree.begin(), dist.high_degree.begin() + dist.ell);
  dist.q.assign(d + 1, 0.0);
  if (dist.ell == 0 || dist.ell == d) {
    std::fill(dist.q.begin(), dist.q.end(), 1.0 / (d + 1));
  } else {
    for (int i = 0; i <= d; ++i)
      dist.q[i] = i < dist.ell ? 1.0 / (2.0 * dist.ell) : 1.0 / (2.0 * (d + 1 - dist.ell));
  }
  return dist;
}

RandomColoringSample sample_randomcol(const Graph& g, int d, std::uint64_t seed) {
  RandomColoringSample out;
  out.distribution = build_coloring_distribution(g, d);
  out.hypothesis_warning = g.min_degree() < d;
  Coloring& c = out.coloring;
  c.k = d + 1;
  c.assignment.assign(g.n(), -1);
  for (int i = 0; i < out.distribution.ell; ++i) c.assignment[out.distribution.pinned[i]] = i;
  Rng rng = make_rng(seed);
  std::discrete_distribution<int> pick(out.distribution.q.begin(), out.distribution.q.end());
  for (Vertex v = 0; v < g.n(); ++v)
    if (c.assignment[v] < 0) c.assignment[v] = pick(rng);
  return out;
}

PseudoachromaticResult pseudoachromatic_lower_bound(const Graph& g, int d, int retries, std::uint64_t seed) {
  PseudoachromaticResult out;
  for (int r = 0; r < retries; ++r) {
    out.attempts = r + 1;
    RandomColoringSample s = sample_randomcol(g, d, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    if (verify_pseudocomplete(g, s.coloring).pseudocomplete) {
      out.coloring = std::move(s.coloring);
      return out;
    }
  }
  return out;
}

namespace {

// Decides whether a pseudocomplete colouring with exactly k nonempty classes
// exists, by restricted-growth enumeration with two prunes: enough vertices
// left to open the missing classes, and enough unplaced edges left to cover
// the missing class pairs.
class PseudocompleteSearch {
 public:
  PseudocompleteSearch(const Graph& g, int k) : g_(g), k_(k), cls_(g.n(), -1), cover_(k * k, 0) {
    // Place high-degree vertices first: they decide most pairs early.
    order_ = all_vertices(g.n());
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    position_.assign(g.n(), 0);
    for (int i = 0; i < g.n(); ++i) position_[order_[i]] = i;
    // open_edges_after_[i]: edges with at least one endpoint at position >= i.
    open_edges_after_.assign(g.n() + 1, 0);
    for (Edge e : g.edges()) {
      int last = std::max(position_[e.u], position_[e.v]);
      for (int i = 0; i <= last; ++i) ++open_edges_after_[i];
    }
  }

  bool run() { return place(0, 0); }

 private:
  bool place(int idx, int used) {
    const int n = g_.n();
    const int remaining = n - idx;
    if (used + remaining < k_) return false;
    const int needed_pairs = k_ * (k_ - 1) / 2 - covered_;
    if (needed_pairs > open_edges_after_[idx]) return false;
    if (idx == n) return used == k_ && covered_ == k_ * (k_ - 1) / 2;
    const Vertex v = order_[idx];
    const int limit = std::min(used, k_ - 1);
    for (int c = limit; c >= 0; --c) {
      assign(v, c, +1);
      bool ok = place(idx + 1, c == used ? used + 1 : used);
      assign(v, c, -1);
      if (ok) return true;
    }
    return false;
  }

  void assign(Vertex v, int c, int delta) {
    cls_[v] = delta > 0 ? c : -1;
    for (Vertex w : g_.neighbors(v)) {
      int cw = cls_[w];
      if (cw < 0 || cw == c) continue;
      int& slot = cover_[std::min(c, cw) * k_ + std::max(c, cw)];
      if (delta > 0 && slot++ == 0) ++covered_;
      if (delta < 0 && --slot == 0) --covered_;
    }
  }

  const Graph& g_;
  int k_;
  std::vector<int> cls_;
  std::vector<int> cover_;
  int covered_ = 0;
  std::vector<Vertex> order_;
  std::vector<int> position_;
  std::vector<int> open_edges_after_;
};

}  // namespace

int brute_force_pseudoachromatic(const Graph& g, int max_n) {
  if (g.n() > max_n)
    throw CapacityError("brute-force pseudoachromatic number is limited to n <= " + std::to_string(max_n));
  if (g.n() <= 1) return g.n();
  // Merging two classes of a pseudocomplete colouring keeps it
  // pseudocomplete, so feasibility is monotone in k; scan downward from the
  // edge-count bound C(k,2) <= |E|.
  int k = 1;
  while (k + 1 <= g.n() && static_cast<std::size_t>((k + 1) * k / 2) <= g.edge_count()) ++k;
  for (; k >= 2; --k)
    if (PseudocompleteSearch(g, k).run()) return k;
  return 1;
}

// ---------------------------------------------------------------------------
// Near-bipartite pipeline

BetaFamily BetaFamily::from_beta(double beta) {
  BetaFamily f;
  f.beta = beta;
  f.beta_prime = 4.0 * beta;
  f.beta_circ = std::sqrt(2.0 * beta);
  f.beta_0 = beta + 2.0 * f.beta_circ;
  f.beta_1 = f.beta_prime + 2.0 * f.beta_circ;
  f.beta_star = std::sqrt(2.0 * f.beta_0);
  return f;
}

BipartiteRefinementState refine_bipartition(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b,
                                            std::size_t move_cap, double beta) {
  const int n = g.n();
  BipartiteRefinementState st;
  st.original_a = make_vertex_set({a.begin(), a.end()});
  st.original_b = make_vertex_set({b.begin(), b.end()});
  check_vertices(g, st.original_a);
  check_vertices(g, st.original_b);
  std::vector<char> side(n, -1);  // 0 = A, 1 = B
  for (Vertex v : st.original_a) side[v] = 0;
  for (Vertex v : st.original_b) {
    if (side[v] == 0) throw ParameterError("A and B overlap");
    side[v] = 1;
  }
  for (Vertex v = 0; v < n; ++v)
    if (side[v] < 0) throw ParameterError("A and B do not cover V");
  st.betas = BetaFamily::from_beta(beta);
  st.move_cap = move_cap;
  st.move_budget = 2.0 * st.betas.beta_circ * n;

  std::vector<int> cross(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) cross[v] += side[w] != side[v] ? 1 : 0;
  // x is in C iff its cross-degree is below n/4.
  auto in_c = [&](Vertex v) { return 4 * cross[v] < n; };

  while (true) {
    Vertex x = -1;
    for (Vertex v = 0; v < n && x < 0; ++v)
      if (in_c(v)) x = v;
    if (x < 0) break;
    if (st.moves.size() >= move_cap) {
      st.cap_hit = true;
      break;
    }
    side[x] = !side[x];
    cross[x] = 0;
    for (Vertex w : g.neighbors(x)) {
      if (side[w] != side[x]) {
        ++cross[x];
        ++cross[w];  // w used to share x's side
      } else {
        --cross[w];
      }
    }
    st.moves.push_back(x);
  }

  for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? st.a : st.b).push_back(v);
  const double threshold = (0.5 - st.betas.beta_star) * n;
  for (Vertex v = 0; v < n; ++v)
    if (cross[v] < threshold) (side[v] == 0 ? st.exceptional_a : st.exceptional_b).push_back(v);
  return st;
}

CloseBipartiteResult close_bipartite_partition(const Graph& g, int d, double beta, std::uint64_t seed,
                                               int retries) {
  if (d < 1) throw ParameterError("d must be >= 1");
  CloseBipartiteResult out;
  const int n = g.n();
  if (n < 2) {
    out.outcome.failure = "graph too small";
    return out;
  }
  if (d == 1) {
    // One class: the certificate is connectivity of G itself.
    Coloring single{1, std::vector<int>(n, 0)};
    out.outcome.attempts = 1;
    auto cert = verify_strong_partition(g, single);
    if (cert.overall)
      out.outcome.certificate = std::move(cert);
    else
      out.outcome.failure = "graph is disconnected";
    return out;
  }

  Cut cut = heuristic_max_cut(g, derive_seed(seed, {0xc07}));
  out.refinement = refine_bipartition(g, cut.a, cut.b, static_cast<std::size_t>(n), beta);
  const VertexSet& a = out.refinement.a;
  const VertexSet& b = out.refinement.b;
  if (a.empty() || b.empty()) {
    out.outcome.failure = "empty side after refinement";
    return out;
  }
  out.larger_side_is_a = a.size() >= b.size();
  const VertexSet& larger = out.larger_side_is_a ? a : b;
  const VertexSet& smaller = out.larger_side_is_a ? b : a;
  Subgraph larger_graph = induced_subgraph(g, larger);

  for (int r = 0; r < retries; ++r) {
    out.outcome.attempts = r + 1;
    const std::uint64_t attempt_seed = derive_seed(seed, {static_cast<std::uint64_t>(r)});
    Coloring c{d, std::vector<int>(n, 0)};
    // d classes on the larger side from the (d-1)-parameter distribution.
    RandomColoringSample larger_col = sample_randomcol(larger_graph.graph, d - 1, derive_seed(attempt_seed, {1}));
    for (std::size_t i = 0; i < larger_graph.to_parent.size(); ++i)
      c.assignment[larger_graph.to_parent[i]] = larger_col.coloring.assignment[i];
    Rng rng = make_rng(derive_seed(attempt_seed, {2}));
    std::uniform_int_distribution<int> uniform(0, d - 1);
    for (Vertex v : smaller) c.assignment[v] = uniform(rng);
    auto cert = verify_strong_partition(g, c);
    if (cert.overall) {
      out.outcome.certificate = std::move(cert);
      return out;
    }
  }
  out.outcome.failure = "no certified partition within " + std::to_string(retries) + " retries";
  return out;
}

PartitionAttempt tripartite_partition(const Graph& g, const std::vector<VertexSet>& sides, int d,
                                      std::uint64_t seed, int retries) {
  if (d < 1) throw ParameterError("d must be >= 1");
  if (sides.size() != 3) throw ParameterError("need exactly three sides");
  std::vector<char> seen(g.n(), 0);
  std::size_t covered = 0;
  for (const auto& side : sides) {
    if (side.empty()) throw ParameterError("a side is empty");
    check_vertices(g, side);
    for (Vertex v : side) {
      if (seen[v]) throw ParameterError("sides overlap");
      seen[v] = 1;
      ++covered;
    }
  }
  if (static_cast<int>(covered) != g.n()) throw ParameterError("sides do not cover V");

  PartitionAttempt out;
  for (int r = 0; r < retries; ++r) {
    out.attempts = r + 1;
    Rng rng = make_rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    std::uniform_int_distribution<int> uniform(0, d - 1);
    Coloring c{d, std::vector<int>(g.n(), 0)};
    for (auto& cls : c.assignment) cls = uniform(rng);
    auto cert = verify_strong_partition(g, c);
    if (cert.overall) {
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.failure = "no certified partition within " + std::to_string(retries) + " retries";
  return out;
}

// ---------------------------------------------------------------------------
// Expansion

VertexSet external_neighborhood(const Graph& g, std::span<const Vertex> u) {
  auto in_u = membership_mask(g.n(), u);
  std::vector<char> hit(g.n(), 0);
  VertexSet out;
  for (Vertex x : u)
    for (Vertex w : g.neighbors(x))
      if (!in_u[w] && !hit[w]) {
        hit[w] = 1;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

ExpansionStats expansion_trial(const Graph& g, int k, int d, int trials, std::uint64_t seed) {
  const int n = g.n();
  if (k < 1 || k > n) throw ParameterError("K must satisfy 1 <= K <= n");
  if (d < 1) throw ParameterError("d must be >= 1");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  ExpansionStats st;
  st.n = n;
  st.k = k;
  st.d = d;
  st.trials = trials;
  st.paper_bound = 1.0 - 2.0 * std::exp(-static_cast<double>(k) / 288.0);
  const long long four_k = 4LL * k;
  st.hypothesis_ok = d <= g.min_degree() && four_k * g.max_degree() <= n && four_k * d <= n;

  st.out_edges.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nbrs = g.neighbors(v);
    st.out_edges[v].assign(nbrs.begin(), nbrs.begin() + std::min<std::size_t>(d, nbrs.size()));
  }

  Rng rng = make_rng(seed);
  std::vector<Vertex> pool = all_vertices(n);
  std::vector<char> in_u(n, 0), hit(n, 0), hit_d(n, 0);
  double total_neighborhood = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::span<const Vertex> u(pool.data(), k);
    for (Vertex x : u) in_u[x] = 1;
    long long size_g = 0, size_d = 0;
    for (Vertex x : u) {
      for (Vertex w : g.neighbors(x))
        if (!in_u[w] && !hit[w]) {
          hit[w] = 1;
          ++size_g;
        }
      for (Vertex w : st.out_edges[x])
        if (!in_u[w] && !hit_d[w]) {
          hit_d[w] = 1;
          ++size_d;
        }
    }
    for (Vertex x : u) {
      in_u[x] = 0;
      for (Vertex w : g.neighbors(x)) hit[w] = hit_d[w] = 0;
    }
    total_neighborhood += static_cast<double>(size_g);
    if (3 * size_g >= static_cast<long long>(d) * k) ++st.success_count;
    if (3 * size_d >= static_cast<long long>(d) * k) ++st.digraph_success_count;
  }
  st.empirical_rate = static_cast<double>(st.success_count) / trials;
  st.mean_neighborhood = total_neighborhood / trials;
  return st;
}

}  // namespace rigidlab
