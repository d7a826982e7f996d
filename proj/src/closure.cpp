#include "rigidlab/closure.hpp"

#include <algorithm>
#include <numeric>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

bool is_clique(const Graph& g, std::span<const Vertex> set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (!g.has_edge(set[i], set[j])) return false;
  return true;
}

std::optional<Vertex> find_simplicial_vertex(const Graph& g) {
  std::vector<Vertex> order = all_vertices(g.n());
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  for (Vertex v : order)
    if (is_clique(g, g.neighbors(v))) return v;
  return std::nullopt;
}

std::string_view sigma_rule_name(SigmaRule r) {
  switch (r) {
    case SigmaRule::all:
      return "all";
    case SigmaRule::first_d:
      return "first_d";
    case SigmaRule::nonclique_d_plus_1:
      return "nonclique_d_plus_1";
  }
  return "unknown";
}

GSigmaTrace build_g_sigma(const Graph& g, std::span<const int> sigma, int d) {
  const int n = g.n();
  if (d < 1) throw ParameterError("G_sigma needs d >= 1");
  if (static_cast<int>(sigma.size()) != n) throw ParameterError("sigma must have one entry per vertex");
  std::vector<Vertex> order(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    if (sigma[v] < 0 || sigma[v] >= n || order[sigma[v]] != -1) throw ParameterError("sigma is not a permutation");
    order[sigma[v]] = v;
  }

  GSigmaTrace trace;
  trace.sigma.assign(sigma.begin(), sigma.end());
  trace.records.resize(n);
  std::vector<Edge> kept;
  auto by_sigma = [&](Vertex a, Vertex b) { return sigma[a] < sigma[b]; };

  for (Vertex v : order) {
    SigmaVertexRecord& rec = trace.records[v];
    rec.vertex = v;
    std::vector<Vertex> earlier;
    for (Vertex w : g.neighbors(v))
      if (sigma[w] < sigma[v]) earlier.push_back(w);
    std::sort(earlier.begin(), earlier.end(), by_sigma);
    rec.earlier_degree = static_cast<int>(earlier.size());

    std::vector<Vertex> chosen;
    if (rec.earlier_degree <= d) {
      rec.rule = SigmaRule::all;
      chosen = earlier;
    } else if (is_clique(g, earlier)) {
      rec.rule = SigmaRule::first_d;
      chosen.assign(earlier.begin(), earlier.begin() + d);
    } else {
      rec.rule = SigmaRule::nonclique_d_plus_1;
      std::size_t ia = 0, ib = 0;
      bool found = false;
      for (ia = 0; ia < earlier.size() && !found; ++ia)
        for (ib = ia + 1; ib < earlier.size(); ++ib)
          if (!g.has_edge(earlier[ia], earlier[ib])) {
            found = true;
            break;
          }
      --ia;
      chosen = {earlier[ia], earlier[ib]};
      for (std::size_t i = 0; i < earlier.size() && static_cast<int>(chosen.size()) < d + 1; ++i)
        if (i != ia && i != ib) chosen.push_back(earlier[i]);
    }
    rec.earlier_neighbors = make_vertex_set(earlier);
    rec.chosen = make_vertex_set(chosen);
    for (Vertex w : rec.chosen) kept.push_back({std::min(v, w), std::max(v, w)});
    trace.edge_total += rec.chosen.size();
  }
  trace.g_sigma = Graph::from_edges(n, kept);
  return trace;
}

GSigmaAudit audit_gsigma_on_closed(const Graph& closed, int d, std::size_t num_perms, std::uint64_t seed) {
  GSigmaAudit audit;
  audit.closure = closed;
  audit.bound = rigidity_rank_bound(closed.n(), d);
  for (std::size_t i = 0; i < num_perms; ++i) {
    std::vector<int> sigma(closed.n());
    std::iota(sigma.begin(), sigma.end(), 0);
    Rng rng = make_rng(derive_seed(seed, {i}));
    std::shuffle(sigma.begin(), sigma.end(), rng);
    GSigmaTrace trace = build_g_sigma(closed, sigma, d);
    GSigmaAuditRow row{i, trace.edge_total, audit.bound, trace.edge_total > audit.bound};
    audit.max_edge_total = std::max(audit.max_edge_total, row.edge_total);
    audit.violations += row.violated ? 1 : 0;
    audit.rows.push_back(row);
  }
  return audit;
}

GSigmaAudit audit_gsigma_bound(const Graph& g, int d, std::size_t num_perms, std::uint64_t seed,
                               int closure_trials) {
  Graph closed = d_closure(g, d, closure_trials, kMersenne61, derive_seed(seed, {0xc105e}));
  return audit_gsigma_on_closed(closed, d, num_perms, seed);
}

// ---------------------------------------------------------------------------
// Lemma "dpuz" hypotheses

std::string_view dpuz_state_name(DpuzVertexState s) {
  switch (s) {
    case DpuzVertexState::ok:
      return "ok";
    case DpuzVertexState::neighborhood_is_clique:
      return "neighborhood_is_clique";
    case DpuzVertexState::large_intersection:
      return "large_intersection";
    case DpuzVertexState::cap_exceeded:
      return "cap_exceeded";
  }
  return "unknown";
}

namespace {

class BronKerbosch {
 public:
  BronKerbosch(const Graph& g, std::span<const Vertex> vertices, std::size_t cap)
      : vertices_(vertices.begin(), vertices.end()), cap_(cap) {
    const std::size_t k = vertices_.size();
    adj_.assign(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (g.has_edge(vertices_[i], vertices_[j])) adj_[i][j] = adj_[j][i] = 1;
  }

  bool run() {
    std::vector<int> r, p(vertices_.size()), x;
    std::iota(p.begin(), p.end(), 0);
    expand(r, p, x);
    return !overflow_;
  }

  std::vector<VertexSet> take() { return std::move(cliques_); }

 private:
  void expand(std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
    if (overflow_) return;
    if (p.empty() && x.empty()) {
      if (cliques_.size() >= cap_) {
        overflow_ = true;
        return;
      }
      VertexSet clique;
      for (int i : r) clique.push_back(vertices_[i]);
      cliques_.push_back(make_vertex_set(std::move(clique)));
      return;
    }
    // Pivot: vertex of P ∪ X with the most neighbours in P.
    int pivot = -1;
    std::size_t best = 0;
    for (const auto* pool : {&p, &x})
      for (int u : *pool) {
        std::size_t c = 0;
        for (int w : p) c += adj_[u][w];
        if (pivot < 0 || c > best) {
          pivot = u;
          best = c;
        }
      }
    std::vector<int> candidates;
    for (int v : p)
      if (!adj_[pivot][v]) candidates.push_back(v);
    for (int v : candidates) {
      std::vector<int> p2, x2;
      for (int w : p)
        if (adj_[v][w]) p2.push_back(w);
      for (int w : x)
        if (adj_[v][w]) x2.push_back(w);
      r.push_back(v);
      expand(r, std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
      if (overflow_) return;
    }
  }

  std::vector<Vertex> vertices_;
  std::size_t cap_;
  std::vector<std::vector<char>> adj_;
  std::vector<VertexSet> cliques_;
  bool overflow_ = false;
};

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j)
      ++i;
    else if (*j < *i)
      ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::optional<std::vector<VertexSet>> maximal_cliques_within(const Graph& g, std::span<const Vertex> vertices,
                                                             std::size_t cap) {
  BronKerbosch bk(g, vertices, cap);
  if (!bk.run()) return std::nullopt;
  return bk.take();
}

DpuzReport check_dpuz_hypotheses(const Graph& g, int d, std::size_t per_vertex_clique_cap) {
  DpuzReport report;
  report.d = d;
  report.min_degree_ok = g.n() > 0 && g.min_degree() >= d * (d + 1);
  for (Vertex v = 0; v < g.n(); ++v) {
    DpuzVertexReport vr;
    vr.vertex = v;
    auto nbrs = g.neighbors(v);
    if (is_clique(g, nbrs)) {
      vr.state = DpuzVertexState::neighborhood_is_clique;
      vr.maximal_cliques = 1;
      report.no_clique_neighborhood = false;
    } else if (auto cliques = maximal_cliques_within(g, nbrs, per_vertex_clique_cap); !cliques) {
      vr.state = DpuzVertexState::cap_exceeded;
      ++report.capped_vertices;
    } else {
      vr.maximal_cliques = cliques->size();
      for (std::size_t i = 0; i < cliques->size(); ++i)
        for (std::size_t j = i + 1; j < cliques->size(); ++j)
          vr.max_intersection = std::max(vr.max_intersection, intersection_size((*cliques)[i], (*cliques)[j]));
      if (cliques->size() > 1 && static_cast<long long>(vr.max_intersection) > d - 2) {
        vr.state = DpuzVertexState::large_intersection;
        report.small_intersections = false;
      }
    }
    report.vertices.push_back(vr);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Clique absorption and the exact-threshold pipeline

AbsorptionResult absorb_clique(const Graph& closed, int d, std::span<const Vertex> clique) {
  AbsorptionResult out;
  out.final_set = make_vertex_set({clique.begin(), clique.end()});
  check_vertices(closed, out.final_set);
  if (!is_clique(closed, out.final_set)) throw PreconditionError("S is not a clique");
  auto mask = membership_mask(closed.n(), out.final_set);

  bool grew = true;
  while (grew && static_cast<int>(out.final_set.size()) < closed.n()) {
    grew = false;
    for (Vertex v = 0; v < closed.n(); ++v) {
      if (mask[v]) continue;
      const int into = closed.degree_into(v, mask);
      if (into < d) continue;
      if (into != static_cast<int>(out.final_set.size()))
        throw ClosureViolation("vertex " + std::to_string(v) + " has " + std::to_string(into) +
                               " neighbours in a clique of size " + std::to_string(out.final_set.size()) +
                               " but is not adjacent to all of it");
      mask[v] = 1;
      out.final_set.insert(std::lower_bound(out.final_set.begin(), out.final_set.end(), v), v);
      out.order.push_back(v);
      grew = true;
    }
  }
  out.complete = static_cast<int>(out.final_set.size()) == closed.n();
  return out;
}

int exact_theorem_max_d(int n) {
  const long long rhs = 8LL * n - 15;
  if (rhs < 1) return -1;
  int d = 0;
  while ((4LL * (d + 1) + 1) * (4LL * (d + 1) + 1) <= rhs) ++d;
  return d;
}

int exact_theorem_min_degree(int n, int d) {
  const int twice = n + d - 2;
  return twice <= 0 ? 0 : (twice + 1) / 2;
}

ExactPipelineTrace theorem_exact_pipeline(const Graph& g, int d, const ExactPipelineOptions& opts) {
  if (g.n() < 2) throw ParameterError("pipeline needs n >= 2");
  ExactPipelineTrace trace;
  trace.n = g.n();
  trace.d = d;
  trace.min_degree = g.min_degree();
  trace.hypotheses_hold = d <= exact_theorem_max_d(g.n()) && trace.min_degree >= exact_theorem_min_degree(g.n(), d);

  ClosureResult closure = compute_closure(g, d, opts.closure_trials, opts.prime, derive_seed(opts.seed, {1}));
  trace.closure_edges = closure.closure.edge_count();
  trace.closure_error_bound = closure.error_bound;
  trace.simplicial_vertex = find_simplicial_vertex(closure.closure);
  if (trace.simplicial_vertex) {
    const Vertex v = *trace.simplicial_vertex;
    std::vector<Vertex> s(closure.closure.neighbors(v).begin(), closure.closure.neighbors(v).end());
    s.push_back(v);
    trace.clique = make_vertex_set(std::move(s));
    try {
      AbsorptionResult absorbed = absorb_clique(closure.closure, d, trace.clique);
      trace.absorption_order = absorbed.order;
      trace.final_clique_size = absorbed.final_set.size();
      trace.complete = absorbed.complete;
    } catch (const ClosureViolation& e) {
      trace.closure_violation = true;
      trace.closure_violation_detail = e.what();
    }
  }
  trace.cross_check = is_d_rigid(g, d, opts.rigidity_trials, opts.prime, derive_seed(opts.seed, {2}));
  trace.flagged = (trace.hypotheses_hold && (!trace.complete || !trace.cross_check.certified())) ||
                  (trace.complete && !trace.cross_check.certified()) || trace.closure_violation;
  return trace;
}

}  // namespace rigidlab
