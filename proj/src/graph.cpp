#include "rigidlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

// Mutable edge accumulator used by the generators.
class EdgeSetBuilder {
 public:
  explicit EdgeSetBuilder(int n) : n_(n), degree_(n, 0) {}

  bool add(Vertex u, Vertex v) {
    if (u == v) return false;
    if (!keys_.insert(edge_key(u, v)).second) return false;
    edges_.push_back({std::min(u, v), std::max(u, v)});
    ++degree_[u];
    ++degree_[v];
    return true;
  }
  bool has(Vertex u, Vertex v) const { return keys_.contains(edge_key(u, v)); }
  int degree(Vertex v) const { return degree_[v]; }
  Graph build() const { return Graph::from_edges(n_, edges_); }

 private:
  int n_;
  std::vector<int> degree_;
  std::unordered_set<std::uint64_t> keys_;
  std::vector<Edge> edges_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n) {
  if (n < 0) throw ParameterError("negative vertex count");
  adjacency_.resize(n);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw RangeError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} out of range for n=" + std::to_string(n));
    if (e.u == e.v) throw DomainError("loop at vertex " + std::to_string(e.u));
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  std::size_t degree_sum = 0;
  for (auto& nbrs : g.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    degree_sum += nbrs.size();
  }
  g.edge_count_ = degree_sum / 2;
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n() || v >= n()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  Vertex other = &a == &adjacency_[u] ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

int Graph::min_degree() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& nbrs : adjacency_) best = std::min(best, static_cast<int>(nbrs.size()));
  return adjacency_.empty() ? 0 : best;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

int Graph::degree_into(Vertex v, const std::vector<char>& mask) const {
  int count = 0;
  for (Vertex w : adjacency_.at(v)) count += mask[w] ? 1 : 0;
  return count;
}

Graph Graph::with_edge(Vertex u, Vertex v) const {
  auto list = edges();
  list.push_back({u, v});
  return from_edges(n(), list);
}

// ---------------------------------------------------------------------------
// Sets and subgraphs

std::vector<char> membership_mask(int n, std::span<const Vertex> set) {
  std::vector<char> mask(n, 0);
  for (Vertex v : set) {
    if (v < 0 || v >= n) throw RangeError("vertex " + std::to_string(v) + " out of range");
    mask[v] = 1;
  }
  return mask;
}

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexSet all_vertices(int n) {
  VertexSet all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

void check_vertices(const Graph& g, std::span<const Vertex> set) {
  for (Vertex v : set)
    if (v < 0 || v >= g.n()) throw RangeError("vertex " + std::to_string(v) + " out of range");
}

std::size_t edges_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  auto mask_b = membership_mask(g.n(), b);
  std::size_t total = 0;
  for (Vertex v : a) total += static_cast<std::size_t>(g.degree_into(v, mask_b));
  return total;
}

Subgraph subgraph_between(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b) {
  auto in_a = membership_mask(g.n(), a);
  auto in_b = membership_mask(g.n(), b);
  Subgraph out;
  std::vector<Vertex> local(g.n(), -1);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (in_a[v] || in_b[v]) {
      local[v] = static_cast<Vertex>(out.to_parent.size());
      out.to_parent.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (Vertex u : out.to_parent) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u || local[v] < 0) continue;
      bool crosses = (in_a[u] && in_b[v]) || (in_b[u] && in_a[v]);
      if (crosses) edges.push_back({local[u], local[v]});
    }
  }
  out.graph = Graph::from_edges(static_cast<int>(out.to_parent.size()), edges);
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> a) { return subgraph_between(g, a, a); }

Graph disjoint_union(const Graph& g, const Graph& h) {
  auto edges = g.edges();
  for (Edge e : h.edges()) edges.push_back({e.u + g.n(), e.v + g.n()});
  return Graph::from_edges(g.n() + h.n(), edges);
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, "expected integer, got '" + std::string(token) + "'");
  return value;
}

Graph parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::size_t edge_lines = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(lineno, "expected two integers");
    long long x = parse_int(tokens[0], lineno);
    long long y = parse_int(tokens[1], lineno);
    if (n < 0) {
      if (x < 0 || y < 0 || x > std::numeric_limits<int>::max()) throw ParseError(lineno, "bad header");
      n = x;
      m = y;
      continue;
    }
    ++edge_lines;
    if (x == y) throw ParseError(lineno, "loop at vertex " + std::to_string(x));
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw RangeError("line " + std::to_string(lineno) + ": vertex id out of range for n=" + std::to_string(n));
    edges.push_back({static_cast<Vertex>(x), static_cast<Vertex>(y)});
  }
  if (n < 0) throw ParseError(1, "missing header 'n m'");
  if (static_cast<long long>(edge_lines) != m)
    throw ParseError(lines.size(), "header announces " + std::to_string(m) + " edges, found " +
                                       std::to_string(edge_lines));
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
    throw ParseError(1, "expected object with keys 'n' and 'edges'");
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) throw ParseError(1, "'n' must be a non-negative integer");
  const int n = doc["n"].get<int>();
  std::vector<Edge> edges;
  std::size_t idx = 0;
  for (const auto& e : doc["edges"]) {
    ++idx;
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError(1, "edge #" + std::to_string(idx) + " is not a pair of integers");
    long long u = e[0].get<long long>(), v = e[1].get<long long>();
    if (u == v) throw ParseError(1, "edge #" + std::to_string(idx) + ": loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw RangeError("edge #" + std::to_string(idx) + ": vertex id out of range for n=" + std::to_string(n));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::json ? parse_json_graph(text) : parse_edge_list(text);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (Edge e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string to_json_text(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (Edge e : g.edges()) edges.push_back({e.u, e.v});
  return nlohmann::json{{"n", g.n()}, {"edges", edges}}.dump();
}

Graph read_graph_file(const std::string& path, GraphFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), format);
}

GraphFormat parse_format_name(std::string_view name) {
  if (name == "edgelist" || name == "edge-list" || name == "edge_list" || name == "txt") return GraphFormat::edge_list;
  if (name == "json") return GraphFormat::json;
  throw ParameterError("unknown graph format '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Families

namespace {

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::ok_glued, "ok_glued"},
    {Family::complete_bipartite, "complete_bipartite"},
    {Family::complete, "complete"},
    {Family::cycle, "cycle"},
    {Family::path, "path"},
    {Family::tripartite_random, "tripartite_random"},
    {Family::min_degree_random, "min_degree_random"},
    {Family::hyperoctahedral, "hyperoctahedral"},
    {Family::random_regular, "random_regular"},
};

std::size_t expected_sizes(Family f) {
  switch (f) {
    case Family::ok_glued:
    case Family::complete_bipartite:
      return 2;
    case Family::tripartite_random:
      return 3;
    default:
      return 1;
  }
}

Graph random_regular_graph(int n, int degree, Rng& rng) {
  // Pairing model with rejection of loops/multi-edges at each step; restart
  // when stuck.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * degree);
    for (Vertex v = 0; v < n; ++v)
      for (int i = 0; i < degree; ++i) stubs.push_back(v);
    EdgeSetBuilder builder(n);
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 100 && !paired; ++tries) {
        std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j || stubs[i] == stubs[j] || builder.has(stubs[i], stubs[j])) continue;
        builder.add(stubs[i], stubs[j]);
        if (i < j) std::swap(i, j);
        std::swap(stubs[i], stubs.back());
        stubs.pop_back();
        std::swap(stubs[j], stubs.back());
        stubs.pop_back();
        paired = true;
      }
      stuck = !paired;
    }
    if (!stuck) return builder.build();
  }
  throw ParameterError("random_regular: failed to realise a simple graph");
}

}  // namespace

std::string_view family_name(Family f) {
  for (auto [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "unknown";
}

Family parse_family_name(std::string_view name) {
  for (auto [fam, n] : kFamilyNames)
    if (n == name) return fam;
  throw ParameterError("unknown graph family '" + std::string(name) + "'");
}

FamilySpec FamilySpec::ok_glued(int m, int n, int d) {
  FamilySpec s;
  s.family = Family::ok_glued;
  s.sizes = {m, n};
  s.overlap = d;
  return s;
}
FamilySpec FamilySpec::complete_bipartite(int a, int b) {
  FamilySpec s;
  s.family = Family::complete_bipartite;
  s.sizes = {a, b};
  return s;
}
FamilySpec FamilySpec::complete(int n) {
  FamilySpec s;
  s.family = Family::complete;
  s.sizes = {n};
  return s;
}
FamilySpec FamilySpec::cycle(int n) {
  FamilySpec s;
  s.family = Family::cycle;
  s.sizes = {n};
  return s;
}
FamilySpec FamilySpec::path(int n) {
  FamilySpec s;
  s.family = Family::path;
  s.sizes = {n};
  return s;
}
FamilySpec FamilySpec::tripartite_random(int a, int b, int c, double p, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::tripartite_random;
  s.sizes = {a, b, c};
  s.p = p;
  s.seed = seed;
  return s;
}
FamilySpec FamilySpec::min_degree_random(int n, int min_degree, double p, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::min_degree_random;
  s.sizes = {n};
  s.min_degree = min_degree;
  s.p = p;
  s.seed = seed;
  return s;
}
FamilySpec FamilySpec::hyperoctahedral(int pairs) {
  FamilySpec s;
  s.family = Family::hyperoctahedral;
  s.sizes = {pairs};
  return s;
}
FamilySpec FamilySpec::random_regular(int n, int degree, std::uint64_t seed) {
  FamilySpec s;
  s.family = Family::random_regular;
  s.sizes = {n};
  s.degree = degree;
  s.seed = seed;
  return s;
}

std::vector<VertexSet> family_sides(const FamilySpec& spec) {
  std::vector<VertexSet> sides;
  if (spec.family != Family::complete_bipartite && spec.family != Family::tripartite_random) return sides;
  Vertex next = 0;
  for (int size : spec.sizes) {
    VertexSet side(size);
    std::iota(side.begin(), side.end(), next);
    next += size;
    sides.push_back(std::move(side));
  }
  return sides;
}

Graph generate(const FamilySpec& spec) {
  require(spec.sizes.size() == expected_sizes(spec.family),
          std::string(family_name(spec.family)) + ": wrong number of size parameters");
  for (int s : spec.sizes) require(s >= 0, "sizes must be non-negative");
  require(spec.p >= 0.0 && spec.p <= 1.0, "edge probability must lie in [0,1]");
  Rng rng = make_rng(spec.seed);
  std::bernoulli_distribution coin(spec.p);

  switch (spec.family) {
    case Family::ok_glued: {
      const int m = spec.sizes[0], n2 = spec.sizes[1], d = spec.overlap;
      require(d >= 0 && d <= std::min(m, n2), "ok_glued requires 0 <= d <= min(m, n)");
      const int total = m + n2 - d;
      EdgeSetBuilder b(total);
      for (Vertex u = 0; u < m; ++u)
        for (Vertex v = u + 1; v < m; ++v) b.add(u, v);
      for (Vertex u = m - d; u < total; ++u)
        for (Vertex v = u + 1; v < total; ++v) b.add(u, v);
      return b.build();
    }
    case Family::complete_bipartite: {
      const int a = spec.sizes[0], c = spec.sizes[1];
      std::vector<Edge> edges;
      for (Vertex u = 0; u < a; ++u)
        for (Vertex v = a; v < a + c; ++v) edges.push_back({u, v});
      return Graph::from_edges(a + c, edges);
    }
    case Family::complete: {
      const int n = spec.sizes[0];
      std::vector<Edge> edges;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
      return Graph::from_edges(n, edges);
    }
    case Family::cycle: {
      const int n = spec.sizes[0];
      require(n >= 3, "cycle requires n >= 3");
      std::vector<Edge> edges;
      for (Vertex u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
      return Graph::from_edges(n, edges);
    }
    case Family::path: {
      const int n = spec.sizes[0];
      std::vector<Edge> edges;
      for (Vertex u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
      return Graph::from_edges(n, edges);
    }
    case Family::tripartite_random: {
      auto sides = family_sides(spec);
      const int n = spec.sizes[0] + spec.sizes[1] + spec.sizes[2];
      std::vector<int> side_of(n);
      for (int s = 0; s < 3; ++s)
        for (Vertex v : sides[s]) side_of[v] = s;
      std::vector<Edge> edges;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (side_of[u] != side_of[v] && coin(rng)) edges.push_back({u, v});
      return Graph::from_edges(n, edges);
    }
    case Family::min_degree_random: {
      const int n = spec.sizes[0];
      const int target = spec.min_degree;
      require(target >= 0, "min_degree must be non-negative");
      require(n == 0 ? target == 0 : target <= n - 1, "min_degree must be < n");
      EdgeSetBuilder b(n);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (coin(rng)) b.add(u, v);
      while (true) {
        Vertex worst = -1;
        for (Vertex v = 0; v < n; ++v)
          if (b.degree(v) < target && (worst < 0 || b.degree(v) < b.degree(worst))) worst = v;
        if (worst < 0) break;
        std::vector<Vertex> candidates;
        for (Vertex w = 0; w < n; ++w)
          if (w != worst && !b.has(worst, w)) candidates.push_back(w);
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        b.add(worst, candidates[pick(rng)]);
      }
      return b.build();
    }
    case Family::hyperoctahedral: {
      const int pairs = spec.sizes[0];
      const int n = 2 * pairs;
      std::vector<Edge> edges;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (u / 2 != v / 2) edges.push_back({u, v});
      return Graph::from_edges(n, edges);
    }
    case Family::random_regular: {
      const int n = spec.sizes[0], k = spec.degree;
      require(k >= 0 && k < n, "random_regular requires 0 <= degree < n");
      require((static_cast<long long>(n) * k) % 2 == 0, "random_regular requires n * degree even");
      return random_regular_graph(n, k, rng);
    }
  }
  throw ParameterError("unsupported family");
}

// ---------------------------------------------------------------------------
// Connectivity

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> components;
  std::vector<char> seen(g.n(), 0);
  for (Vertex s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbors(comp[i]))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

namespace {

// Unit-capacity flow network on the vertex-split digraph: v_in = 2v,
// v_out = 2v + 1, arc v_in -> v_out of capacity 1, and for each edge {u,v}
// arcs u_out -> v_in and v_out -> u_in.
class SplitFlowNetwork {
 public:
  explicit SplitFlowNetwork(const Graph& g) : head_(2 * g.n(), -1) {
    for (Vertex v = 0; v < g.n(); ++v) add_arc(2 * v, 2 * v + 1, 1);
    for (Edge e : g.edges()) {
      add_arc(2 * e.u + 1, 2 * e.v, kInf);
      add_arc(2 * e.v + 1, 2 * e.u, kInf);
    }
  }

  /// Number of internally vertex-disjoint s-t paths, counted up to `limit`.
  int disjoint_paths(Vertex s, Vertex t, int limit) {
    std::fill(flow_.begin(), flow_.end(), 0);
    const int source = 2 * s + 1, sink = 2 * t;
    int found = 0;
    std::vector<int> parent_arc(head_.size());
    while (found < limit) {
      std::fill(parent_arc.begin(), parent_arc.end(), -2);
      std::deque<int> queue{source};
      parent_arc[source] = -1;
      while (!queue.empty() && parent_arc[sink] == -2) {
        int x = queue.front();
        queue.pop_front();
        for (int a = head_[x]; a >= 0; a = next_[a]) {
          int y = to_[a];
          if (parent_arc[y] == -2 && capacity_[a] - flow_[a] > 0) {
            parent_arc[y] = a;
            queue.push_back(y);
          }
        }
      }
      if (parent_arc[sink] == -2) break;
      for (int y = sink; y != source;) {
        int a = parent_arc[y];
        flow_[a] += 1;
        flow_[a ^ 1] -= 1;
        y = to_[a ^ 1];
      }
      ++found;
    }
    return found;
  }

 private:
  static constexpr int kInf = 1 << 29;

  void add_arc(int from, int to, int cap) {
    for (int dir = 0; dir < 2; ++dir) {
      int a = static_cast<int>(to_.size());
      to_.push_back(dir == 0 ? to : from);
      capacity_.push_back(dir == 0 ? cap : 0);
      flow_.push_back(0);
      int tail = dir == 0 ? from : to;
      next_.push_back(head_[tail]);
      head_[tail] = a;
    }
  }

  std::vector<int> head_;
  std::vector<int> next_;
  std::vector<int> to_;
  std::vector<int> capacity_;
  std::vector<int> flow_;
};

}  // namespace

bool is_k_connected(const Graph& g, int k) {
  if (k < 0) throw ParameterError("k must be non-negative");
  const int n = g.n();
  if (n <= k) return false;
  if (k == 0) return true;
  if (g.min_degree() < k) return false;
  // Even's scheme: a cut S with |S| < k misses one of v_0..v_{k-1}; checking
  // every non-adjacent pair (v_i, w) with i < k and w > v_i suffices.
  SplitFlowNetwork net(g);
  for (Vertex s = 0; s < k; ++s) {
    for (Vertex t = s + 1; t < n; ++t) {
      if (g.has_edge(s, t)) continue;
      if (net.disjoint_paths(s, t, k) < k) return false;
    }
  }
  return true;
}

namespace {

std::size_t cut_size(const Graph& g, const std::vector<char>& side) {
  std::size_t total = 0;
  for (Edge e : g.edges()) total += side[e.u] != side[e.v] ? 1 : 0;
  return total;
}

void local_search(const Graph& g, std::vector<char>& side) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (Vertex v = 0; v < g.n(); ++v) {
      int same = 0, cross = 0;
      for (Vertex w : g.neighbors(v)) (side[w] == side[v] ? same : cross)++;
      if (same > cross) {
        side[v] = !side[v];
        improved = true;
      }
    }
  }
}

}  // namespace

Cut heuristic_max_cut(const Graph& g, std::uint64_t seed) {
  const int n = g.n();
  if (n < 2) throw ParameterError("max cut needs at least two vertices");

  // Start 0: BFS-depth parity (optimal on bipartite inputs). Further starts
  // are uniform random assignments.
  std::vector<char> best(n, 0);
  {
    std::vector<int> depth(n, -1);
    for (Vertex s = 0; s < n; ++s) {
      if (depth[s] >= 0) continue;
      depth[s] = 0;
      std::deque<Vertex> q{s};
      while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (Vertex y : g.neighbors(x))
          if (depth[y] < 0) {
            depth[y] = depth[x] + 1;
            q.push_back(y);
          }
      }
    }
    for (Vertex v = 0; v < n; ++v) best[v] = static_cast<char>(depth[v] % 2);
  }
  local_search(g, best);
  std::size_t best_size = cut_size(g, best);

  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int restart = 0; restart < 8; ++restart) {
    std::vector<char> side(n);
    for (auto& s : side) s = coin(rng) ? 1 : 0;
    local_search(g, side);
    std::size_t size = cut_size(g, side);
    if (size > best_size) {
      best_size = size;
      best = side;
    }
  }

  Cut cut;
  for (Vertex v = 0; v < n; ++v) (best[v] ? cut.b : cut.a).push_back(v);
  if (cut.a.empty() || (!cut.b.empty() && cut.b.front() < cut.a.front())) std::swap(cut.a, cut.b);
  cut.size = best_size;
  return cut;
}

}  // namespace rigidlab
