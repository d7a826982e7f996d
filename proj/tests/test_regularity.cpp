#include <doctest.h>

#include <bit>

#include "oracles.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/regularity.hpp"

using namespace rigidlab;

namespace {

// Reference evaluator over all X, Y with exact integer comparisons.
// eps = en/ed and delta = dn/dd.
struct Reference {
  const Graph& g;
  VertexSet a, b;
  long long en, ed, dn, dd;

  std::vector<unsigned> adjacency_into_b() const {
    std::vector<unsigned> adj(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (g.has_edge(a[i], b[j])) adj[i] |= 1u << j;
    return adj;
  }

  // s >= eps * side, i.e. s * ed >= en * side.
  bool large(long long s, long long side) const { return s * ed >= en * side; }

  bool satisfies(PairCriterion c) const {
    auto adj = adjacency_into_b();
    long long na = static_cast<long long>(a.size()), nb = static_cast<long long>(b.size());
    long long total = 0;
    for (unsigned m : adj) total += std::popcount(m);
    if (c != PairCriterion::super_regular && total * dd < dn * na * nb) return false;
    if (c == PairCriterion::super_regular) {
      for (std::size_t i = 0; i < a.size(); ++i)
        if (std::popcount(adj[i]) * dd < dn * nb) return false;
      for (std::size_t j = 0; j < b.size(); ++j) {
        long long deg = 0;
        for (unsigned m : adj) deg += (m >> j) & 1u;
        if (deg * dd < dn * na) return false;
      }
    }
    for (unsigned xm = 1; xm < (1u << na); ++xm) {
      long long xs = std::popcount(xm);
      if (!large(xs, na)) continue;
      for (unsigned ym = 1; ym < (1u << nb); ++ym) {
        long long ys = std::popcount(ym);
        if (!large(ys, nb)) continue;
        long long e = 0;
        for (int i = 0; i < na; ++i)
          if (xm >> i & 1u) e += std::popcount(adj[i] & ym);
        if (c == PairCriterion::dense) {
          if (e * dd < dn * xs * ys) return false;
        } else {
          // |e/(xs ys) - total/(na nb)| <= eps
          long long diff = e * na * nb - total * xs * ys;
          if (diff < 0) diff = -diff;
          if (diff * ed > en * xs * ys * na * nb) return false;
        }
      }
    }
    return true;
  }
};

std::pair<VertexSet, VertexSet> halves(int m) {
  VertexSet a(m), b(m);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), m);
  return {a, b};
}

Graph random_bipartite(int m, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = m; j < 2 * m; ++j)
      if (coin(rng)) edges.push_back({i, j});
  return Graph::from_edges(2 * m, edges);
}

}  // namespace

TEST_SUITE("regularity_lab") {
  TEST_CASE("pair density") {
    Graph k34 = generate(FamilySpec::complete_bipartite(3, 4));
    CHECK(pair_density(k34, VertexSet{0, 1, 2}, VertexSet{3, 4, 5, 6}) == make_rational(1, 1));
    CHECK(pair_density(Graph(4), VertexSet{0, 1}, VertexSet{2, 3}).num == 0);
    Graph c4 = oracle::from_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(pair_density(c4, VertexSet{0, 2}, VertexSet{1, 3}) == make_rational(4, 4));
    CHECK(make_rational(6, 8) == Rational{3, 4});
    CHECK_THROWS_AS(pair_density(c4, VertexSet{0, 1}, VertexSet{1, 2}), ParameterError);
    CHECK_THROWS_AS(pair_density(c4, VertexSet{}, VertexSet{1, 2}), ParameterError);
  }

  TEST_CASE("density matches subgraph_between") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Graph g = oracle::gnp(14, 0.4, seed);
      VertexSet x = {0, 2, 4, 6, 8}, y = {1, 3, 5, 7, 9, 11};
      Rational r = pair_density(g, x, y);
      CHECK(r.value() >= 0.0);
      CHECK(r.value() <= 1.0);
      CHECK(r == make_rational(static_cast<long long>(subgraph_between(g, x, y).graph.edge_count()), 30));
    }
  }

  TEST_CASE("witness size") {
    CHECK(witness_size(0.45, 12) == 6);
    CHECK(witness_size(0.5, 12) == 6);
    CHECK(witness_size(0.1, 5) == 1);
    CHECK(witness_size(0.01, 5) == 1);
  }

  TEST_CASE("complete and empty pairs") {
    Graph k = generate(FamilySpec::complete_bipartite(6, 6));
    auto [a, b] = halves(6);
    for (auto c : {PairCriterion::regular, PairCriterion::dense, PairCriterion::super_regular})
      CHECK(check_pair(k, a, b, 0.2, 0.9, c).outcome == PairOutcome::pass);

    Graph empty(12);
    auto v = check_pair(empty, a, b, 0.2, 0.1, PairCriterion::dense);
    CHECK(v.outcome == PairOutcome::fail);
    CHECK(v.witness_x == a);
    CHECK(v.witness_y == b);
    CHECK(check_pair(empty, a, b, 0.2, 0.1, PairCriterion::super_regular).degree_violation.has_value());
  }

  TEST_CASE("exhaustive verdicts match the reference evaluator") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      int m = seed < 2 ? 12 : 8;
      Graph g = random_bipartite(m, 0.5, seed);
      auto [a, b] = halves(m);
      Reference ref{g, a, b, 9, 20, 1, 5};
      for (auto c : {PairCriterion::regular, PairCriterion::dense, PairCriterion::super_regular}) {
        auto v = check_pair(g, a, b, 0.45, 0.2, c);
        CHECK(v.mode == CheckMode::exhaustive);
        CHECK((v.outcome == PairOutcome::pass) == ref.satisfies(c));
        if (v.outcome == PairOutcome::fail && v.witness_density)
          CHECK(pair_density(g, v.witness_x, v.witness_y) == *v.witness_density);
      }
    }
    // Tighter parameters so that both verdicts occur.
    int passes = 0, fails = 0;
    for (std::uint64_t seed = 10; seed < 40; ++seed) {
      Graph g = random_bipartite(7, seed % 2 ? 0.9 : 0.6, seed);
      auto [a, b] = halves(7);
      Reference ref{g, a, b, 3, 10, 2, 5};
      for (auto c : {PairCriterion::regular, PairCriterion::dense}) {
        bool expect = ref.satisfies(c);
        CHECK((check_pair(g, a, b, 0.3, 0.4, c).outcome == PairOutcome::pass) == expect);
        (expect ? passes : fails)++;
      }
    }
    CHECK(passes > 0);
    CHECK(fails > 0);
  }

  TEST_CASE("sampled mode") {
    // Half the pair is complete and half is empty: far from regular.
    int m = 30;
    std::vector<Edge> edges;
    for (int i = 0; i < m / 2; ++i)
      for (int j = m; j < 2 * m; ++j) edges.push_back({i, j});
    Graph g = Graph::from_edges(2 * m, edges);
    auto [a, b] = halves(m);
    auto v = check_pair(g, a, b, 0.2, 0.1, PairCriterion::regular, 500, 3);
    CHECK(v.mode == CheckMode::sampled);
    REQUIRE(v.outcome == PairOutcome::fail);
    CHECK(static_cast<int>(v.witness_x.size()) >= witness_size(0.2, m));
    CHECK(static_cast<int>(v.witness_y.size()) >= witness_size(0.2, m));
    Rational w = pair_density(g, v.witness_x, v.witness_y);
    CHECK(std::abs(w.value() - v.density.value()) > 0.2);

    Graph full = generate(FamilySpec::complete_bipartite(m, m));
    auto ok = check_pair(full, a, b, 0.2, 0.1, PairCriterion::regular, 200, 3);
    CHECK(ok.outcome == PairOutcome::inconclusive);
  }

  TEST_CASE("criterion names") {
    CHECK(parse_criterion("super") == PairCriterion::super_regular);
    CHECK(parse_criterion("dense") == PairCriterion::dense);
    CHECK(criterion_name(PairCriterion::regular) == "regular");
    CHECK_THROWS_AS(parse_criterion("sparse"), ParameterError);
  }

  TEST_CASE("trimming a complete tripartite graph removes nothing") {
    auto spec = FamilySpec::tripartite_random(10, 10, 10, 1.0, 0);
    Graph g = generate(spec);
    auto s = family_sides(spec);
    auto t = trim_to_super_regular_triple(g, s[0], s[1], s[2], 0.1, 0.5);
    CHECK(t.m_prime == 10);
    CHECK(t.trimmed == s);
    CHECK(t.degree_condition_holds);
    CHECK(t.size_bound_holds);
    CHECK_THROWS_AS(trim_to_super_regular_triple(g, s[0], s[1], s[2], 0.3, 0.5), ParameterError);
    CHECK_THROWS_AS(trim_to_super_regular_triple(g, s[0], s[1], s[2], 0.1, 0.3), ParameterError);
  }

  TEST_CASE("planted low-degree vertices are exactly the ones removed") {
    const int m = 30;
    const double eps = 0.05, delta = 0.4;
    std::mt19937_64 rng(8);
    std::bernoulli_distribution coin(0.7);
    auto side = [&](int v) { return v / m; };
    std::vector<int> planted = {2, m + 5, 2 * m + 7};  // one per side
    std::vector<Edge> edges;
    for (int u = 0; u < 3 * m; ++u)
      for (int v = u + 1; v < 3 * m; ++v) {
        if (side(u) == side(v)) continue;
        bool keep = coin(rng);
        // A planted vertex keeps only 3 neighbours in the next side.
        for (int p : planted) {
          int other = p == u ? v : (p == v ? u : -1);
          if (other >= 0 && side(other) == (side(p) + 1) % 3) keep = other % m < 3;
        }
        if (keep) edges.push_back({u, v});
      }
    Graph g = Graph::from_edges(3 * m, edges);
    std::vector<VertexSet> sides(3);
    for (int v = 0; v < 3 * m; ++v) sides[side(v)].push_back(v);

    // Direct degree audit.
    VertexSet expect;
    for (int i = 0; i < 3; ++i)
      for (Vertex x : sides[i])
        for (int j = 0; j < 3; ++j)
          if (j != i && g.degree_into(x, membership_mask(3 * m, sides[j])) < (delta - 2 * eps) * m)
            expect.push_back(x);
    expect = make_vertex_set(expect);
    CHECK(expect == make_vertex_set(planted));

    auto t = trim_to_super_regular_triple(g, sides[0], sides[1], sides[2], eps, delta);
    VertexSet removed;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (Vertex x : t.removed[i][j]) removed.push_back(x);
    CHECK(make_vertex_set(removed) == expect);
    CHECK(t.m_prime == m - 1);
  }

  TEST_CASE("trimmed output satisfies or reports the degree condition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto spec = FamilySpec::tripartite_random(15, 15, 15, 0.3 + 0.03 * static_cast<double>(seed), seed);
      Graph g = generate(spec);
      auto s = family_sides(spec);
      auto t = trim_to_super_regular_triple(g, s[0], s[1], s[2], 0.05, 0.3);
      for (const auto& side : t.trimmed) CHECK(static_cast<int>(side.size()) == t.m_prime);
      std::vector<std::pair<Vertex, int>> failures;
      for (int i = 0; i < 3; ++i)
        for (Vertex x : t.trimmed[i])
          for (int j = 0; j < 3; ++j)
            if (j != i &&
                g.degree_into(x, membership_mask(g.n(), t.trimmed[j])) < (0.3 - 4 * 0.05) * t.m_prime - 1e-9)
              failures.emplace_back(x, j);
      CHECK(failures == t.degree_failures);
      CHECK(t.degree_condition_holds == failures.empty());
    }
  }

  TEST_CASE("removed sets are small when the input pairs are regular") {
    // Exhaustively verified regular pairs force |A_i^j| < eps |A_i|. Complete
    // tripartite minus one edge per pair of sides is regular for eps = 0.24.
    auto spec = FamilySpec::tripartite_random(10, 10, 10, 1.0, 0);
    auto s = family_sides(spec);
    std::vector<Edge> edges;
    for (Edge e : generate(spec).edges())
      if (!(e == Edge{0, 10} || e == Edge{11, 21} || e == Edge{2, 22})) edges.push_back(e);
    Graph g = Graph::from_edges(30, edges);
    const double eps = 0.24, delta = 0.97;
    bool all_regular = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        auto v = check_pair(g, s[i], s[j], eps, delta, PairCriterion::regular);
        CHECK(v.mode == CheckMode::exhaustive);
        all_regular = all_regular && v.outcome == PairOutcome::pass;
      }
    REQUIRE(all_regular);
    auto t = trim_to_super_regular_triple(g, s[0], s[1], s[2], eps, delta);
    if (all_regular)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(t.removed[i][j].size() < eps * 10);
  }
}
