#include <doctest.h>

#include <cmath>

#include "certificate_audit.hpp"
#include "oracles.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/partition.hpp"

using namespace rigidlab;

namespace {

Graph k_ab(int a, int b) { return generate(FamilySpec::complete_bipartite(a, b)); }

// K_{m,m} plus a Hamiltonian cycle inside each side.
Graph near_bipartite(int m) {
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a)
    for (int b = m; b < 2 * m; ++b) edges.push_back({a, b});
  for (int i = 0; i < m; ++i) {
    edges.push_back({i, (i + 1) % m});
    edges.push_back({m + i, m + (i + 1) % m});
  }
  return Graph::from_edges(2 * m, edges);
}

}  // namespace

TEST_SUITE("partition_engine") {
  TEST_CASE("pseudocomplete colourings") {
    // K_{2,2} with sides {0,1} | {2,3}.
    Graph k22 = k_ab(2, 2);
    auto c = coloring_from_classes(4, {{0}, {2}, {1, 3}});
    CHECK(verify_pseudocomplete(k22, c).pseudocomplete);
    Graph c4 = oracle::from_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(verify_pseudocomplete(c4, coloring_from_classes(4, {{0, 1, 2, 3}})).pseudocomplete);
    Graph two = oracle::from_list(4, {{0, 1}, {2, 3}});
    auto miss = verify_pseudocomplete(two, coloring_from_classes(4, {{0, 1}, {2, 3}}));
    CHECK_FALSE(miss.pseudocomplete);
    REQUIRE(miss.missing_pairs.size() == 1);
    CHECK(miss.missing_pairs[0] == std::pair<int, int>{0, 1});
  }

  TEST_CASE("strong partitions") {
    Graph k4 = oracle::complete(4);
    auto ok = verify_strong_partition(k4, coloring_from_classes(4, {{0, 1}, {2, 3}}));
    CHECK(ok.overall);
    CHECK(audit::certificate(k4, ok, 2));

    Graph c4 = oracle::from_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK_FALSE(verify_strong_partition(c4, coloring_from_classes(4, {{0, 2}, {1, 3}})).overall);
    Graph c6 = oracle::from_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto bad = verify_strong_partition(c6, coloring_from_classes(6, {{0, 3}, {1, 4}, {2, 5}}));
    CHECK_FALSE(bad.overall);
    CHECK_FALSE(bad.diagnostic.empty());
  }

  TEST_CASE("verifier agrees with the definition") {
    std::mt19937_64 rng(4);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      int n = 6 + static_cast<int>(seed % 7);
      int k = 1 + static_cast<int>(seed % 3);
      Graph g = oracle::gnp(n, 0.6, seed);
      Coloring c;
      c.k = k;
      for (int v = 0; v < n; ++v) c.assignment.push_back(static_cast<int>(rng() % k));
      auto cert = verify_strong_partition(g, c);
      CHECK(cert.overall == oracle::strong_partition(g, c));
      if (cert.overall) CHECK(audit::certificate(g, cert, k));
    }
  }

  TEST_CASE("class probability vector") {
    auto uniform = build_coloring_distribution(k_ab(5, 8), 5);
    CHECK(uniform.ell == 0);
    for (double q : uniform.q) CHECK(q == doctest::Approx(1.0 / 6));
    CHECK(uniform.satisfies_vector_q_claims());

    // Two hubs joined to everything: L = {0, 1}, ell = 2, d = 5.
    int n = 400;
    std::vector<Edge> edges;
    for (int hub = 0; hub < 2; ++hub)
      for (int v = 0; v < n; ++v)
        if (v != hub) edges.push_back({hub, v});
    for (int v = 2; v + 1 < n; ++v) edges.push_back({v, v + 1});
    Graph hubs = Graph::from_edges(n, edges);
    auto dist = build_coloring_distribution(hubs, 5);
    CHECK(dist.ell == 2);
    CHECK(dist.pinned == VertexSet{0, 1});
    std::vector<double> expect = {0.25, 0.25, 0.125, 0.125, 0.125, 0.125};
    REQUIRE(dist.q.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(dist.q[i] == doctest::Approx(expect[i]));
    CHECK(dist.satisfies_vector_q_claims());

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      int d = 1 + static_cast<int>(seed % 6);
      Graph g = oracle::gnp(30 + static_cast<int>(seed), 0.3, seed);
      auto q = build_coloring_distribution(g, d);
      CHECK(q.satisfies_vector_q_claims());
      double sum = 0;
      for (double x : q.q) {
        sum += x;
        CHECK(x >= 1.0 / (2 * d) - 1e-12);
      }
      CHECK(sum == doctest::Approx(1.0));
    }
  }

  TEST_CASE("sampler frequencies match q") {
    // n = 40, d = 2: vertex 0 has degree 39 >= 10 ln 40, so ell = 1 and q = (1/2, 1/4, 1/4).
    int n = 40;
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) edges.push_back({0, v});
    for (int v = 1; v + 1 < n; ++v) edges.push_back({v, v + 1});
    Graph g = Graph::from_edges(n, edges);
    auto dist = build_coloring_distribution(g, 2);
    REQUIRE(dist.ell == 1);
    const int samples = 100000;
    std::vector<long> counts(3, 0);
    for (int s = 0; s < samples; ++s) {
      auto sample = sample_randomcol(g, 2, static_cast<std::uint64_t>(s));
      CHECK(sample.coloring.assignment[0] == 0);
      ++counts[sample.coloring.assignment[1 + s % (n - 1)]];
    }
    for (int i = 0; i < 3; ++i) {
      double q = dist.q[i];
      double sigma = std::sqrt(samples * q * (1 - q));
      CHECK(std::abs(counts[i] - samples * q) <= 3 * sigma);
    }
  }

  TEST_CASE("pseudoachromatic lower bound") {
    auto k26 = pseudoachromatic_lower_bound(k_ab(2, 6), 2, 64, 1);
    REQUIRE(k26.coloring);
    CHECK(verify_pseudocomplete(k_ab(2, 6), *k26.coloring).pseudocomplete);
    auto k4 = pseudoachromatic_lower_bound(oracle::complete(4), 3, 64, 1);
    REQUIRE(k4.coloring);
    CHECK(k4.coloring->classes().size() == 4);
    Graph star = k_ab(1, 9);
    auto s = pseudoachromatic_lower_bound(star, 1, 64, 1);
    REQUIRE(s.coloring);
    CHECK(verify_pseudocomplete(star, *s.coloring).pseudocomplete);
  }

  TEST_CASE("brute force pseudoachromatic number") {
    CHECK(brute_force_pseudoachromatic(k_ab(2, 2)) == 3);
    CHECK(brute_force_pseudoachromatic(oracle::complete(4)) == 4);
    CHECK(brute_force_pseudoachromatic(Graph(3)) == 1);
    CHECK_THROWS_AS(brute_force_pseudoachromatic(Graph(15)), CapacityError);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Graph g = oracle::gnp(4 + static_cast<int>(seed % 4), 0.5, seed);
      CHECK(brute_force_pseudoachromatic(g) == oracle::pseudoachromatic_enumerate(g));
    }
  }

  TEST_CASE("found colourings never exceed the exact value") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      int n = 6 + static_cast<int>(seed % 5);
      Graph g = oracle::gnp(n, 0.6, seed);
      int exact = brute_force_pseudoachromatic(g);
      for (int d = 1; d <= 4; ++d) {
        auto r = pseudoachromatic_lower_bound(g, d, 16, seed);
        if (r.coloring) CHECK(exact >= d + 1);
      }
    }
  }

  TEST_CASE("bipartite refinement") {
    Graph k55 = k_ab(5, 5);
    auto st = refine_bipartition(k55, VertexSet{0, 1, 2, 3, 4}, VertexSet{5, 6, 7, 8, 9}, 100);
    CHECK(st.moves.empty());
    CHECK(st.exceptional_a.empty());
    CHECK(st.exceptional_b.empty());
    CHECK(st.betas.beta_prime == doctest::Approx(0.04));
    CHECK(st.betas.beta_circ == doctest::Approx(std::sqrt(0.02)));

    // Two K5's joined by a perfect matching, split arbitrarily.
    std::vector<Edge> edges;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) {
        edges.push_back({a, b});
        edges.push_back({a + 5, b + 5});
      }
    for (int i = 0; i < 5; ++i) edges.push_back({i, i + 5});
    Graph g = Graph::from_edges(10, edges);
    auto r = refine_bipartition(g, VertexSet{0, 1, 5, 6, 7}, VertexSet{2, 3, 4, 8, 9}, 50);
    CHECK(r.moves.size() <= 50);
    if (!r.cap_hit) {
      for (Vertex v : r.a) CHECK(4 * g.degree_into(v, membership_mask(10, r.b)) >= 10);
      for (Vertex v : r.b) CHECK(4 * g.degree_into(v, membership_mask(10, r.a)) >= 10);
    }
  }

  TEST_CASE("refinement fixpoint on random near-bipartite graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Graph g = oracle::gnp(30, 0.3, seed);
      Cut cut = heuristic_max_cut(g, seed);
      auto st = refine_bipartition(g, cut.a, cut.b, 1000);
      CHECK(st.a.size() + st.b.size() == 30u);
      if (st.cap_hit) continue;
      auto in_a = membership_mask(30, st.a), in_b = membership_mask(30, st.b);
      for (Vertex v : st.a) CHECK(4 * g.degree_into(v, in_b) >= 30);
      for (Vertex v : st.b) CHECK(4 * g.degree_into(v, in_a) >= 30);
    }
  }

  TEST_CASE("close bipartite pipeline") {
    Graph k3030 = k_ab(30, 30);
    auto one = close_bipartite_partition(k3030, 1, 0.01, 1);
    REQUIRE(one.outcome.certificate);
    CHECK(audit::certificate(k3030, *one.outcome.certificate, 1));

    Graph g = near_bipartite(45);
    CHECK(2 * g.min_degree() >= 90 + 2 * 2 - 2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto r = close_bipartite_partition(g, 2, 0.01, seed, 10);
      REQUIRE(r.outcome.certificate);
      CHECK(r.outcome.attempts <= 10);
      CHECK(audit::certificate(g, *r.outcome.certificate, 2));
    }
    auto three = close_bipartite_partition(g, 3, 0.01, 9);
    if (three.outcome.certificate) CHECK(audit::certificate(g, *three.outcome.certificate, 3));

    // Disconnected input can never certify.
    Graph split = disjoint_union(k_ab(5, 5), k_ab(5, 5));
    auto none = close_bipartite_partition(split, 1, 0.01, 1, 4);
    CHECK_FALSE(none.outcome.certificate);
    CHECK_FALSE(none.outcome.failure.empty());
  }

  TEST_CASE("tripartite pipeline") {
    auto spec = FamilySpec::tripartite_random(20, 20, 20, 1.0, 0);
    Graph k = generate(spec);
    auto sides = family_sides(spec);
    auto r = tripartite_partition(k, sides, 3, 1);
    REQUIRE(r.certificate);
    CHECK(audit::certificate(k, *r.certificate, 3));

    auto rspec = FamilySpec::tripartite_random(60, 60, 60, 0.5, 17);
    Graph g = generate(rspec);
    auto rr = tripartite_partition(g, family_sides(rspec), 4, 2);
    REQUIRE(rr.certificate);
    CHECK(audit::certificate(g, *rr.certificate, 4));

    auto single = tripartite_partition(g, family_sides(rspec), 1, 3);
    CHECK(single.certificate.has_value() == is_connected(g));
    Graph apart = disjoint_union(k_ab(3, 3), k_ab(3, 3));
    auto none = tripartite_partition(apart, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9, 10, 11}}, 1, 3, 4);
    CHECK_FALSE(none.certificate);
  }

  TEST_CASE("expansion trials") {
    Graph r = generate(FamilySpec::random_regular(2000, 3, 5));
    auto st = expansion_trial(r, 100, 3, 50, 1);
    CHECK(st.hypothesis_ok);
    CHECK(st.digraph_success_count <= st.success_count);
    CHECK(st.paper_bound == doctest::Approx(1 - 2 * std::exp(-100.0 / 288)));
    // Vacuous here (K too small), but the comparison must still hold.
    CHECK(st.paper_bound < 0.0);
    CHECK(st.empirical_rate >= st.paper_bound);

    // Maximum degree too large for K: flagged.
    Graph dense = disjoint_union(oracle::complete(20), oracle::complete(20));
    CHECK_FALSE(expansion_trial(dense, 5, 2, 10, 1).hypothesis_ok);

    Graph small = generate(FamilySpec::random_regular(40, 3, 1));
    auto all = expansion_trial(small, 40, 3, 5, 1);
    CHECK_FALSE(all.hypothesis_ok);
    CHECK(all.empirical_rate == 0.0);
    CHECK(all.mean_neighborhood == 0.0);
  }

  TEST_CASE("external neighbourhood") {
    Graph p4 = oracle::from_list(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(external_neighborhood(p4, VertexSet{1}) == VertexSet{0, 2});
    CHECK(external_neighborhood(p4, VertexSet{0, 1, 2, 3}).empty());
  }

  TEST_CASE("no certificate in this suite failed its audit") {
    CHECK(audit::tally().seen > 0);
    CHECK(audit::tally().bad == 0);
  }
}
