#include <doctest.h>

#include "oracles.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/rigidity.hpp"

using namespace rigidlab;

namespace {

Graph c4() { return oracle::from_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }
Graph p3() { return oracle::from_list(3, {{0, 1}, {1, 2}}); }

}  // namespace

TEST_SUITE("prime_field") {
  TEST_CASE("arithmetic against 128-bit reference") {
    PrimeField f;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
      std::uint64_t a = rng() % kMersenne61, b = rng() % kMersenne61;
      auto ref = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kMersenne61);
      CHECK(f.mul(a, b) == ref);
      CHECK(f.add(a, b) == (a + b) % kMersenne61);
      CHECK(f.add(f.sub(a, b), b) == a);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
    PrimeField small(7);
    CHECK(small.from_signed(-3) == 4);
    CHECK(small.inv(3) == 5);
  }

  TEST_CASE("primality") {
    CHECK(is_prime_u64(kMersenne61));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(1000003));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));
    CHECK_FALSE(is_prime_u64(3215031751ULL));
  }

  TEST_CASE("field rank") {
    PrimeField f;
    CHECK(field_rank(f, std::span<const FieldElem>{}, 0, 5) == 0);
    std::mt19937_64 rng(9);
    std::vector<FieldElem> m(9);
    for (auto& x : m) x = rng() % kMersenne61;
    CHECK(field_rank(f, m, 3, 3) == 3);
    std::vector<FieldElem> dependent = {1, 2, 3, 2, 4, 6, 0, 1, 1};
    CHECK(field_rank(f, dependent, 3, 3) == 2);
    RowBasis basis(f, 3);
    CHECK(basis.insert({1, 2, 3}));
    CHECK_FALSE(basis.insert({2, 4, 6}));
    CHECK(basis.contains({3, 6, 9}));
    CHECK_FALSE(basis.contains({0, 0, 1}));
  }
}

TEST_SUITE("generic_rank") {
  TEST_CASE("embeddings") {
    Embedding e1 = sample_embedding(p3(), 1, kMersenne61, 7);
    CHECK(e1.coords.size() == 3);
    CHECK(sample_embedding(p3(), 1, kMersenne61, 7).coords == e1.coords);
    CHECK(sample_embedding(p3(), 1, kMersenne61, 8).coords != e1.coords);
    CHECK(sample_embedding(oracle::complete(4), 2, kMersenne61, 1).coords.size() == 8);
    for (auto x : e1.coords) CHECK(x < kMersenne61);
    CHECK_THROWS_AS(sample_embedding(p3(), 1, 1000003, 1), ParameterError);
    CHECK_THROWS_AS(sample_embedding(p3(), 1, (1ULL << 40) + 1, 1), ParameterError);  // composite
  }

  TEST_CASE("rigidity matrix shape and entries") {
    Embedding e{1, 7, {5, 2}};
    Graph edge = oracle::from_list(2, {{0, 1}});
    RigidityMatrix m = build_rigidity_matrix(edge, e);
    REQUIRE(m.rows == 1);
    CHECK(m.at(0, 0) == 3);
    CHECK(m.at(0, 1) == 4);

    Graph k3 = oracle::complete(3);
    RigidityMatrix r = build_rigidity_matrix(k3, sample_embedding(k3, 2, kMersenne61, 1));
    CHECK(r.rows == 3);
    CHECK(r.cols == 6);
    PrimeField f;
    for (std::size_t row = 0; row < r.rows; ++row) {
      int support = 0;
      for (std::size_t c = 0; c < r.cols; ++c) support += r.at(row, c) != 0;
      CHECK(support == 4);
      // Blocks cancel.
      Edge ed = r.edges[row];
      for (int i = 0; i < 2; ++i)
        CHECK(f.add(r.at(row, RigidityMatrix::column(ed.u, i, 2)), r.at(row, RigidityMatrix::column(ed.v, i, 2))) ==
              0);
    }
    RigidityMatrix empty = build_rigidity_matrix(Graph(4), sample_embedding(Graph(4), 2, kMersenne61, 1));
    CHECK(empty.rows == 0);
    CHECK(field_rank(empty) == 0);
  }

  TEST_CASE("small generic ranks") {
    for (int d = 1; d <= 4; ++d)
      CHECK(generic_rank(oracle::complete(d + 1), d).rank == static_cast<std::size_t>(d * (d + 1) / 2));
    CHECK(generic_rank(c4(), 2).rank == 4);
    CHECK(oracle::generic_rank_q(c4(), 2) == 4);
    CHECK(generic_rank(p3(), 1).rank == 2);
    Graph k4 = oracle::complete(4);
    CHECK(field_rank(build_rigidity_matrix(k4, sample_embedding(k4, 2, kMersenne61, 3))) == 5);
    CHECK(oracle::generic_rank_q(k4, 2) == 5);
  }

  TEST_CASE("is_d_rigid verdicts") {
    auto k4 = is_d_rigid(oracle::complete(4), 2);
    CHECK(k4.certified());
    CHECK(k4.estimated_rank == 5);
    CHECK(k4.error_bound == 0.0);

    auto c = is_d_rigid(c4(), 2);
    CHECK_FALSE(c.certified());
    CHECK(c.estimated_rank == 4);
    CHECK(c.target_rank == 5);
    CHECK(c.error_bound > 0.0);
    CHECK(c.error_bound <= c.trials * 5.0 / static_cast<double>(kMersenne61));

    CHECK(is_d_rigid(generate(FamilySpec::ok_glued(4, 4, 2)), 2).certified());
    CHECK_THROWS_AS(is_d_rigid(oracle::complete(3), 3), DimensionError);
  }

  TEST_CASE("exact rational rank") {
    CHECK(exact_rational_rank(c4(), 2, 1) == 4);
    CHECK(exact_rational_rank(oracle::complete(4), 2, 1) == 5);
    CHECK(exact_rational_rank(p3(), 1, 1) == 2);
    CHECK_THROWS_AS(exact_rational_rank(oracle::complete(17), 4, 1), CapacityError);
    std::vector<long long> m = {2, 4, 1, 3, 6, 0, 5, 10, 1};
    CHECK(exact_integer_matrix_rank(m, 3, 3) == 2);
  }

  TEST_CASE("field rank agrees with the rational oracle") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      int n = 3 + static_cast<int>(seed % 6);
      int d = 1 + static_cast<int>(seed % 3);
      Graph g = oracle::gnp(n, 0.6, seed);
      std::size_t q = oracle::generic_rank_q(g, d);
      CHECK(generic_rank(g, d, 2, kMersenne61, seed).rank == q);
      CHECK(exact_rational_rank(g, d, seed) == q);
    }
  }

  TEST_CASE("rank bound and monotonicity") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      int n = 5 + static_cast<int>(seed % 26);
      int d = 1 + static_cast<int>(seed % 4);
      if (n < d + 1) continue;
      Graph g = oracle::gnp(n, 0.3, seed);
      auto emb = sample_embedding(g, d, kMersenne61, seed);
      std::size_t r = field_rank(build_rigidity_matrix(g, emb));
      CHECK(r <= oracle::rank_target(n, d));
      // Adding any non-edge never lowers the rank at the same embedding.
      for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          if (!g.has_edge(u, v)) CHECK(field_rank(build_rigidity_matrix(g.with_edge(u, v), emb)) >= r);
    }
  }

  TEST_CASE("certified rigid graphs are d-connected") {
    int certified = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      int n = 6 + static_cast<int>(seed % 25);
      int d = 1 + static_cast<int>(seed % 4);
      Graph g = oracle::gnp(n, 0.5, seed);
      if (is_d_rigid(g, d, 3, kMersenne61, seed).certified()) {
        ++certified;
        CHECK(is_k_connected(g, d));
      }
    }
    CHECK(certified > 20);
  }

  TEST_CASE("closure examples") {
    CHECK(d_closure(p3(), 1) == oracle::complete(3));
    CHECK(d_closure(c4(), 2) == c4());
    CHECK(d_closure(oracle::complete(5), 3) == oracle::complete(5));
    CHECK(is_d_closed(oracle::complete(6), 2));
    CHECK_FALSE(is_d_closed(p3(), 1));
    CHECK(is_d_closed(c4(), 2));
    // A chord raises the rank of C4 in the plane.
    CHECK(oracle::generic_rank_q(c4().with_edge(0, 2), 2) == 5);
  }

  TEST_CASE("closure adds exactly the rank-neutral non-edges") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      int n = 5 + static_cast<int>(seed % 4);
      int d = 1 + static_cast<int>(seed % 3);
      if (n < d + 1) continue;
      Graph g = oracle::gnp(n, 0.45, seed + 100);
      Graph cl = d_closure(g, d, 2, kMersenne61, seed);
      std::size_t base = oracle::generic_rank_q(g, d);
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
          if (g.has_edge(u, v)) {
            CHECK(cl.has_edge(u, v));
            continue;
          }
          bool neutral = oracle::generic_rank_q(g.with_edge(u, v), d) == base;
          CHECK(cl.has_edge(u, v) == neutral);
        }
    }
  }

  TEST_CASE("zero extension") {
    Graph k3 = oracle::complete(3);
    Graph g = zero_extension(k3, 3, VertexSet{0, 1}, 2);
    CHECK(g.n() == 4);
    CHECK(g.edge_count() == 5);
    CHECK(is_d_rigid(g, 2).certified());

    Graph k5_minus = zero_extension(oracle::complete(4), 4, VertexSet{0, 1, 2}, 3);
    CHECK(k5_minus.edge_count() == 9);
    CHECK(is_d_rigid(k5_minus, 3).certified());
    CHECK(oracle::generic_rank_q(k5_minus, 3) == oracle::rank_target(5, 3));

    CHECK_THROWS_AS(zero_extension(k3, 3, VertexSet{0}, 2), ParameterError);
    CHECK_THROWS_AS(zero_extension(k3, 5, VertexSet{0, 1}, 2), ParameterError);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      int d = 1 + static_cast<int>(seed % 3);
      Graph base = oracle::gnp(8, 0.7, seed);
      if (!is_d_rigid(base, d).certified()) continue;
      VertexSet s(d);
      std::iota(s.begin(), s.end(), static_cast<int>(seed % 3));
      CHECK(is_d_rigid(zero_extension(base, 8, s, d), d).certified());
    }
  }

  TEST_CASE("dense attachment") {
    Graph k6 = oracle::complete(6);
    auto x = find_dense_attachment(k6, VertexSet{0, 1}, 1);
    REQUIRE(x);
    CHECK(*x >= 2);
    Graph star = oracle::from_list(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(find_dense_attachment(star, VertexSet{1, 2, 3}, 2) == std::optional<Vertex>(0));
    CHECK(find_dense_attachment(star, VertexSet{0, 1}, 2) == std::nullopt);
    CHECK_THROWS_AS(find_dense_attachment(k6, all_vertices(6), 1), DomainError);
  }

  TEST_CASE("dense attachment always exists above the degree threshold") {
    // Exhaustive over every A with 2d <= |A| < n.
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      int n = 9 + static_cast<int>(seed % 4);
      int d = 1 + static_cast<int>(seed % 2);
      int delta = (n + 2 * d - 2 + 1) / 2;
      Graph g = generate(FamilySpec::min_degree_random(n, delta, 0.3, seed));
      REQUIRE(2 * g.min_degree() >= n + 2 * d - 2);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int size = std::popcount(mask);
        if (size < 2 * d || size >= n) continue;
        VertexSet a;
        for (int v = 0; v < n; ++v)
          if (mask >> v & 1u) a.push_back(v);
        auto found = find_dense_attachment(g, a, d);
        CHECK(found.has_value());
        ++checked;
      }
    }
    CHECK(checked > 10000);
  }

  TEST_CASE("greedy rigid growth") {
    auto full = greedy_rigid_growth(oracle::complete(6), 2, VertexSet{0, 1, 2, 3});
    CHECK(full.spans_graph);
    CHECK(full.rigid_set.size() == 6);

    Graph two = disjoint_union(oracle::complete(5), oracle::complete(5));
    auto stuck = greedy_rigid_growth(two, 2, VertexSet{0, 1, 2, 3});
    CHECK(stuck.rigid_set == VertexSet{0, 1, 2, 3, 4});
    CHECK_FALSE(stuck.spans_graph);

    CHECK_THROWS_AS(greedy_rigid_growth(oracle::complete(6), 2, VertexSet{0, 1, 2}), PreconditionError);
    Graph c = c4();
    CHECK_THROWS_AS(greedy_rigid_growth(disjoint_union(c, c), 2, VertexSet{0, 1, 2, 3}), PreconditionError);

    // The seed must have max(d+1, 2d) = 6 vertices for d = 3; take the first
    // closed 5-neighbourhood prefix whose induced graph certifies.
    Graph g = generate(FamilySpec::min_degree_random(40, 22, 0.5, 4));
    VertexSet seed_set;
    for (Vertex v = 0; v < 40 && seed_set.empty(); ++v) {
      auto nb = g.neighbors(v);
      VertexSet cand = make_vertex_set({v, nb[0], nb[1], nb[2], nb[3], nb[4]});
      if (is_d_rigid(induced_subgraph(g, cand).graph, 3).certified()) seed_set = cand;
    }
    REQUIRE(seed_set.size() == 6);
    auto grown = greedy_rigid_growth(g, 3, seed_set);
    CHECK(grown.spans_graph);
    CHECK(is_d_rigid(g, 3).certified());
  }
}
