#include <doctest.h>

#include <random>

#include "aqua/graph.hpp"

using namespace aqua;

TEST_CASE("make_path") {
  SUBCASE("single vertex") {
    Graph g = make_path(1);
    CHECK(g.n_vertices() == 1);
    CHECK(g.edges().empty());
  }
  SUBCASE("three vertices") {
    Graph g = make_path(3);
    REQUIRE(g.edges().size() == 2);
    CHECK(g.edges()[0] == Edge(0, 1));
    CHECK(g.edges()[1] == Edge(1, 2));
    CHECK(g.meta().kind == Family::path);
  }
  SUBCASE("five vertices") {
    Graph g = make_path(5);
    CHECK(g.edges().size() == 4);
    CHECK(g.max_degree() == 2);
    CHECK(g.is_path());
  }
  CHECK_THROWS_AS(make_path(0), Error);
}

TEST_CASE("make_comb") {
  SUBCASE("M=1 spine=3") {
    Graph g = make_comb(1, 3);
    CHECK(g.n_vertices() == 6);
    CHECK(g.edges().size() == 5);
  }
  SUBCASE("M=2 spine=4 places twigs at spine positions 2 and 4") {
    Graph g = make_comb(2, 4);
    // construction oracle: spine 0..3, twig k hangs off spine index (position - 1)
    CHECK(g.n_vertices() == 6);
    CHECK(g.meta().twig_positions == std::vector<std::size_t>{2, 4});
    CHECK(g.has_edge({1, 4}));
    CHECK(g.has_edge({3, 5}));
    CHECK(g.degree(4) == 1);
    CHECK(g.degree(5) == 1);
    CHECK(g.meta().comb_period == 2);
  }
  SUBCASE("period beyond the spine gives a plain path") {
    Graph g = make_comb(10, 5);
    CHECK(g.n_vertices() == 5);
    CHECK(g.is_path());
    CHECK(g.meta().kind == Family::comb);
  }
  CHECK_THROWS_AS(make_comb(0, 3), Error);
}

TEST_CASE("make_halfline") {
  SUBCASE("f(k)=3k, five extras") {
    HalfLineSpec spec{20, {3, 6, 9, 12, 15}};
    Graph g = make_halfline(spec);
    CHECK(g.n_vertices() == 25);
    const auto& m = g.meta();
    for (std::size_t k = 0; k < 5; ++k) {
      // u_{k+1} is joined to v_{3(k+1)}, which is spine index 3(k+1)-1
      CHECK(g.has_edge({m.spine[3 * (k + 1) - 1], m.extras[k]}));
      CHECK(g.degree(m.extras[k]) == 1);
    }
  }
  SUBCASE("no extras is a plain path") {
    Graph g = make_halfline({7, {}});
    CHECK(g.is_path());
    CHECK(g.n_vertices() == 7);
  }
  SUBCASE("f(1)=1 attaches to the start vertex") {
    Graph g = make_halfline({4, {1}});
    CHECK(g.has_edge({0, 4}));
    CHECK(g.degree(0) == 2);
  }
  SUBCASE("invalid tables") {
    CHECK_THROWS_AS(make_halfline({10, {3, 3}}), Error);
    CHECK_THROWS_AS(make_halfline({10, {4, 2}}), Error);
    CHECK_THROWS_AS(make_halfline({10, {11}}), Error);
    CHECK_THROWS_AS(make_halfline({10, {0}}), Error);
  }
  SUBCASE("linear helper stops at the spine end") {
    auto spec = HalfLineSpec::linear(25, 3);
    CHECK(spec.extra_count() == 8);
    CHECK(spec.f_table.back() == 24);
  }
}

TEST_CASE("harmonic diagnostic is monotone and matches direct summation") {
  auto spec = HalfLineSpec::linear(300, 3);
  auto sums = harmonic_diagnostic(spec);
  REQUIRE(sums.size() == spec.f_table.size());
  double direct = 0.0;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    direct += 1.0 / (3.0 * static_cast<double>(k + 1));
    CHECK(sums[k] == doctest::Approx(direct).epsilon(1e-14));
    if (k > 0) CHECK(sums[k] >= sums[k - 1]);
  }
}

TEST_CASE("graph_distance") {
  Graph p3 = make_path(3);
  CHECK(graph_distance(p3, 0, 2) == 2);
  CHECK(graph_distance(p3, 1, 1) == 0);
  Graph comb = make_comb(1, 3);
  for (Vertex i = 0; i < 3; ++i) CHECK(graph_distance(comb, i, 3 + i) == 1);
  CHECK_THROWS_AS(graph_distance(p3, 0, 7), Error);
}

TEST_CASE("validation rejects loops, duplicates and disconnected input") {
  CHECK_THROWS_AS(Graph::make(3, {{0, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(Graph::make(3, {{0, 1}, {1, 0}, {1, 2}}), Error);
  CHECK_THROWS_AS(Graph::make(4, {{0, 1}, {2, 3}}), Error);
  CHECK_THROWS_AS(Graph::make(2, {{0, 5}}), Error);
  try {
    Graph::make(4, {{0, 1}, {2, 3}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_graph);
  }
}

TEST_CASE("property: distances are symmetric and satisfy the triangle inequality") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 18;
    Graph g = make_random_connected(n, rng() % 10, rng);
    std::vector<std::vector<std::size_t>> d;
    for (Vertex x = 0; x < n; ++x) d.push_back(distances_from(g, x));
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) {
        CHECK(d[a][b] == d[b][a]);
        for (Vertex c = 0; c < n; ++c) CHECK(d[a][c] <= d[a][b] + d[b][c]);
      }
  }
}

TEST_CASE("property: every generator yields a simple connected graph") {
  std::mt19937_64 rng(3);
  std::vector<Graph> graphs{make_path(9), make_comb(3, 12), make_twigged(10, {2, 3, 5, 7}),
                            make_halfline(HalfLineSpec::linear(60, 3))};
  for (int i = 0; i < 10; ++i) graphs.push_back(make_random_connected(15, i, rng));
  for (const Graph& g : graphs) {
    const auto dist = distances_from(g, 0);
    for (std::size_t d : dist) CHECK(d < g.n_vertices());
    std::size_t max_deg = 0;
    for (Vertex x = 0; x < g.n_vertices(); ++x) {
      max_deg = std::max(max_deg, g.degree(x));
      for (Vertex y : g.neighbors(x)) CHECK(y != x);
    }
    CHECK(max_deg == g.max_degree());
  }
}

TEST_CASE("path_order and structure predicates") {
  Graph g = Graph::make(4, {{2, 0}, {0, 3}, {3, 1}});
  CHECK(g.is_path());
  CHECK(g.path_order() == std::vector<Vertex>{1, 3, 0, 2});
  CHECK_FALSE(make_comb(1, 3).is_path());
  CHECK(make_comb(1, 3).is_tree());
  CHECK_THROWS_AS(make_comb(1, 3).path_order(), Error);
}

TEST_CASE("connects") {
  std::vector<Vertex> region{0, 1, 2};
  std::vector<Edge> chain{{0, 1}, {1, 2}};
  std::vector<Edge> gap{{0, 1}};
  std::vector<Edge> outside{{0, 1}, {1, 5}};
  CHECK(connects(region, chain));
  CHECK_FALSE(connects(region, gap));
  CHECK_FALSE(connects(region, outside));
}
