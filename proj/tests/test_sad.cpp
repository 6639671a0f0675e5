#include <doctest.h>

#include <cmath>
#include <random>

#include "aqua/sad.hpp"

using namespace aqua;

namespace {

MoveSequence random_moves(const Graph& g, std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mu(0.0, 0.5);
  MoveSequence s;
  for (std::size_t t = 0; t < count; ++t) {
    const Edge e = g.edges()[rng() % g.edges().size()];
    s.emplace_back(e, 0.5 - mu(rng));  // (0, 1/2]
  }
  return s;
}

WaterProfile random_profile(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> levels(n);
  for (double& x : levels) x = unit(rng);
  return WaterProfile(levels);
}

}  // namespace

TEST_CASE("run_sad") {
  Graph g = make_path(4);
  SUBCASE("empty updates give delta_v") {
    auto xi = run_sad(g, 2, {});
    for (Vertex x = 0; x < 4; ++x) CHECK(xi[x] == (x == 2 ? 1.0 : 0.0));
  }
  SUBCASE("one full average splits the mass") {
    MoveSequence s{{1, 2, 0.5}};
    auto xi = run_sad(g, 2, s);
    CHECK(xi[1] == 0.5);
    CHECK(xi[2] == 0.5);
  }
  SUBCASE("repeated balancing of a window tends to the uniform mass") {
    MoveSequence s;
    for (int r = 0; r < 200; ++r) {
      s.emplace_back(Edge{0, 1}, 0.5);
      s.emplace_back(Edge{1, 2}, 0.5);
    }
    auto xi = run_sad(g, 1, s);
    for (Vertex x = 0; x < 3; ++x) CHECK(std::abs(xi[x] - 1.0 / 3.0) <= 1e-9);
    CHECK(xi[3] == 0.0);
  }
  CHECK_THROWS_AS(SadProfile({0.5, 0.6}), Error);
  CHECK_THROWS_AS(SadProfile({1.5, -0.5}), Error);
}

TEST_CASE("dual_of reverses the sequence") {
  CHECK(dual_of(MoveSequence{}).empty());
  MoveSequence s{{0, 1, 0.1}, {1, 2, 0.2}, {2, 3, 0.3}};
  MoveSequence expected{{2, 3, 0.3}, {1, 2, 0.2}, {0, 1, 0.1}};
  CHECK(dual_of(s) == expected);
}

TEST_CASE("verify_duality") {
  Graph g = make_path(3);
  WaterProfile p0({0.2, 0.9, 0.4});
  SUBCASE("T = 0") {
    auto d = verify_duality(g, p0, 1, {});
    CHECK(d.lhs == 0.9);
    CHECK(d.rhs == 0.9);
  }
  SUBCASE("single full average") {
    MoveSequence s{{1, 2, 0.5}};
    auto d = verify_duality(g, p0, 1, s);
    CHECK(d.lhs == doctest::Approx(0.65));
    CHECK(d.rhs == doctest::Approx(0.65));
  }
}

TEST_CASE("property: duality on random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 19;
    Graph g = make_random_connected(n, rng() % 8, rng);
    const WaterProfile p0 = random_profile(n, rng);
    const MoveSequence s = random_moves(g, rng() % 51, rng);
    const Vertex v = rng() % n;
    // independent route: water forward, SAD on the reversed sequence
    const double water = apply_sequence(g, p0, s)[v];
    const SadProfile xi = run_sad(g, v, dual_of(s));
    double weighted = 0.0;
    for (Vertex u = 0; u < n; ++u) weighted += xi[u] * p0[u];
    CHECK(std::abs(water - weighted) <= 1e-10);
    CHECK(verify_duality(g, p0, v, s).gap() <= 1e-10);
    CHECK(std::abs(xi.total() - 1.0) <= 1e-12);
  }
}

TEST_CASE("is_unimodal") {
  std::vector<double> delta{0.0, 1.0, 0.0};
  std::vector<double> bump{0.2, 0.5, 0.3};
  std::vector<double> twin{0.4, 0.1, 0.5};
  std::vector<double> plateau{0.25, 0.25, 0.25, 0.25};
  CHECK(is_unimodal(delta));
  CHECK(is_unimodal(bump));
  CHECK_FALSE(is_unimodal(twin));
  CHECK(is_unimodal(plateau));
  CHECK_THROWS_AS(is_unimodal(make_comb(1, 3), SadProfile::delta(6, 0)), Error);
}

TEST_CASE("check_cap") {
  Graph g = make_path(3);
  CHECK(check_cap(g, 1, SadProfile::delta(3, 1)));
  MoveSequence s{{1, 2, 0.5}};
  CHECK(check_cap(g, 1, run_sad(g, 1, s)));
  CHECK_FALSE(check_cap(g, 1, SadProfile({0.0, 0.4, 0.6})));
  Graph cycle = Graph::make(3, {{0, 1}, {1, 2}, {0, 2}});
  try {
    check_cap(cycle, 0, SadProfile::delta(3, 0));
    FAIL("expected unsupported-structure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_structure);
  }
}

TEST_CASE("property: SAD on paths is unimodal and capped") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    Graph g = make_path(n);
    const Vertex v = rng() % n;
    const MoveSequence s = random_moves(g, rng() % 200, rng);
    for (const SadProfile& xi : trace_sad(g, v, s)) {
      CHECK(is_unimodal(g, xi));
      CHECK(check_cap(g, v, xi));
    }
  }
}

TEST_CASE("property: SAD on random trees respects the cap") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    Graph g = make_random_connected(n, 0, rng);
    REQUIRE(g.is_tree());
    const Vertex v = rng() % n;
    CHECK(check_cap(g, v, run_sad(g, v, random_moves(g, 60, rng))));
  }
}

TEST_CASE("one-sided sharing keeps v a mode") {
  Graph g = make_path(9);
  const Vertex v = 4;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    // v only ever exchanges with its right neighbor
    MoveSequence s;
    std::uniform_real_distribution<double> mu(0.0, 0.5);
    for (int t = 0; t < 80; ++t) {
      Edge e = g.edges()[rng() % g.edges().size()];
      if (e == Edge{3, 4}) e = Edge{4, 5};
      s.emplace_back(e, 0.5 - mu(rng));
    }
    REQUIRE(is_one_sided(g, v, s));
    for (const SadProfile& xi : trace_sad(g, v, s)) CHECK(is_mode(xi, v));
  }
  MoveSequence both{{3, 4, 0.5}, {4, 5, 0.5}};
  CHECK_FALSE(is_one_sided(g, v, both));
  MoveSequence idle{{3, 4, 0.0}, {4, 5, 0.5}};
  CHECK(is_one_sided(g, v, idle));
}
