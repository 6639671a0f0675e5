#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aqua/distribution.hpp"

using namespace aqua;

namespace {

/// P(kappa <= x) for the 3-path end vertex by midpoint quadrature over the
/// unit cube, using only the kappa closed form.
double path3_end_lattice(double x, int steps) {
  std::size_t hits = 0;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j)
      for (int k = 0; k < steps; ++k) {
        const double a = (i + 0.5) / steps, b = (j + 0.5) / steps, c = (k + 0.5) / steps;
        if (kappa_exact_path3({a, b, c}, 1) <= x) ++hits;
      }
  return static_cast<double>(hits) / std::pow(steps, 3);
}

}  // namespace

TEST_CASE("sample_profile") {
  Graph g = make_path(5);
  auto p = sample_profile(g, ProfileLaw::constant(0.5), 1);
  for (Vertex x = 0; x < 5; ++x) CHECK(p[x] == 0.5);
  CHECK_FALSE(sample_profile(g, ProfileLaw::uniform01(), 1) == sample_profile(g, ProfileLaw::uniform01(), 2));
  CHECK(sample_profile(g, ProfileLaw::uniform01(), 7) == sample_profile(g, ProfileLaw::uniform01(), 7));

  Graph big = make_path(100'000);
  auto q = sample_profile(big, ProfileLaw::uniform01(), 3);
  CHECK(std::abs(q.sum() / 100'000.0 - 0.5) <= 0.01);

  auto r = sample_profile(g, ProfileLaw::bounded(0.3), 5);
  CHECK(r.max() <= 0.3);
  CHECK_THROWS_AS(sample_profile(g, ProfileLaw::per_vertex({{0.0, 1.0}}), 1), Error);
}

TEST_CASE("halfline sampling shares levels between nested truncations") {
  Graph small = make_halfline(HalfLineSpec::linear(30, 3));
  Graph large = make_halfline(HalfLineSpec::linear(60, 3));
  auto a = sample_halfline_profile(small, ProfileLaw::uniform01(), 11);
  auto b = sample_halfline_profile(large, ProfileLaw::uniform01(), 11);
  for (std::size_t j = 0; j < 30; ++j) CHECK(a[small.meta().spine[j]] == b[large.meta().spine[j]]);
  for (std::size_t k = 0; k < small.meta().extras.size(); ++k)
    CHECK(a[small.meta().extras[k]] == b[large.meta().extras[k]]);
}

TEST_CASE("cdf_edge") {
  CHECK(cdf_edge(0.0) == 0.0);
  CHECK(cdf_edge(0.5) == doctest::Approx(0.375));
  CHECK(cdf_edge(1.0) == 1.0);
  CHECK_THROWS_AS(cdf_edge(1.5), Error);
  // both pieces at the breakpoint
  CHECK(std::abs(1.5 * 0.25 - (0.5 - 0.5 * 0.25)) <= 1e-12);
}

TEST_CASE("cdf_path3_end") {
  CHECK(cdf_path3_end(1.0 / 3.0) == doctest::Approx(8.0 / 81.0).epsilon(1e-12));
  CHECK(cdf_path3_end(0.5) == doctest::Approx(5.0 / 16.0).epsilon(1e-12));
  CHECK(cdf_path3_end(1.0) == 1.0);
  CHECK(cdf_path3_end(0.0) == 0.0);
  for (double x : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    CHECK(std::abs(cdf_path3_end(std::nextafter(x, 0.0)) - cdf_path3_end(x)) <= 1e-12);
    CHECK(std::abs(cdf_path3_end(std::nextafter(x, 1.0)) - cdf_path3_end(x)) <= 1e-12);
  }
  for (double x : {0.2, 0.4, 0.55, 0.75, 0.9})
    CHECK(std::abs(cdf_path3_end(x) - path3_end_lattice(x, 60)) <= 0.01);
}

TEST_CASE("property: closed-form CDFs are monotone and sandwiched") {
  double prev_e = 0.0, prev_p = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double fe = cdf_edge(x), fp = cdf_path3_end(x);
    CHECK(fe >= prev_e);
    CHECK(fp >= prev_p);
    CHECK(x * x <= fe + 1e-15);
    CHECK(fe <= x + 1e-15);
    prev_e = fe;
    prev_p = fp;
  }
}

TEST_CASE("EmpiricalCdf and ks_distance") {
  EmpiricalCdf four({0.4, 0.1, 0.3, 0.2});
  CHECK(four(0.25) == 0.5);
  CHECK(four.left_limit(0.2) == 0.25);
  CHECK(ks_distance(four, [](double x) { return x; }) == doctest::Approx(0.6));

  EmpiricalCdf point(std::vector<double>(10, 0.0));
  CHECK(ks_distance(point, [](double x) { return x; }) == doctest::Approx(1.0));
  CHECK(dkw_radius(1'000'000, 1e-6) < 0.005);
}

TEST_CASE("mc_kappa_cdf") {
  SUBCASE("degenerate law is a step at 1/2") {
    auto cdf = mc_kappa_cdf(make_path(2), 0, ProfileLaw::constant(0.5), exact_evaluator(), 100, 1);
    CHECK(cdf(0.4999) == 0.0);
    CHECK(cdf(0.5) == 1.0);
  }
  SUBCASE("edge CDF at moderate sample size") {
    auto cdf = mc_kappa_cdf(make_path(2), 0, ProfileLaw::uniform01(), exact_evaluator(), 50'000, 3);
    CHECK(ks_distance(cdf, cdf_edge) <= dkw_radius(50'000, 1e-6));
  }
  SUBCASE("thread count does not change the result") {
    auto a = mc_kappa_cdf(make_path(3), 0, ProfileLaw::uniform01(), exact_evaluator(), 2000, 5, 1);
    auto b = mc_kappa_cdf(make_path(3), 0, ProfileLaw::uniform01(), exact_evaluator(), 2000, 5, 3);
    CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin(), b.samples().end()));
  }
  SUBCASE("exact evaluator refuses graphs without a closed form") {
    CHECK_THROWS_AS(
        mc_kappa_cdf(make_path(4), 0, ProfileLaw::uniform01(), exact_evaluator(), 10, 1), Error);
  }
  CHECK_THROWS_AS(mc_kappa_cdf(make_path(2), 0, ProfileLaw::uniform01(), exact_evaluator(), 0, 1), Error);
}

TEST_CASE("is_two_sided_flat") {
  Graph g = make_path(21);
  CHECK(is_two_sided_flat(g, WaterProfile::constant(21, 0.5), 10, 0.001));
  std::vector<double> spike(21, 0.5);
  spike[10] = 1.0;
  CHECK_FALSE(is_two_sided_flat(g, WaterProfile(spike), 10, 0.1));
  std::vector<double> alt(21);
  for (std::size_t i = 0; i < 21; ++i) alt[i] = 0.5 + ((i % 2) ? 0.05 : -0.05);
  CHECK(is_two_sided_flat(g, WaterProfile(alt), 10, 0.1));
}

TEST_CASE("make_flat_profile is flat and not constant") {
  for (double eps : {0.02, 0.05, 0.1}) {
    auto p = make_flat_profile(200, 100, eps, 4);
    CHECK(is_two_sided_flat(make_path(200), p, 100, eps));
    CHECK(p.max() == doctest::Approx(1.0));
  }
}

TEST_CASE("stuck_band_experiment") {
  Graph g = make_path(200);
  SUBCASE("constant 1/2 stays exactly at 1/2") {
    auto r = stuck_band_experiment(g, WaterProfile::constant(200, 0.5), 100, 0.02, 1000, 1);
    CHECK(r.max_deviation == 0.0);
  }
  SUBCASE("no moves") {
    auto p = make_flat_profile(200, 100, 0.05, 2);
    auto r = stuck_band_experiment(g, p, 100, 0.05, 0, 1);
    CHECK(r.max_deviation == doctest::Approx(std::abs(p[100] - 0.5)));
    CHECK(r.max_deviation <= 0.05);
  }
  SUBCASE("random adversary stays in the band") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      auto p = make_flat_profile(200, 100, 0.05, seed);
      auto r = stuck_band_experiment(g, p, 100, 0.05, 10'000, seed);
      CHECK(r.max_deviation <= 0.3);
      CHECK(r.within_band);
      CHECK(r.margin == 50);
    }
  }
  SUBCASE("non-flat input is rejected") {
    std::vector<double> bad(200, 0.5);
    bad[100] = 1.0;
    try {
      stuck_band_experiment(g, WaterProfile(bad), 100, 0.05, 10, 1);
      FAIL("expected invalid-precondition");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_precondition);
    }
  }
}
