#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"
#include "aqua/optimizer.hpp"

namespace aqua {

struct LevelRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Independent initial levels, uniform on a per-vertex range (lo == hi is a
/// point mass).
struct ProfileLaw {
  enum class Kind { uniform01, bounded, constant, per_vertex };

  Kind kind = Kind::uniform01;
  double bound = 1.0;  ///< C for `bounded`
  double value = 0.5;  ///< for `constant`
  std::vector<LevelRange> ranges;

  static ProfileLaw uniform01() { return {}; }
  static ProfileLaw bounded(double c);
  static ProfileLaw constant(double level);
  static ProfileLaw per_vertex(std::vector<LevelRange> ranges);

  LevelRange range_for(Vertex x) const;
};

const char* to_string(ProfileLaw::Kind kind);
void validate(const ProfileLaw& law, std::size_t n_vertices);

/// Draws one level per vertex in index order from a generator seeded by `seed`.
WaterProfile sample_profile(const Graph& g, const ProfileLaw& law, std::uint64_t seed);

/// Half-line sampling where the level of v_j and of u_k depend only on
/// (seed, role, index), so nested truncations share their common levels.
WaterProfile sample_halfline_profile(const Graph& g, const ProfileLaw& law, std::uint64_t seed);

// Closed-form distribution functions of kappa under i.i.d. unif(0,1) levels.
double cdf_edge(double x);       ///< single edge, either vertex
double cdf_path3_end(double x);  ///< 3-path, end vertex

/// Sorted sample with right-continuous step CDF.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t size() const { return samples_.size(); }
  std::span<const double> samples() const { return samples_; }
  double operator()(double x) const;  ///< fraction <= x
  double left_limit(double x) const;  ///< fraction < x

 private:
  std::vector<double> samples_;
};

/// sup |F_emp - F_ref| over both sides of every sample point.
double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& ref);

/// Dvoretzky-Kiefer-Wolfowitz radius: P(KS > r) <= alpha.
double dkw_radius(std::size_t n, double alpha);

using KappaEvaluator = std::function<double(const Graph&, const WaterProfile&, Vertex)>;

/// Closed form kappa; throws unsupported_structure where none exists.
KappaEvaluator exact_evaluator();
/// Search lower bound on kappa.
KappaEvaluator search_evaluator(SearchSettings settings);

/// Trial i samples its profile with derive_seed(seed, mc-stream, i).
EmpiricalCdf mc_kappa_cdf(const Graph& g, Vertex v, const ProfileLaw& law,
                          const KappaEvaluator& evaluator, std::size_t trials, std::uint64_t seed,
                          std::size_t threads = 1);

/// Every window average over [v-m, v+n] inside the path lies in
/// [1/2 - eps, 1/2 + eps] (1e-12 slack).
bool is_two_sided_flat(const Graph& g, const WaterProfile& p, Vertex v, double eps);

/// Deterministic flat profile on a path of n vertices: 1/2 plus noise of
/// amplitude eps/2, and outside radius ceil(2*spike/eps) of v alternating
/// +-spike pairs whose partial sums from v stay within [0, spike].
WaterProfile make_flat_profile(std::size_t n, Vertex v, double eps, std::uint64_t seed,
                               double spike = 0.5);

/// Rejection sampler for flat profiles; throws resource_budget after
/// `max_attempts` draws.
WaterProfile sample_flat_profile(const Graph& g, Vertex v, double eps, const ProfileLaw& law,
                                 std::uint64_t seed, std::size_t max_attempts);

struct StuckBandResult {
  double max_deviation = 0.0;  ///< max |eta_t(v) - 1/2| over t
  double min_level = 0.5;
  double max_level = 0.5;
  std::size_t margin = 0;
  std::size_t moves = 0;
  bool within_band = true;  ///< max_deviation <= 6 eps
};

/// Random edges with both ends at least `margin` from the path ends, random
/// mu in (0, 1/2]. margin = 0 selects the default n/4.
StuckBandResult stuck_band_experiment(const Graph& g, const WaterProfile& p, Vertex v, double eps,
                                      std::size_t adversary_moves, std::uint64_t seed,
                                      std::size_t margin = 0);

}  // namespace aqua
