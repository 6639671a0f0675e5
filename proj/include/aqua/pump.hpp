#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"

namespace aqua {

/// 1-based indices n (in extra-neighbor order) with level >= 1 - eps.
std::vector<std::size_t> select_indices(std::span<const double> extra_levels, double eps);

struct ProductBound {
  double product = 1.0;      ///< prod (1 - 1/(f + 2))
  double exponential = 1.0;  ///< exp(-sum 1/(f + 2))
};

/// Throws contract_violation if the product exceeds its exponential bound.
ProductBound product_bound(std::span<const std::size_t> f_values);

struct PumpSettings {
  double eps = 0.2;
  /// Slack for the runtime checks on the leakage bound, the final-level bound
  /// and the duality replay.
  double check_tol = 1e-9;
  std::size_t max_stages = static_cast<std::size_t>(-1);
  std::size_t sweep_budget = 1'000'000;  ///< per stage
};

struct PumpStage {
  std::size_t index = 0;    ///< N_k
  std::size_t f_value = 0;  ///< f(N_k)
  double mass = 0.0;        ///< SAD mass frozen at u_{N_k}
  double target = 0.0;      ///< (remaining mass) / (f(N_k) + 2)
  double cumulative = 0.0;
  double product_so_far = 1.0;
  std::size_t moves = 0;
};

struct PumpReport {
  std::vector<std::size_t> selected_indices;
  std::vector<std::size_t> skipped_indices;  ///< selected but beyond max_stages
  std::vector<PumpStage> stages;
  std::vector<double> stage_masses;
  ProductBound bound;
  double product_bound = 1.0;
  double total_mass_captured = 0.0;
  double final_level = 0.0;
  double sad_weighted_level = 0.0;  ///< sum xi_T(u) eta_0(u)
  std::size_t total_moves = 0;
  SweepSchedule sad_schedule;    ///< the SAD updates in time order
  SweepSchedule water_schedule;  ///< its dual, applied to the water profile
  std::vector<double> final_sad_mass;
};

/// Staged strategy on a half-line built by make_halfline, with target v_1.
/// Stage k balances the path (v_1, ..., v_{f(N_k)}, u_{N_k}) with mu = 1/2 in
/// the SAD picture until u_{N_k} holds remaining/(f(N_k)+2), then leaves it.
/// The SAD schedule is reversed into water moves and replayed on `initial`.
PumpReport run_pump(const Graph& g, const WaterProfile& initial, const PumpSettings& settings);

/// Partial sums S_N = sum_{n <= N} Y_n / f(n), Y_n i.i.d. Bernoulli(eps).
std::vector<double> divergence_diagnostic(const std::function<double(std::size_t)>& f, double eps,
                                          std::size_t n_max, std::uint64_t seed);

}  // namespace aqua
