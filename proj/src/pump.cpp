#include "aqua/pump.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aqua/random.hpp"
#include "aqua/sad.hpp"

namespace aqua {

std::vector<std::size_t> select_indices(std::span<const double> extra_levels, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::out_of_range, "eps must lie in (0, 1]");
  std::vector<std::size_t> out;
  const double threshold = 1.0 - eps;
  for (std::size_t n = 0; n < extra_levels.size(); ++n)
    if (extra_levels[n] >= threshold) out.push_back(n + 1);
  return out;
}

ProductBound product_bound(std::span<const std::size_t> f_values) {
  ProductBound b;
  double exponent = 0.0;
  for (std::size_t f : f_values) {
    if (f < 1) throw Error(ErrorCode::out_of_range, "f values must be >= 1");
    const double x = 1.0 / static_cast<double>(f + 2);
    b.product *= 1.0 - x;
    exponent += x;
  }
  b.exponential = std::exp(-exponent);
  // 1 - x <= e^{-x}
  if (b.product > b.exponential * (1.0 + 1e-12))
    throw Error(ErrorCode::contract_violation, "product exceeds its exponential bound");
  return b;
}

PumpReport run_pump(const Graph& g, const WaterProfile& initial, const PumpSettings& settings) {
  const FamilyMeta& meta = g.meta();
  if (meta.kind != Family::halfline)
    throw Error(ErrorCode::unsupported_structure, "pump strategy needs a half-line graph");
  if (initial.size() != g.n_vertices())
    throw Error(ErrorCode::invalid_size, "profile size does not match graph");
  if (!(settings.eps > 0.0 && settings.eps <= 1.0))
    throw Error(ErrorCode::out_of_range, "eps must lie in (0, 1]");

  PumpReport report;
  std::vector<double> extra_levels;
  for (Vertex u : meta.extras) extra_levels.push_back(initial[u]);
  report.selected_indices = select_indices(extra_levels, settings.eps);

  const Vertex start = meta.spine.front();
  std::vector<double> xi(g.n_vertices(), 0.0);
  xi[start] = 1.0;
  double remaining = 1.0;
  std::vector<std::size_t> f_used;

  for (std::size_t index : report.selected_indices) {
    if (report.stages.size() == settings.max_stages) {
      report.skipped_indices.push_back(index);
      continue;
    }
    const std::size_t f = meta.f_table[index - 1];
    const Vertex u = meta.extras[index - 1];

    SweepBlock block;
    block.mu = 0.5;
    for (std::size_t i = 0; i + 1 < f; ++i) block.edges.emplace_back(meta.spine[i], meta.spine[i + 1]);
    block.edges.emplace_back(meta.spine[f - 1], u);
    std::sort(block.edges.begin(), block.edges.end());

    const double target = remaining / static_cast<double>(f + 2);
    bool reached = false;
    while (!reached) {
      if (block.full_sweeps == settings.sweep_budget)
        throw Error(ErrorCode::stage_convergence,
                    "stage for index " + std::to_string(index) + " exceeded its sweep budget");
      for (std::size_t i = 0; i < block.edges.size(); ++i) {
        average_pair(xi, block.edges[i], block.mu);
        if (xi[u] >= target) {
          block.tail_moves = i + 1;
          reached = true;
          break;
        }
      }
      if (!reached) ++block.full_sweeps;
    }
    if (block.tail_moves == block.edges.size()) {
      ++block.full_sweeps;
      block.tail_moves = 0;
    }

    PumpStage stage;
    stage.index = index;
    stage.f_value = f;
    stage.mass = xi[u];
    stage.target = target;
    stage.moves = block.move_count();
    report.sad_schedule.append(std::move(block));

    // earlier extras are never touched again
    for (const PumpStage& prev : report.stages)
      if (xi[meta.extras[prev.index - 1]] != prev.mass)
        throw Error(ErrorCode::contract_violation, "frozen SAD mass changed");

    f_used.push_back(f);
    report.stage_masses.push_back(stage.mass);
    report.total_mass_captured += stage.mass;
    remaining = 1.0 - report.total_mass_captured;
    stage.cumulative = report.total_mass_captured;
    stage.product_so_far = product_bound(f_used).product;
    report.stages.push_back(stage);
  }

  report.bound = product_bound(f_used);
  report.product_bound = report.bound.product;
  report.total_moves = report.sad_schedule.move_count();
  report.final_sad_mass = xi;

  const double tol = settings.check_tol;
  if (1.0 - report.total_mass_captured > report.product_bound + tol)
    throw Error(ErrorCode::contract_violation, "captured mass violates the product leakage bound");

  report.water_schedule = dual_of(report.sad_schedule);
  std::vector<double> water(initial.levels().begin(), initial.levels().end());
  apply_schedule(water, report.water_schedule);
  report.final_level = water[start];
  for (Vertex x = 0; x < g.n_vertices(); ++x) report.sad_weighted_level += xi[x] * initial[x];

  if (std::abs(report.final_level - report.sad_weighted_level) > tol)
    throw Error(ErrorCode::contract_violation, "water replay disagrees with the SAD-weighted level");
  if (report.final_level < (1.0 - settings.eps) * report.total_mass_captured - tol)
    throw Error(ErrorCode::contract_violation, "final level below (1 - eps) * captured mass");
  return report;
}

std::vector<double> divergence_diagnostic(const std::function<double(std::size_t)>& f, double eps,
                                          std::size_t n_max, std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(ErrorCode::out_of_range, "eps must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<double> sums;
  sums.reserve(n_max);
  double s = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (uniform01(rng) < eps) s += 1.0 / f(n);
    sums.push_back(s);
  }
  return sums;
}

}  // namespace aqua
