#include "aqua/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aqua {

WaterProfile::WaterProfile(std::vector<double> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const double x = levels_[i];
    if (!(x >= 0.0 && x <= 1.0))
      throw Error(ErrorCode::out_of_range,
                  "level at vertex " + std::to_string(i) + " is outside [0, 1]");
  }
}

WaterProfile WaterProfile::constant(std::size_t n, double level) {
  return WaterProfile(std::vector<double>(n, level));
}

double WaterProfile::sum() const { return std::accumulate(levels_.begin(), levels_.end(), 0.0); }

double WaterProfile::max() const {
  return levels_.empty() ? 0.0 : *std::max_element(levels_.begin(), levels_.end());
}

Move::Move(Edge e, double m) : edge(e), mu(m) {
  if (!(m >= 0.0 && m <= 0.5)) throw Error(ErrorCode::invalid_move, "mu must lie in [0, 1/2]");
}

void validate_move(const Graph& g, const Move& m) {
  if (!(m.mu >= 0.0 && m.mu <= 0.5)) throw Error(ErrorCode::invalid_move, "mu must lie in [0, 1/2]");
  if (!g.has_edge(m.edge))
    throw Error(ErrorCode::invalid_move, "edge <" + std::to_string(m.edge.u) + "," +
                                             std::to_string(m.edge.v) + "> is not in the graph");
}

static void check_size(const Graph& g, const WaterProfile& p) {
  if (p.size() != g.n_vertices())
    throw Error(ErrorCode::invalid_size, "profile size does not match graph");
}

WaterProfile apply_move(const Graph& g, WaterProfile p, const Move& m) {
  check_size(g, p);
  validate_move(g, m);
  average_pair(p.mutable_levels(), m.edge, m.mu);
  return p;
}

WaterProfile apply_sequence(const Graph& g, WaterProfile p, std::span<const Move> moves) {
  check_size(g, p);
  for (const Move& m : moves) validate_move(g, m);
  for (const Move& m : moves) average_pair(p.mutable_levels(), m.edge, m.mu);
  return p;
}

std::vector<WaterProfile> trace_sequence(const Graph& g, WaterProfile p, std::span<const Move> moves) {
  check_size(g, p);
  for (const Move& m : moves) validate_move(g, m);
  std::vector<WaterProfile> states;
  states.reserve(moves.size() + 1);
  states.push_back(p);
  for (const Move& m : moves) {
    average_pair(p.mutable_levels(), m.edge, m.mu);
    states.push_back(p);
  }
  return states;
}

double energy(const WaterProfile& p, std::span<const Vertex> region) {
  double w = 0.0;
  for (Vertex x : region) {
    if (x >= p.size()) throw Error(ErrorCode::invalid_vertex, "region vertex out of range");
    w += p[x] * p[x];
  }
  return w;
}

double energy_delta(double a, double b, double mu) {
  const double diff = b - a;
  return 2.0 * mu * (1.0 - mu) * diff * diff;
}

void SweepSchedule::append(SweepBlock block) {
  if (block.tail_moves > block.edges.size())
    throw Error(ErrorCode::invalid_spec, "tail longer than one sweep");
  if (block.move_count() == 0) return;
  blocks_.push_back(std::move(block));
}

std::size_t SweepSchedule::move_count() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.move_count();
  return total;
}

SweepSchedule SweepSchedule::reversed() const {
  SweepSchedule out;
  out.blocks_.assign(blocks_.rbegin(), blocks_.rend());
  for (auto& b : out.blocks_) b.reversed = !b.reversed;
  return out;
}

namespace {

template <typename Visit>
void visit_block(const SweepBlock& b, Visit&& visit) {
  const std::size_t m = b.edges.size();
  if (!b.reversed) {
    for (std::size_t s = 0; s < b.full_sweeps; ++s)
      for (std::size_t i = 0; i < m; ++i) visit(b.edges[i], b.mu);
    for (std::size_t i = 0; i < b.tail_moves; ++i) visit(b.edges[i], b.mu);
  } else {
    for (std::size_t i = b.tail_moves; i-- > 0;) visit(b.edges[i], b.mu);
    for (std::size_t s = 0; s < b.full_sweeps; ++s)
      for (std::size_t i = m; i-- > 0;) visit(b.edges[i], b.mu);
  }
}

}  // namespace

MoveSequence SweepSchedule::expand() const {
  MoveSequence out;
  out.reserve(move_count());
  for (const auto& b : blocks_)
    visit_block(b, [&](Edge e, double mu) { out.emplace_back(e, mu); });
  return out;
}

void SweepSchedule::for_each_move(const std::function<void(const Move&)>& visit) const {
  for (const auto& b : blocks_) visit_block(b, [&](Edge e, double mu) { visit(Move(e, mu)); });
}

void apply_schedule(std::span<double> levels, const SweepSchedule& schedule) {
  for (const auto& b : schedule.blocks())
    visit_block(b, [&](Edge e, double mu) { average_pair(levels, e, mu); });
}

BalanceResult balance(const Graph& g, WaterProfile p, std::span<const Vertex> region,
                      std::span<const Edge> region_edges, double mu, double tol,
                      std::size_t sweep_budget) {
  check_size(g, p);
  if (!(mu > 0.0 && mu <= 0.5)) throw Error(ErrorCode::invalid_move, "balance needs mu in (0, 1/2]");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_spec, "tolerance must be positive");
  for (Vertex x : region)
    if (!g.has_vertex(x)) throw Error(ErrorCode::invalid_vertex, "region vertex out of range");
  for (const Edge& e : region_edges)
    if (!g.has_edge(e)) throw Error(ErrorCode::invalid_region, "region edge not in graph");
  if (!connects(region, region_edges))
    throw Error(ErrorCode::invalid_region, "edges do not connect the region");

  std::vector<Edge> order(region_edges.begin(), region_edges.end());
  std::sort(order.begin(), order.end());

  auto levels = p.mutable_levels();
  auto max_gap = [&] {
    double gap = 0.0;
    for (const Edge& e : order) gap = std::max(gap, std::abs(levels[e.u] - levels[e.v]));
    return gap;
  };

  BalanceResult result;
  while (max_gap() >= tol) {
    if (result.sweeps == sweep_budget)
      throw Error(ErrorCode::non_convergence, "balance exceeded sweep budget");
    for (const Edge& e : order) average_pair(levels, e, mu);
    ++result.sweeps;
  }
  result.profile = std::move(p);
  return result;
}

}  // namespace aqua
