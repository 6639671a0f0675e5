#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "aqua/graph.hpp"

namespace aqua {

/// Water levels per vertex, each in [0, 1] (fraction of barrel capacity).
class WaterProfile {
 public:
  WaterProfile() = default;
  explicit WaterProfile(std::vector<double> levels);

  static WaterProfile constant(std::size_t n, double level);

  std::size_t size() const { return levels_.size(); }
  double operator[](Vertex x) const { return levels_[x]; }
  std::span<const double> levels() const { return levels_; }
  std::span<double> mutable_levels() { return levels_; }
  double sum() const;
  double max() const;

  bool operator==(const WaterProfile&) const = default;

 private:
  std::vector<double> levels_;
};

/// One opened pipe: `mu` is the fraction of the level difference exchanged.
/// mu = 0 is a legal no-op.
struct Move {
  Edge edge;
  double mu = 0.5;

  Move() = default;
  Move(Edge e, double m);
  Move(Vertex a, Vertex b, double m) : Move(Edge(a, b), m) {}

  bool operator==(const Move&) const = default;
};

using MoveSequence = std::vector<Move>;

/// Checks mu range and edge membership.
void validate_move(const Graph& g, const Move& m);

/// In-place pairwise averaging of `levels[x]`, `levels[y]`; no validation.
inline void average_pair(std::span<double> levels, Edge e, double mu) {
  double& a = levels[e.u];
  double& b = levels[e.v];
  const double shift = mu * (b - a);
  a += shift;
  b -= shift;
}

WaterProfile apply_move(const Graph& g, WaterProfile p, const Move& m);
WaterProfile apply_sequence(const Graph& g, WaterProfile p, std::span<const Move> moves);

/// States eta_0 .. eta_T of a sequence run.
std::vector<WaterProfile> trace_sequence(const Graph& g, WaterProfile p, std::span<const Move> moves);

double energy(const WaterProfile& p, std::span<const Vertex> region);

/// Energy decrease of a single move on levels a, b: 2 mu (1 - mu) (b - a)^2.
double energy_delta(double a, double b, double mu);

/// Repeated sweeps over a fixed edge list with a fixed mu. A forward block
/// runs `full_sweeps` complete passes and then the first `tail_moves` edges;
/// a reversed block runs exactly that move list backwards.
struct SweepBlock {
  std::vector<Edge> edges;
  double mu = 0.5;
  std::size_t full_sweeps = 0;
  std::size_t tail_moves = 0;
  bool reversed = false;

  std::size_t move_count() const { return full_sweeps * edges.size() + tail_moves; }
};

/// Compact representation of long move sequences built from sweeps.
class SweepSchedule {
 public:
  void append(SweepBlock block);
  std::span<const SweepBlock> blocks() const { return blocks_; }
  std::size_t move_count() const;

  /// The same moves in reverse chronological order.
  SweepSchedule reversed() const;
  MoveSequence expand() const;
  void for_each_move(const std::function<void(const Move&)>& visit) const;

 private:
  std::vector<SweepBlock> blocks_;
};

/// Applies every move of the schedule to raw levels; no validation.
void apply_schedule(std::span<double> levels, const SweepSchedule& schedule);

struct BalanceResult {
  WaterProfile profile;
  std::size_t sweeps = 0;
};

/// Sweeps `region_edges` (sorted order) until every edge difference is below
/// `tol`. Levels off the region are untouched.
BalanceResult balance(const Graph& g, WaterProfile p, std::span<const Vertex> region,
                      std::span<const Edge> region_edges, double mu, double tol,
                      std::size_t sweep_budget = 1'000'000);

}  // namespace aqua
