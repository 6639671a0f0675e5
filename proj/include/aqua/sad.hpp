#pragma once

#include <span>
#include <vector>

#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"

namespace aqua {

/// Sharing-a-drink mass distribution: nonnegative, sums to one.
class SadProfile {
 public:
  SadProfile() = default;
  explicit SadProfile(std::vector<double> mass);

  /// Unit mass at `v`.
  static SadProfile delta(std::size_t n, Vertex v);

  std::size_t size() const { return mass_.size(); }
  double operator[](Vertex x) const { return mass_[x]; }
  std::span<const double> mass() const { return mass_; }
  std::span<double> mutable_mass() { return mass_; }
  double total() const;

 private:
  std::vector<double> mass_;
};

/// Runs the sharing process from delta_v with the given updates, in order.
SadProfile run_sad(const Graph& g, Vertex v, std::span<const Move> updates);
std::vector<SadProfile> trace_sad(const Graph& g, Vertex v, std::span<const Move> updates);

/// The time-reversed sequence: same (edge, mu) pairs, last move first.
MoveSequence dual_of(std::span<const Move> moves);
SweepSchedule dual_of(const SweepSchedule& schedule);

struct DualityCheck {
  double lhs = 0.0;  ///< final water level at v
  double rhs = 0.0;  ///< SAD-weighted average of the initial levels
  double gap() const;
};

DualityCheck verify_duality(const Graph& g, const WaterProfile& initial, Vertex v,
                            std::span<const Move> moves);

/// Weakly increasing then weakly decreasing, with a 1e-12 plateau tolerance.
bool is_unimodal(std::span<const double> ordered_mass);
/// Unimodality along the linear order of a path graph.
bool is_unimodal(const Graph& g, const SadProfile& profile);

/// profile[w] <= 1/(d(v,w)+1) + 1e-10 for every w. Trees only: no cap is
/// known for graphs with cycles.
bool check_cap(const Graph& g, Vertex v, const SadProfile& profile);

/// True iff every update touching `v` uses the same neighbor of `v` on a path,
/// i.e. v shares only to one side.
bool is_one_sided(const Graph& g, Vertex v, std::span<const Move> updates);

/// v attains the maximum mass, up to 1e-12.
bool is_mode(const SadProfile& profile, Vertex v);

}  // namespace aqua
