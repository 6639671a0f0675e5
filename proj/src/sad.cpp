#include "aqua/sad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace aqua {

namespace {
constexpr double plateau_tol = 1e-12;
constexpr double cap_tol = 1e-10;
}  // namespace

SadProfile::SadProfile(std::vector<double> mass) : mass_(std::move(mass)) {
  for (double m : mass_)
    if (!(m >= 0.0)) throw Error(ErrorCode::out_of_range, "SAD mass must be nonnegative");
  if (!mass_.empty() && std::abs(total() - 1.0) > 1e-12)
    throw Error(ErrorCode::out_of_range, "SAD mass must sum to one");
}

SadProfile SadProfile::delta(std::size_t n, Vertex v) {
  if (v >= n) throw Error(ErrorCode::invalid_vertex, "unknown vertex " + std::to_string(v));
  std::vector<double> mass(n, 0.0);
  mass[v] = 1.0;
  return SadProfile(std::move(mass));
}

double SadProfile::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

SadProfile run_sad(const Graph& g, Vertex v, std::span<const Move> updates) {
  for (const Move& m : updates) validate_move(g, m);
  SadProfile xi = SadProfile::delta(g.n_vertices(), v);
  for (const Move& m : updates) average_pair(xi.mutable_mass(), m.edge, m.mu);
  return xi;
}

std::vector<SadProfile> trace_sad(const Graph& g, Vertex v, std::span<const Move> updates) {
  for (const Move& m : updates) validate_move(g, m);
  SadProfile xi = SadProfile::delta(g.n_vertices(), v);
  std::vector<SadProfile> states{xi};
  states.reserve(updates.size() + 1);
  for (const Move& m : updates) {
    average_pair(xi.mutable_mass(), m.edge, m.mu);
    states.push_back(xi);
  }
  return states;
}

MoveSequence dual_of(std::span<const Move> moves) { return MoveSequence(moves.rbegin(), moves.rend()); }

SweepSchedule dual_of(const SweepSchedule& schedule) { return schedule.reversed(); }

double DualityCheck::gap() const { return std::abs(lhs - rhs); }

DualityCheck verify_duality(const Graph& g, const WaterProfile& initial, Vertex v,
                            std::span<const Move> moves) {
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown vertex " + std::to_string(v));
  DualityCheck check;
  check.lhs = apply_sequence(g, initial, moves)[v];
  const MoveSequence reversed = dual_of(moves);
  const SadProfile xi = run_sad(g, v, reversed);
  for (Vertex u = 0; u < g.n_vertices(); ++u) check.rhs += xi[u] * initial[u];
  return check;
}

bool is_unimodal(std::span<const double> m) {
  const std::size_t n = m.size();
  if (n < 3) return true;
  // A valley is an entry strictly below some earlier and some later entry.
  std::vector<double> suffix_max(n);
  suffix_max[n - 1] = m[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) suffix_max[i] = std::max(m[i], suffix_max[i + 1]);
  double prefix_max = m[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (m[j] < std::min(prefix_max, suffix_max[j + 1]) - plateau_tol) return false;
    prefix_max = std::max(prefix_max, m[j]);
  }
  return true;
}

bool is_unimodal(const Graph& g, const SadProfile& profile) {
  const auto order = g.path_order();
  std::vector<double> ordered;
  ordered.reserve(order.size());
  for (Vertex x : order) ordered.push_back(profile[x]);
  return is_unimodal(ordered);
}

bool check_cap(const Graph& g, Vertex v, const SadProfile& profile) {
  if (!g.is_tree())
    throw Error(ErrorCode::unsupported_structure, "distance cap is only established on trees");
  const auto dist = distances_from(g, v);
  for (Vertex w = 0; w < g.n_vertices(); ++w)
    if (profile[w] > 1.0 / static_cast<double>(dist[w] + 1) + cap_tol) return false;
  return true;
}

bool is_one_sided(const Graph& g, Vertex v, std::span<const Move> updates) {
  if (!g.is_path()) throw Error(ErrorCode::unsupported_structure, "one-sided sharing is defined on paths");
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown vertex " + std::to_string(v));
  bool seen = false;
  Vertex side = 0;
  for (const Move& m : updates) {
    if (m.mu == 0.0) continue;
    if (m.edge.u != v && m.edge.v != v) continue;
    const Vertex other = m.edge.u == v ? m.edge.v : m.edge.u;
    if (seen && other != side) return false;
    seen = true;
    side = other;
  }
  return true;
}

bool is_mode(const SadProfile& profile, Vertex v) {
  const auto mass = profile.mass();
  const double top = *std::max_element(mass.begin(), mass.end());
  return profile[v] >= top - plateau_tol;
}

}  // namespace aqua
