#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"

namespace aqua {

enum class UpperMethod { cap_greedy, trivial_max, exact };

const char* to_string(UpperMethod m);

/// Bounds on kappa, the supremum of levels reachable at a target vertex.
/// `lower` is certified by replaying `witness`.
struct KappaEstimate {
  double lower = 0.0;
  MoveSequence witness;
  double upper = 1.0;
  UpperMethod upper_method = UpperMethod::trivial_max;
  std::optional<double> exact;
  bool partial = false;  ///< search stopped at its expansion budget
  std::size_t expansions = 0;
  std::vector<std::string> warnings;
};

/// Single edge, target vertex 1: max(u1, (u1 + u2) / 2).
double kappa_exact_edge(double u1, double u2);

/// Path on three vertices with 1-based target: 1 is an end, 2 the middle.
double kappa_exact_path3(std::array<double, 3> levels, int target);

/// Closed form for the instances that have one (single edge, 3-path), with
/// `v` a graph vertex.
std::optional<double> closed_form_kappa(const Graph& g, const WaterProfile& p0, Vertex v);

/// Maximizes sum xi(u) p0(u) subject to sum xi = 1 and
/// 0 <= xi(u) <= 1/(d(v,u)+1), filling greedily by descending level.
/// Valid upper bound on trees.
double kappa_upper_cap(const Graph& g, const WaterProfile& p0, Vertex v);

struct SearchSettings {
  std::size_t depth = 4;
  std::vector<double> mu_grid{0.5};
  std::size_t beam = 64;
  std::size_t max_expansions = 5'000'000;
  double dedup_quantum = 1e-9;

  /// {k/32 : 1 <= k <= 16}
  static std::vector<double> refined_grid();
};

/// Beam search over move sequences of length <= depth with mu from the grid.
KappaEstimate kappa_search(const Graph& g, const WaterProfile& p0, Vertex v,
                           const SearchSettings& settings = {});

/// kappa_search, tightened by the closed form where one exists.
KappaEstimate estimate_kappa(const Graph& g, const WaterProfile& p0, Vertex v,
                             const SearchSettings& settings = {}, bool use_closed_form = true);

}  // namespace aqua
