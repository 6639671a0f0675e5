#include "aqua/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace aqua {

const char* to_string(UpperMethod m) {
  switch (m) {
    case UpperMethod::cap_greedy: return "cap-greedy";
    case UpperMethod::trivial_max: return "trivial-max";
    case UpperMethod::exact: return "exact";
  }
  return "trivial-max";
}

namespace {

void check_level(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::out_of_range, "level outside [0, 1]");
}

/// Greedy fractional fill; `dist` are BFS distances from the target.
double cap_fill(std::span<const double> levels, std::span<const std::size_t> dist) {
  std::vector<Vertex> order(levels.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return levels[a] > levels[b]; });
  double remaining = 1.0;
  double value = 0.0;
  for (Vertex u : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(remaining, 1.0 / static_cast<double>(dist[u] + 1));
    value += take * levels[u];
    remaining -= take;
  }
  return value;
}

struct QuantizedHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t x : key) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Candidate {
  std::vector<double> levels;
  MoveSequence moves;
  double at_target = 0.0;
  double key = 0.0;
};

bool lexicographically_less(const MoveSequence& a, const MoveSequence& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Move& x, const Move& y) {
                                        if (x.edge != y.edge) return x.edge < y.edge;
                                        return x.mu < y.mu;
                                      });
}

}  // namespace

double kappa_exact_edge(double u1, double u2) {
  check_level(u1);
  check_level(u2);
  return std::max(u1, 0.5 * (u1 + u2));
}

double kappa_exact_path3(std::array<double, 3> levels, int target) {
  for (double x : levels) check_level(x);
  const auto [a, b, c] = levels;
  switch (target) {
    case 1:
      return std::max({a, (a + b) / 2.0, (a + b + c) / 3.0});
    case 2:
      return std::max({b, (a + b) / 2.0, (b + c) / 2.0, a / 2.0 + (b + c) / 4.0,
                       c / 2.0 + (a + b) / 4.0});
    default:
      throw Error(ErrorCode::invalid_vertex, "3-path target must be 1 (end) or 2 (middle)");
  }
}

std::optional<double> closed_form_kappa(const Graph& g, const WaterProfile& p0, Vertex v) {
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown target vertex");
  switch (g.n_vertices()) {
    case 1:
      return p0[v];
    case 2:
      return kappa_exact_edge(p0[v], p0[1 - v]);
    case 3: {
      if (!g.is_path()) return std::nullopt;
      auto order = g.path_order();
      if (order[2] == v) std::reverse(order.begin(), order.end());
      const int target = order[0] == v ? 1 : 2;
      return kappa_exact_path3({p0[order[0]], p0[order[1]], p0[order[2]]}, target);
    }
    default:
      return std::nullopt;
  }
}

double kappa_upper_cap(const Graph& g, const WaterProfile& p0, Vertex v) {
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown target vertex");
  if (!g.is_tree()) throw Error(ErrorCode::unsupported_structure, "cap bound needs a tree");
  if (p0.size() != g.n_vertices()) throw Error(ErrorCode::invalid_size, "profile size does not match graph");
  const auto dist = distances_from(g, v);
  return cap_fill(p0.levels(), dist);
}

std::vector<double> SearchSettings::refined_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 16; ++k) grid.push_back(k / 32.0);
  return grid;
}

KappaEstimate kappa_search(const Graph& g, const WaterProfile& p0, Vertex v,
                           const SearchSettings& settings) {
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown target vertex");
  if (p0.size() != g.n_vertices()) throw Error(ErrorCode::invalid_size, "profile size does not match graph");
  if (settings.beam == 0) throw Error(ErrorCode::invalid_spec, "beam width must be positive");
  for (double mu : settings.mu_grid)
    if (!(mu > 0.0 && mu <= 0.5)) throw Error(ErrorCode::invalid_spec, "mu grid entries must lie in (0, 1/2]");

  const auto dist = distances_from(g, v);
  const double quantum = settings.dedup_quantum;
  auto quantize = [&](const std::vector<double>& levels) {
    std::vector<std::int64_t> key(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
      key[i] = static_cast<std::int64_t>(std::llround(levels[i] / quantum));
    return key;
  };

  KappaEstimate est;
  est.lower = p0[v];

  std::unordered_set<std::vector<std::int64_t>, QuantizedHash> seen;
  std::vector<Candidate> beam;
  {
    Candidate root{std::vector<double>(p0.levels().begin(), p0.levels().end()), {}, p0[v], 0.0};
    seen.insert(quantize(root.levels));
    beam.push_back(std::move(root));
  }

  for (std::size_t level = 0; level < settings.depth && !beam.empty() && !est.partial; ++level) {
    std::vector<Candidate> children;
    for (const Candidate& parent : beam) {
      for (const Edge& e : g.edges()) {
        if (parent.levels[e.u] == parent.levels[e.v]) continue;
        for (double mu : settings.mu_grid) {
          if (est.expansions == settings.max_expansions) {
            est.partial = true;
            break;
          }
          ++est.expansions;
          Candidate child{parent.levels, parent.moves, 0.0, 0.0};
          average_pair(child.levels, e, mu);
          if (!seen.insert(quantize(child.levels)).second) continue;
          child.moves.emplace_back(e, mu);
          child.at_target = child.levels[v];
          // achieved level blended with what the cap relaxation still allows
          child.key = 0.5 * (child.at_target + cap_fill(child.levels, dist));
          children.push_back(std::move(child));
        }
        if (est.partial) break;
      }
      if (est.partial) break;
    }

    std::sort(children.begin(), children.end(), [](const Candidate& a, const Candidate& b) {
      if (a.key != b.key) return a.key > b.key;
      if (a.at_target != b.at_target) return a.at_target > b.at_target;
      return lexicographically_less(a.moves, b.moves);
    });
    for (const Candidate& c : children) {
      if (c.at_target > est.lower) {
        est.lower = c.at_target;
        est.witness = c.moves;
      }
    }
    if (children.size() > settings.beam) children.resize(settings.beam);
    beam = std::move(children);
  }

  if (est.partial)
    est.warnings.push_back("search stopped at the expansion budget; lower bound is partial");

  if (g.is_tree()) {
    est.upper = kappa_upper_cap(g, p0, v);
    est.upper_method = UpperMethod::cap_greedy;
  } else {
    est.upper = p0.max();
    est.upper_method = UpperMethod::trivial_max;
    est.warnings.push_back("cap bound is only established on trees; upper bound is the maximum level");
  }
  if (est.lower > est.upper + 1e-12)
    throw Error(ErrorCode::contract_violation, "search lower bound exceeds upper bound");
  est.upper = std::max(est.upper, est.lower);
  return est;
}

KappaEstimate estimate_kappa(const Graph& g, const WaterProfile& p0, Vertex v,
                             const SearchSettings& settings, bool use_closed_form) {
  KappaEstimate est = kappa_search(g, p0, v, settings);
  if (!use_closed_form) return est;
  if (auto exact = closed_form_kappa(g, p0, v)) {
    if (est.lower > *exact + 1e-12)
      throw Error(ErrorCode::contract_violation, "search lower bound exceeds closed-form kappa");
    est.exact = *exact;
    est.upper = std::max(*exact, est.lower);
    est.upper_method = UpperMethod::exact;
    std::erase_if(est.warnings, [](const std::string& w) { return w.find("cap bound") == 0; });
  }
  return est;
}

}  // namespace aqua
