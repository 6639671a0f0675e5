#include "aqua/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

namespace aqua {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::invalid_graph: return "invalid-graph";
    case ErrorCode::invalid_vertex: return "invalid-vertex";
    case ErrorCode::invalid_move: return "invalid-move";
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::invalid_region: return "invalid-region";
    case ErrorCode::invalid_precondition: return "invalid-precondition";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::unsupported_structure: return "unsupported-structure";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::stage_convergence: return "stage-convergence";
    case ErrorCode::resource_budget: return "resource-budget";
    case ErrorCode::contract_violation: return "contract-violation";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

const char* to_string(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::comb: return "comb";
    case Family::halfline: return "halfline";
    case Family::twigged: return "twigged";
    case Family::custom: return "custom";
  }
  return "custom";
}

Graph Graph::make(std::size_t n, std::vector<Edge> edges, FamilyMeta meta) {
  if (n == 0) throw Error(ErrorCode::invalid_size, "graph needs at least one vertex");

  Graph g;
  g.adjacency_.resize(n);
  for (const Edge& e : edges) {
    if (e.u == e.v)
      throw Error(ErrorCode::invalid_graph, "loop at vertex " + std::to_string(e.u));
    if (e.v >= n)
      throw Error(ErrorCode::invalid_vertex, "edge endpoint " + std::to_string(e.v) + " out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error(ErrorCode::invalid_graph, "duplicate edge");

  for (const Edge& e : edges) {
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end());
    g.max_degree_ = std::max(g.max_degree_, adj.size());
  }
  g.edges_ = std::move(edges);
  g.meta_ = std::move(meta);

  auto dist = distances_from(g, 0);
  if (std::any_of(dist.begin(), dist.end(),
                  [](std::size_t d) { return d == static_cast<std::size_t>(-1); }))
    throw Error(ErrorCode::invalid_graph, "graph is not connected");
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex x) const {
  if (!has_vertex(x)) throw Error(ErrorCode::invalid_vertex, "unknown vertex " + std::to_string(x));
  return adjacency_[x];
}

bool Graph::has_edge(Edge e) const {
  if (!has_vertex(e.v) || e.u == e.v) return false;
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Graph::is_path() const {
  if (!is_tree()) return false;
  return max_degree_ <= 2;
}

std::vector<Vertex> Graph::path_order() const {
  if (!is_path()) throw Error(ErrorCode::unsupported_structure, "graph is not a path");
  const std::size_t n = n_vertices();
  if (n == 1) return {0};
  Vertex start = 0;
  while (degree(start) != 1) ++start;
  std::vector<Vertex> order{start};
  Vertex prev = start;
  Vertex cur = adjacency_[start][0];
  order.push_back(cur);
  while (order.size() < n) {
    const auto& adj = adjacency_[cur];
    Vertex next = adj[0] == prev ? adj[1] : adj[0];
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

HalfLineSpec HalfLineSpec::linear(std::size_t spine_length, std::size_t slope) {
  if (slope == 0) throw Error(ErrorCode::invalid_spec, "slope must be positive");
  HalfLineSpec spec{spine_length, {}};
  for (std::size_t k = 1; slope * k <= spine_length; ++k) spec.f_table.push_back(slope * k);
  return spec;
}

void validate(const HalfLineSpec& spec) {
  if (spec.spine_length == 0) throw Error(ErrorCode::invalid_spec, "spine length must be positive");
  for (std::size_t k = 0; k < spec.f_table.size(); ++k) {
    const std::size_t f = spec.f_table[k];
    if (f < 1 || f > spec.spine_length)
      throw Error(ErrorCode::invalid_spec,
                  "f(" + std::to_string(k + 1) + ") = " + std::to_string(f) + " outside spine");
    if (k > 0 && f <= spec.f_table[k - 1])
      throw Error(ErrorCode::invalid_spec, "f must be strictly increasing");
  }
}

std::vector<double> harmonic_diagnostic(const HalfLineSpec& spec) {
  std::vector<double> sums;
  sums.reserve(spec.f_table.size());
  double s = 0.0;
  for (std::size_t f : spec.f_table) {
    s += 1.0 / static_cast<double>(f);
    sums.push_back(s);
  }
  return sums;
}

Graph make_path(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_size, "path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  FamilyMeta meta;
  meta.kind = Family::path;
  meta.spine.resize(n);
  std::iota(meta.spine.begin(), meta.spine.end(), Vertex{0});
  return Graph::make(n, std::move(edges), std::move(meta));
}

Graph make_twigged(std::size_t spine, std::vector<std::size_t> positions) {
  if (spine == 0) throw Error(ErrorCode::invalid_size, "spine needs at least one vertex");
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  for (std::size_t p : positions)
    if (p < 1 || p > spine)
      throw Error(ErrorCode::invalid_spec, "twig position " + std::to_string(p) + " outside spine");

  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
  FamilyMeta meta;
  meta.kind = Family::twigged;
  meta.spine.resize(spine);
  std::iota(meta.spine.begin(), meta.spine.end(), Vertex{0});
  Vertex next = spine;
  for (std::size_t p : positions) {
    edges.emplace_back(p - 1, next);
    meta.extras.push_back(next);
    ++next;
  }
  meta.twig_positions = std::move(positions);
  return Graph::make(next, std::move(edges), std::move(meta));
}

Graph make_comb(std::size_t period, std::size_t spine) {
  if (period == 0 || spine == 0) throw Error(ErrorCode::invalid_size, "comb needs M >= 1 and spine >= 1");
  std::vector<std::size_t> positions;
  for (std::size_t p = period; p <= spine; p += period) positions.push_back(p);
  Graph g = make_twigged(spine, std::move(positions));
  FamilyMeta meta = g.meta();
  meta.kind = Family::comb;
  meta.comb_period = period;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  return Graph::make(g.n_vertices(), std::move(edges), std::move(meta));
}

Graph make_halfline(const HalfLineSpec& spec) {
  validate(spec);
  const std::size_t n = spec.spine_length;
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  FamilyMeta meta;
  meta.kind = Family::halfline;
  meta.spine.resize(n);
  std::iota(meta.spine.begin(), meta.spine.end(), Vertex{0});
  meta.f_table = spec.f_table;
  for (std::size_t k = 0; k < spec.f_table.size(); ++k) {
    const Vertex u = n + k;
    edges.emplace_back(spec.f_table[k] - 1, u);
    meta.extras.push_back(u);
  }
  return Graph::make(n + spec.f_table.size(), std::move(edges), std::move(meta));
}

Graph make_random_connected(std::size_t n, std::size_t extra_edges, std::mt19937_64& rng) {
  if (n == 0) throw Error(ErrorCode::invalid_size, "graph needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < n; ++i) {
    std::uniform_int_distribution<Vertex> parent(0, i - 1);
    edges.emplace_back(parent(rng), i);
  }
  const std::size_t max_edges = n * (n - 1) / 2;
  const std::size_t want = std::min(max_edges, edges.size() + extra_edges);
  std::sort(edges.begin(), edges.end());
  std::uniform_int_distribution<Vertex> pick(0, n - 1);
  while (edges.size() < want) {
    Vertex a = pick(rng), b = pick(rng);
    if (a == b) continue;
    Edge e(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e) continue;
    edges.insert(it, e);
  }
  return Graph::make(n, std::move(edges));
}

std::vector<std::size_t> distances_from(const Graph& g, Vertex source) {
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.n_vertices(), unreached);
  std::queue<Vertex> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop();
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] == unreached) {
        dist[y] = dist[x] + 1;
        frontier.push(y);
      }
    }
  }
  return dist;
}

std::size_t graph_distance(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_vertex(u) || !g.has_vertex(v))
    throw Error(ErrorCode::invalid_vertex, "unknown vertex in distance query");
  return distances_from(g, u)[v];
}

bool connects(std::span<const Vertex> region, std::span<const Edge> edges) {
  if (region.empty()) return true;
  std::vector<Vertex> members(region.begin(), region.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto index_of = [&](Vertex x) -> std::size_t {
    auto it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x) return members.size();
    return static_cast<std::size_t>(it - members.begin());
  };

  // union-find over region members
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = members.size();
  for (const Edge& e : edges) {
    std::size_t a = index_of(e.u), b = index_of(e.v);
    if (a == members.size() || b == members.size()) return false;
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace aqua
