#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "aqua/error.hpp"

namespace aqua {

using Vertex = std::size_t;

/// Undirected edge stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

enum class Family { path, comb, halfline, twigged, custom };

const char* to_string(Family f);

/// Generator metadata. Only the fields relevant to `kind` are populated.
///
/// For half-lines, `spine[i]` is the vertex index of v_{i+1}, `extras[k]` is
/// u_{k+1} and `f_table[k]` is f(k+1) (1-based spine position).
/// For combs and twigged paths, `twig_positions` holds the 1-based spine
/// positions carrying a pendant vertex.
struct FamilyMeta {
  Family kind = Family::custom;
  std::size_t comb_period = 0;
  std::vector<Vertex> spine;
  std::vector<Vertex> extras;
  std::vector<std::size_t> f_table;
  std::vector<std::size_t> twig_positions;
};

/// Finite, simple, connected, undirected graph on vertices 0..n-1.
/// Immutable once built.
class Graph {
 public:
  /// Validates simplicity and connectivity.
  static Graph make(std::size_t n, std::vector<Edge> edges, FamilyMeta meta = {});

  std::size_t n_vertices() const { return adjacency_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex x) const;
  std::size_t degree(Vertex x) const { return neighbors(x).size(); }
  std::size_t max_degree() const { return max_degree_; }
  const FamilyMeta& meta() const { return meta_; }

  bool has_vertex(Vertex x) const { return x < n_vertices(); }
  bool has_edge(Edge e) const;
  bool is_tree() const { return edges_.size() + 1 == n_vertices(); }
  bool is_path() const;

  /// Linear order of a path graph, starting from the lower-indexed endpoint.
  std::vector<Vertex> path_order() const;

 private:
  Graph() = default;

  std::vector<Edge> edges_;  // sorted
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t max_degree_ = 0;
  FamilyMeta meta_;
};

struct HalfLineSpec {
  std::size_t spine_length = 0;
  /// f(1), f(2), ... ; strictly increasing, each in [1, spine_length].
  std::vector<std::size_t> f_table;

  std::size_t extra_count() const { return f_table.size(); }

  /// f(k) = slope * k for every k with slope * k <= spine_length.
  static HalfLineSpec linear(std::size_t spine_length, std::size_t slope);
};

void validate(const HalfLineSpec& spec);

/// Partial sums of 1/f(k), k = 1..K.
std::vector<double> harmonic_diagnostic(const HalfLineSpec& spec);

Graph make_path(std::size_t n);
Graph make_comb(std::size_t period, std::size_t spine);
/// Path of length `spine` with a pendant vertex at each listed 1-based position.
Graph make_twigged(std::size_t spine, std::vector<std::size_t> positions);
Graph make_halfline(const HalfLineSpec& spec);
/// Random connected graph: a random spanning tree plus `extra_edges` chords.
Graph make_random_connected(std::size_t n, std::size_t extra_edges, std::mt19937_64& rng);

std::size_t graph_distance(const Graph& g, Vertex u, Vertex v);
/// BFS distances from `source` to every vertex.
std::vector<std::size_t> distances_from(const Graph& g, Vertex source);

/// True iff `edges` (all inside `region`) connect `region`.
bool connects(std::span<const Vertex> region, std::span<const Edge> edges);

}  // namespace aqua
