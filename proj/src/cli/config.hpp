#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aqua/distribution.hpp"
#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"
#include "aqua/optimizer.hpp"
#include "aqua/pump.hpp"
#include "aqua/serialize.hpp"

namespace aqua::cli {

inline constexpr int schema_version = 1;

enum class OutputFormat { csv, json };

struct McSettings {
  enum class Evaluator { automatic, exact, search };
  enum class Reference { automatic, edge, path3_end, none };

  Evaluator evaluator = Evaluator::automatic;
  Reference reference = Reference::automatic;
  std::size_t grid_points = 1001;
};

struct PumpRun {
  PumpSettings settings;
  std::size_t seed_count = 1;
};

/// Fully validated experiment description. Everything a subcommand does is
/// determined by this value.
struct ExperimentConfig {
  json graph_spec;
  Graph graph = make_path(1);
  Vertex target = 0;
  std::optional<WaterProfile> initial;
  ProfileLaw law;
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  MoveSequence moves;
  SearchSettings search;
  bool closed_form = true;
  bool cap_bound = true;
  PumpRun pump;
  McSettings mc;
  std::string out_dir = ".";
  OutputFormat format = OutputFormat::csv;
  std::size_t threads = 1;
};

/// Parses and validates a JSON config. Throws Error(config) naming the line
/// (syntax errors) or the key path (schema errors).
ExperimentConfig parse_config(const std::string& text);

/// Builds a graph from a config "graph" object.
Graph build_graph(const json& spec, const std::string& path = "graph");

}  // namespace aqua::cli
