#include "cli/config.hpp"

#include <algorithm>
#include <initializer_list>

namespace aqua::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::config, "config error at '" + path + "': " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(join(path, key), "unknown key");
  }
}

std::size_t get_size(const json& obj, const std::string& path, const char* key, bool positive = false) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < (positive ? 1 : 0))
    fail(join(path, key), positive ? "expected a positive integer" : "expected a nonnegative integer");
  return v.get<std::size_t>();
}

double get_real(const json& obj, const std::string& path, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(join(path, key), "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::vector<std::size_t> get_sizes(const json& obj, const std::string& path, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(join(path, key), "expected an array of integers");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
      fail(join(path, key), "expected an array of nonnegative integers");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

/// Library errors raised while building a config value are reported under
/// the key that produced them.
template <typename F>
auto at_key(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    fail(path, e.what());
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
}

ProfileLaw parse_law(const json& j, const std::string& path, std::size_t n) {
  expect_object(j, path);
  const std::string kind = j.contains("kind") ? get_string(j, path, "kind") : "uniform01";
  ProfileLaw law;
  if (kind == "uniform01") {
    reject_unknown(j, path, {"kind"});
  } else if (kind == "bounded") {
    reject_unknown(j, path, {"kind", "C"});
    law = ProfileLaw::bounded(get_real(j, path, "C"));
  } else if (kind == "constant") {
    reject_unknown(j, path, {"kind", "value"});
    law = ProfileLaw::constant(get_real(j, path, "value"));
  } else if (kind == "per-vertex") {
    reject_unknown(j, path, {"kind", "ranges"});
    std::vector<LevelRange> ranges;
    for (const auto& r : j.at("ranges")) {
      if (!r.is_array() || r.size() != 2) fail(join(path, "ranges"), "each range is [lo, hi]");
      ranges.push_back({r[0].get<double>(), r[1].get<double>()});
    }
    law = ProfileLaw::per_vertex(std::move(ranges));
  } else {
    fail(join(path, "kind"), "unknown law '" + kind + "'");
  }
  at_key(path, [&] {
    validate(law, n);
    return 0;
  });
  return law;
}

SearchSettings parse_optimizer(const json& j, const std::string& path, bool& closed_form, bool& cap_bound) {
  expect_object(j, path);
  reject_unknown(j, path, {"depth", "mu_grid", "beam", "max_expansions", "closed_form", "cap_bound"});
  SearchSettings s;
  if (j.contains("depth")) s.depth = get_size(j, path, "depth");
  if (j.contains("beam")) s.beam = get_size(j, path, "beam", true);
  if (j.contains("max_expansions")) s.max_expansions = get_size(j, path, "max_expansions", true);
  if (j.contains("mu_grid")) {
    const json& g = j["mu_grid"];
    if (g.is_string() && g.get<std::string>() == "refined") {
      s.mu_grid = SearchSettings::refined_grid();
    } else {
      if (!g.is_array() || g.empty()) fail(join(path, "mu_grid"), "expected a nonempty array or \"refined\"");
      s.mu_grid.clear();
      for (const auto& mu : g) {
        if (!mu.is_number() || !(mu.get<double>() > 0.0 && mu.get<double>() <= 0.5))
          fail(join(path, "mu_grid"), "entries must lie in (0, 1/2]");
        s.mu_grid.push_back(mu.get<double>());
      }
    }
  }
  if (j.contains("closed_form")) closed_form = get_bool(j, path, "closed_form");
  if (j.contains("cap_bound")) cap_bound = get_bool(j, path, "cap_bound");
  return s;
}

PumpRun parse_pump(const json& j, const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, path, {"eps", "seeds", "max_stages", "sweep_budget", "check_tol"});
  PumpRun run;
  if (j.contains("eps")) {
    run.settings.eps = get_real(j, path, "eps");
    if (!(run.settings.eps > 0.0 && run.settings.eps <= 1.0)) fail(join(path, "eps"), "must lie in (0, 1]");
  }
  if (j.contains("seeds")) run.seed_count = get_size(j, path, "seeds", true);
  if (j.contains("max_stages")) run.settings.max_stages = get_size(j, path, "max_stages");
  if (j.contains("sweep_budget")) run.settings.sweep_budget = get_size(j, path, "sweep_budget", true);
  if (j.contains("check_tol")) {
    run.settings.check_tol = get_real(j, path, "check_tol");
    if (!(run.settings.check_tol > 0.0 && run.settings.check_tol < 1.0))
      fail(join(path, "check_tol"), "must lie in (0, 1)");
  }
  return run;
}

McSettings parse_mc(const json& j, const std::string& path) {
  expect_object(j, path);
  reject_unknown(j, path, {"evaluator", "reference", "grid_points"});
  McSettings mc;
  if (j.contains("evaluator")) {
    const std::string e = get_string(j, path, "evaluator");
    if (e == "auto") mc.evaluator = McSettings::Evaluator::automatic;
    else if (e == "exact") mc.evaluator = McSettings::Evaluator::exact;
    else if (e == "search") mc.evaluator = McSettings::Evaluator::search;
    else fail(join(path, "evaluator"), "expected auto, exact or search");
  }
  if (j.contains("reference")) {
    const std::string r = get_string(j, path, "reference");
    if (r == "auto") mc.reference = McSettings::Reference::automatic;
    else if (r == "edge") mc.reference = McSettings::Reference::edge;
    else if (r == "path3-end") mc.reference = McSettings::Reference::path3_end;
    else if (r == "none") mc.reference = McSettings::Reference::none;
    else fail(join(path, "reference"), "expected auto, edge, path3-end or none");
  }
  if (j.contains("grid_points")) {
    mc.grid_points = get_size(j, path, "grid_points");
    if (mc.grid_points < 2) fail(join(path, "grid_points"), "needs at least 2 points");
  }
  return mc;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Graph build_graph(const json& spec, const std::string& path) {
  expect_object(spec, path);
  const std::string family = get_string(spec, path, "family");
  return at_key(path, [&]() -> Graph {
    if (family == "path") {
      reject_unknown(spec, path, {"family", "n"});
      return make_path(get_size(spec, path, "n", true));
    }
    if (family == "comb") {
      reject_unknown(spec, path, {"family", "M", "spine"});
      return make_comb(get_size(spec, path, "M", true), get_size(spec, path, "spine", true));
    }
    if (family == "twigged") {
      reject_unknown(spec, path, {"family", "spine", "positions"});
      return make_twigged(get_size(spec, path, "spine", true), get_sizes(spec, path, "positions"));
    }
    if (family == "halfline") {
      reject_unknown(spec, path, {"family", "spine", "slope", "f_table"});
      const std::size_t spine = get_size(spec, path, "spine", true);
      if (spec.contains("slope") == spec.contains("f_table"))
        fail(path, "give exactly one of 'slope' or 'f_table'");
      if (spec.contains("slope")) return make_halfline(HalfLineSpec::linear(spine, get_size(spec, path, "slope", true)));
      return make_halfline({spine, get_sizes(spec, path, "f_table")});
    }
    if (family == "custom") {
      reject_unknown(spec, path, {"family", "n", "edges"});
      std::vector<Edge> edges;
      for (const auto& e : spec.at("edges")) {
        if (!e.is_array() || e.size() != 2) fail(join(path, "edges"), "each edge is [u, v]");
        edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
      }
      return Graph::make(get_size(spec, path, "n", true), std::move(edges));
    }
    fail(join(path, "family"), "unknown family '" + family + "'");
  });
}

ExperimentConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config,
                "config syntax error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  expect_object(root, "<root>");
  reject_unknown(root, "", {"schema_version", "graph", "target", "initial", "law", "seed", "trials",
                            "moves", "optimizer", "pump", "mc", "output", "threads"});
  if (!root.contains("schema_version")) fail("schema_version", "missing");
  if (get_size(root, "", "schema_version") != static_cast<std::size_t>(schema_version))
    fail("schema_version", "unsupported version (expected " + std::to_string(schema_version) + ")");
  if (!root.contains("graph")) fail("graph", "missing");

  ExperimentConfig cfg;
  cfg.graph_spec = root["graph"];
  cfg.graph = build_graph(cfg.graph_spec);
  const std::size_t n = cfg.graph.n_vertices();

  if (root.contains("target")) {
    cfg.target = get_size(root, "", "target");
    if (!cfg.graph.has_vertex(cfg.target)) fail("target", "vertex out of range");
  }
  if (root.contains("initial")) {
    cfg.initial = at_key("initial", [&] { return profile_from_json(root["initial"]); });
    if (cfg.initial->size() != n) fail("initial", "expected one level per vertex");
  }
  cfg.law = root.contains("law") ? parse_law(root["law"], "law", n) : ProfileLaw::uniform01();
  if (root.contains("seed")) cfg.seed = get_size(root, "", "seed");
  if (root.contains("trials")) cfg.trials = get_size(root, "", "trials");
  if (root.contains("moves")) {
    if (!root["moves"].is_array()) fail("moves", "expected an array of [u, v, mu]");
    for (std::size_t k = 0; k < root["moves"].size(); ++k) {
      const std::string path = "moves[" + std::to_string(k) + "]";
      const json& row = root["moves"][k];
      Move m = at_key(path, [&] { return moves_from_json(json::array({row})).front(); });
      at_key(path, [&] {
        validate_move(cfg.graph, m);
        return 0;
      });
      cfg.moves.push_back(m);
    }
  }
  if (root.contains("optimizer"))
    cfg.search = parse_optimizer(root["optimizer"], "optimizer", cfg.closed_form, cfg.cap_bound);
  if (root.contains("pump")) cfg.pump = parse_pump(root["pump"], "pump");
  if (root.contains("mc")) cfg.mc = parse_mc(root["mc"], "mc");
  if (root.contains("output")) {
    const json& out = root["output"];
    expect_object(out, "output");
    reject_unknown(out, "output", {"dir", "format"});
    if (out.contains("dir")) cfg.out_dir = get_string(out, "output", "dir");
    if (out.contains("format")) {
      const std::string f = get_string(out, "output", "format");
      if (f == "csv") cfg.format = OutputFormat::csv;
      else if (f == "json") cfg.format = OutputFormat::json;
      else fail("output.format", "expected csv or json");
    }
  }
  if (root.contains("threads")) cfg.threads = get_size(root, "", "threads", true);
  return cfg;
}

}  // namespace aqua::cli
