#include "aqua/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <string>

namespace aqua {

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw Error(ErrorCode::out_of_range, "cannot format real");
  return std::string(buf, end);
}

namespace {

json meta_to_json(const FamilyMeta& m) {
  json j;
  j["family"] = to_string(m.kind);
  switch (m.kind) {
    case Family::comb:
      j["M"] = m.comb_period;
      j["spine"] = m.spine.size();
      j["twig_positions"] = m.twig_positions;
      break;
    case Family::twigged:
      j["spine"] = m.spine.size();
      j["twig_positions"] = m.twig_positions;
      break;
    case Family::halfline:
      j["spine"] = m.spine.size();
      j["f_table"] = m.f_table;
      break;
    case Family::path:
    case Family::custom:
      break;
  }
  return j;
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::path, Family::comb, Family::halfline, Family::twigged, Family::custom})
    if (s == to_string(f)) return f;
  throw Error(ErrorCode::invalid_spec, "unknown graph family '" + s + "'");
}

}  // namespace

json to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return json{{"n", g.n_vertices()}, {"edges", std::move(edges)}, {"meta", meta_to_json(g.meta())}};
}

Graph graph_from_json(const json& j) {
  const std::size_t n = j.at("n").get<std::size_t>();
  Family family = Family::custom;
  if (j.contains("meta") && j["meta"].contains("family"))
    family = family_from_string(j["meta"]["family"].get<std::string>());

  // Generated families are rebuilt so their metadata is consistent.
  Graph g = [&] {
    const json& m = j.contains("meta") ? j["meta"] : json::object();
    switch (family) {
      case Family::path: return make_path(n);
      case Family::comb: return make_comb(m.at("M").get<std::size_t>(), m.at("spine").get<std::size_t>());
      case Family::twigged:
        return make_twigged(m.at("spine").get<std::size_t>(),
                            m.at("twig_positions").get<std::vector<std::size_t>>());
      case Family::halfline:
        return make_halfline({m.at("spine").get<std::size_t>(),
                              m.at("f_table").get<std::vector<std::size_t>>()});
      case Family::custom: break;
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    return Graph::make(n, std::move(edges));
  }();

  if (g.n_vertices() != n) throw Error(ErrorCode::invalid_spec, "vertex count disagrees with family metadata");
  if (j.contains("edges")) {
    std::vector<Edge> listed;
    for (const auto& e : j["edges"]) listed.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    std::sort(listed.begin(), listed.end());
    if (!std::equal(listed.begin(), listed.end(), g.edges().begin(), g.edges().end()))
      throw Error(ErrorCode::invalid_spec, "edge list disagrees with family metadata");
  }
  return g;
}

json to_json(std::span<const double> levels) { return json(std::vector<double>(levels.begin(), levels.end())); }
json to_json(const WaterProfile& p) { return to_json(p.levels()); }
json to_json(const SadProfile& p) { return to_json(p.mass()); }

WaterProfile profile_from_json(const json& j) { return WaterProfile(j.get<std::vector<double>>()); }

json to_json(std::span<const Move> moves) {
  json out = json::array();
  for (const Move& m : moves) out.push_back({m.edge.u, m.edge.v, m.mu});
  return out;
}

MoveSequence moves_from_json(const json& j) {
  MoveSequence moves;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3)
      throw Error(ErrorCode::invalid_spec, "a move is written [u, v, mu]");
    moves.emplace_back(row[0].get<Vertex>(), row[1].get<Vertex>(), row[2].get<double>());
  }
  return moves;
}

json to_json(const KappaEstimate& est) {
  json j{{"lower", est.lower},
         {"upper", est.upper},
         {"witness", to_json(est.witness)},
         {"method", to_string(est.upper_method)},
         {"partial", est.partial},
         {"expansions", est.expansions},
         {"warnings", est.warnings}};
  j["exact"] = est.exact ? json(*est.exact) : json(nullptr);
  return j;
}

json to_json(const PumpReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"index", s.index},
                      {"f", s.f_value},
                      {"mass", s.mass},
                      {"target", s.target},
                      {"cumulative", s.cumulative},
                      {"product_bound_so_far", s.product_so_far},
                      {"moves", s.moves}});
  return json{{"selected_indices", r.selected_indices},
              {"skipped_indices", r.skipped_indices},
              {"stage_masses", r.stage_masses},
              {"stages", std::move(stages)},
              {"product_bound", r.product_bound},
              {"exponential_bound", r.bound.exponential},
              {"total_mass_captured", r.total_mass_captured},
              {"final_level", r.final_level},
              {"sad_weighted_level", r.sad_weighted_level},
              {"total_moves", r.total_moves}};
}

void write_trace_csv(std::ostream& out, std::span<const Move> moves, std::span<const WaterProfile> states) {
  out << "step,edge_u,edge_v,mu,level_u,level_v\n";
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const Move& m = moves[k];
    const WaterProfile& after = states[k + 1];
    out << (k + 1) << ',' << m.edge.u << ',' << m.edge.v << ',' << format_real(m.mu) << ','
        << format_real(after[m.edge.u]) << ',' << format_real(after[m.edge.v]) << '\n';
  }
}

void write_stage_csv(std::ostream& out, const PumpReport& r) {
  out << "k,N_k,f_N_k,stage_mass,cumulative_mass,product_bound_so_far\n";
  for (std::size_t k = 0; k < r.stages.size(); ++k) {
    const auto& s = r.stages[k];
    out << (k + 1) << ',' << s.index << ',' << s.f_value << ',' << format_real(s.mass) << ','
        << format_real(s.cumulative) << ',' << format_real(s.product_so_far) << '\n';
  }
}

void write_cdf_csv(std::ostream& out, const EmpiricalCdf& emp, const std::function<double(double)>* ref,
                   std::size_t grid_points) {
  if (grid_points < 2) throw Error(ErrorCode::invalid_spec, "CDF grid needs at least two points");
  out << "x,F_emp,F_ref\n";
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    out << format_real(x) << ',' << format_real(emp(x)) << ',';
    if (ref) out << format_real((*ref)(x));
    out << '\n';
  }
}

}  // namespace aqua
