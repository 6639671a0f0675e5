#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "aqua/distribution.hpp"
#include "aqua/dynamics.hpp"
#include "aqua/graph.hpp"
#include "aqua/optimizer.hpp"
#include "aqua/pump.hpp"
#include "aqua/sad.hpp"

namespace aqua {

using json = nlohmann::json;

/// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_real(double x);

/// {"n": int, "edges": [[i,j],...], "meta": {...}} with sorted edges.
json to_json(const Graph& g);
Graph graph_from_json(const json& j);

json to_json(std::span<const double> levels);
json to_json(const WaterProfile& p);
json to_json(const SadProfile& p);
WaterProfile profile_from_json(const json& j);

/// [[u, v, mu], ...]
json to_json(std::span<const Move> moves);
MoveSequence moves_from_json(const json& j);

/// {lower, upper, witness, method, exact?, partial, warnings}
json to_json(const KappaEstimate& est);
json to_json(const PumpReport& report);

/// step,edge_u,edge_v,mu,level_u,level_v ; row k holds levels after move k.
void write_trace_csv(std::ostream& out, std::span<const Move> moves,
                     std::span<const WaterProfile> states);

/// k,N_k,f_N_k,stage_mass,cumulative_mass,product_bound_so_far
void write_stage_csv(std::ostream& out, const PumpReport& report);

/// x,F_emp,F_ref on an evenly spaced grid over [0, 1]; F_ref column empty
/// when no reference is given.
void write_cdf_csv(std::ostream& out, const EmpiricalCdf& emp,
                   const std::function<double(double)>* ref, std::size_t grid_points);

}  // namespace aqua
