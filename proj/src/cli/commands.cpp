#include "cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

#include "aqua/parallel.hpp"

namespace aqua::cli {

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

WaterProfile initial_profile(const ExperimentConfig& cfg) {
  if (cfg.initial) return *cfg.initial;
  return sample_profile(cfg.graph, cfg.law, cfg.seed);
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

OutputFiles cmd_simulate(const ExperimentConfig& cfg, std::ostream&) {
  const WaterProfile p0 = initial_profile(cfg);
  const auto states = trace_sequence(cfg.graph, p0, cfg.moves);

  OutputFiles files;
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream trace;
    write_trace_csv(trace, cfg.moves, states);
    files["trace.csv"] = trace.str();
  } else {
    json rows = json::array();
    for (std::size_t k = 0; k < cfg.moves.size(); ++k) {
      const Move& m = cfg.moves[k];
      rows.push_back({{"step", k + 1},
                      {"edge_u", m.edge.u},
                      {"edge_v", m.edge.v},
                      {"mu", m.mu},
                      {"level_u", states[k + 1][m.edge.u]},
                      {"level_v", states[k + 1][m.edge.v]}});
    }
    files["trace.json"] = dump(rows);
  }
  files["final_profile.json"] = dump(to_json(states.back()));
  return files;
}

OutputFiles cmd_kappa(const ExperimentConfig& cfg, std::ostream& warn, bool& partial) {
  const WaterProfile p0 = initial_profile(cfg);
  KappaEstimate est = estimate_kappa(cfg.graph, p0, cfg.target, cfg.search, cfg.closed_form);
  if (!cfg.cap_bound && est.upper_method == UpperMethod::cap_greedy) {
    est.upper = std::max(p0.max(), est.lower);
    est.upper_method = UpperMethod::trivial_max;
  }
  for (const auto& w : est.warnings) warn << "warning: " << w << "\n";
  partial = est.partial;

  json out = to_json(est);
  out["target"] = cfg.target;
  out["initial"] = to_json(p0);
  return {{"kappa.json", dump(out)}};
}

OutputFiles cmd_mc_cdf(const ExperimentConfig& cfg, std::ostream& warn) {
  if (!cfg.trials || *cfg.trials == 0)
    throw Error(ErrorCode::config, "config error at 'trials': mc-cdf needs a positive trial count");

  const Graph& g = cfg.graph;
  const bool has_closed_form = closed_form_kappa(g, WaterProfile::constant(g.n_vertices(), 0.5), cfg.target).has_value();
  bool exact = false;
  switch (cfg.mc.evaluator) {
    case McSettings::Evaluator::automatic: exact = has_closed_form; break;
    case McSettings::Evaluator::exact:
      if (!has_closed_form)
        throw Error(ErrorCode::config, "config error at 'mc.evaluator': no closed form for this graph");
      exact = true;
      break;
    case McSettings::Evaluator::search: exact = false; break;
  }

  std::function<double(double)> ref;
  std::string ref_name = "none";
  auto reference = cfg.mc.reference;
  if (reference == McSettings::Reference::automatic) {
    reference = McSettings::Reference::none;
    if (g.n_vertices() == 2) reference = McSettings::Reference::edge;
    if (g.n_vertices() == 3 && g.is_path() && g.degree(cfg.target) == 1)
      reference = McSettings::Reference::path3_end;
  }
  if (reference == McSettings::Reference::edge) {
    ref = cdf_edge;
    ref_name = "edge";
  } else if (reference == McSettings::Reference::path3_end) {
    ref = cdf_path3_end;
    ref_name = "path3-end";
  }
  if (ref && cfg.law.kind != ProfileLaw::Kind::uniform01)
    warn << "warning: reference CDF assumes i.i.d. unif(0,1) levels\n";

  const KappaEvaluator evaluator = exact ? exact_evaluator() : search_evaluator(cfg.search);
  const EmpiricalCdf cdf = mc_kappa_cdf(g, cfg.target, cfg.law, evaluator, *cfg.trials, cfg.seed, cfg.threads);

  OutputFiles files;
  if (cfg.format == OutputFormat::csv) {
    std::ostringstream csv;
    write_cdf_csv(csv, cdf, ref ? &ref : nullptr, cfg.mc.grid_points);
    files["cdf.csv"] = csv.str();
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < cfg.mc.grid_points; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(cfg.mc.grid_points - 1);
      rows.push_back({{"x", x}, {"F_emp", cdf(x)}, {"F_ref", ref ? json(ref(x)) : json(nullptr)}});
    }
    files["cdf.json"] = dump(rows);
  }

  json meta{{"seed", cfg.seed},
            {"trials", *cfg.trials},
            {"graph", to_json(g)},
            {"target", cfg.target},
            {"law", to_string(cfg.law.kind)},
            {"evaluator", exact ? "exact" : "search-lower-bound"},
            {"label", exact ? "kappa CDF" : "lower-bound CDF"},
            {"reference", ref_name},
            {"dkw_radius_1e-6", dkw_radius(*cfg.trials, 1e-6)}};
  meta["ks"] = ref ? json(ks_distance(cdf, ref)) : json(nullptr);
  files["metadata.json"] = dump(meta);
  return files;
}

OutputFiles cmd_pump(const ExperimentConfig& cfg, std::ostream&) {
  if (cfg.graph.meta().kind != Family::halfline)
    throw Error(ErrorCode::config, "config error at 'graph.family': pump needs a halfline graph");
  if (cfg.initial && cfg.pump.seed_count != 1)
    throw Error(ErrorCode::config, "config error at 'pump.seeds': an explicit initial profile allows one run");

  const std::size_t runs = cfg.pump.seed_count;
  std::vector<PumpReport> reports(runs);
  parallel_for(runs, cfg.threads, [&](std::size_t i) {
    const WaterProfile p0 = cfg.initial ? *cfg.initial : sample_halfline_profile(cfg.graph, cfg.law, cfg.seed + i);
    reports[i] = run_pump(cfg.graph, p0, cfg.pump.settings);
  });

  OutputFiles files;
  json summary = json::array();
  std::ostringstream summary_csv;
  summary_csv << "seed,selected,stages,captured_mass,product_bound,final_level\n";
  double mean_captured = 0.0, mean_bound = 0.0, mean_final = 0.0;
  for (std::size_t i = 0; i < runs; ++i) {
    const PumpReport& r = reports[i];
    const std::uint64_t seed = cfg.seed + i;
    const std::string tag = "seed" + std::to_string(seed);
    json report = to_json(r);
    report["seed"] = seed;
    files["pump_" + tag + ".json"] = dump(report);
    if (cfg.format == OutputFormat::csv) {
      std::ostringstream stages;
      write_stage_csv(stages, r);
      files["stages_" + tag + ".csv"] = stages.str();
    }
    summary_csv << seed << ',' << r.selected_indices.size() << ',' << r.stages.size() << ','
                << format_real(r.total_mass_captured) << ',' << format_real(r.product_bound) << ','
                << format_real(r.final_level) << '\n';
    summary.push_back({{"seed", seed},
                       {"selected", r.selected_indices.size()},
                       {"stages", r.stages.size()},
                       {"captured_mass", r.total_mass_captured},
                       {"product_bound", r.product_bound},
                       {"final_level", r.final_level}});
    mean_captured += r.total_mass_captured / static_cast<double>(runs);
    mean_bound += r.product_bound / static_cast<double>(runs);
    mean_final += r.final_level / static_cast<double>(runs);
  }
  summary_csv << "mean,,," << format_real(mean_captured) << ',' << format_real(mean_bound) << ','
              << format_real(mean_final) << '\n';
  if (cfg.format == OutputFormat::csv) {
    files["summary.csv"] = summary_csv.str();
  } else {
    files["summary.json"] = dump({{"runs", summary},
                                  {"mean", {{"captured_mass", mean_captured},
                                            {"product_bound", mean_bound},
                                            {"final_level", mean_final}}}});
  }
  return files;
}

void apply_overrides(ExperimentConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  if (o.format) cfg.format = *o.format;
  if (o.threads) cfg.threads = *o.threads;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::contract_violation: return 3;
    case ErrorCode::resource_budget:
    case ErrorCode::non_convergence:
    case ErrorCode::stage_convergence: return 4;
    default: return 2;
  }
}

int run(const std::string& command, const std::string& config_path, const Overrides& overrides,
        std::ostream& err) {
  try {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorCode::config, "cannot read config file '" + config_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ExperimentConfig cfg = parse_config(text);
    apply_overrides(cfg, overrides);

    OutputFiles files;
    int code = 0;
    if (command == "simulate") {
      files = cmd_simulate(cfg, err);
    } else if (command == "kappa") {
      bool partial = false;
      files = cmd_kappa(cfg, err, partial);
      if (partial) code = 4;
    } else if (command == "mc-cdf") {
      files = cmd_mc_cdf(cfg, err);
    } else if (command == "pump") {
      files = cmd_pump(cfg, err);
    } else {
      throw Error(ErrorCode::config, "unknown command '" + command + "'");
    }

    std::filesystem::create_directories(cfg.out_dir);
    for (const auto& [name, contents] : files) {
      std::ofstream out(std::filesystem::path(cfg.out_dir) / name, std::ios::binary);
      out << contents;
      if (!out) throw Error(ErrorCode::config, "cannot write output file '" + name + "'");
    }
    std::ofstream info(std::filesystem::path(cfg.out_dir) / run_info_file, std::ios::binary);
    info << dump({{"command", command}, {"timestamp", timestamp()}});
    return code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace aqua::cli
