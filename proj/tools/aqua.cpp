// Command-line runner for water-transport experiments.
//
//   aqua simulate --config run.json --out results/
//   aqua kappa    --config run.json
//   aqua mc-cdf   --config run.json --seed 7 --threads 4
//   aqua pump     --config run.json --format json

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Water transport on graphs: simulation, kappa bounds, CDFs and pumping"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format;
  std::size_t threads = 0;

  const char* commands[][2] = {
      {"simulate", "Apply a move sequence and write the per-step trace"},
      {"kappa", "Bound the supremum of reachable levels at the target"},
      {"mc-cdf", "Monte Carlo CDF of kappa under random initial levels"},
      {"pump", "Run the staged pumping strategy on a half-line"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--format", format, "Tabular output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "Worker threads (fallback: AQUA_THREADS)")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  aqua::cli::Overrides overrides;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--out")) overrides.out_dir = out_dir;
  if (sub->count("--format"))
    overrides.format = format == "json" ? aqua::cli::OutputFormat::json : aqua::cli::OutputFormat::csv;
  if (sub->count("--threads")) {
    overrides.threads = threads;
  } else if (const char* env = std::getenv("AQUA_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) overrides.threads = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring AQUA_THREADS='" << env << "'\n";
    }
  }

  return aqua::cli::run(sub->get_name(), config_path, overrides, std::cerr);
}
