#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace aqua::cli {

/// File name -> contents. Commands build every output in memory so nothing is
/// written unless the whole run succeeds.
using OutputFiles = std::map<std::string, std::string>;

/// Output files that are not covered by the determinism guarantee.
inline constexpr const char* run_info_file = "run_info.json";

OutputFiles cmd_simulate(const ExperimentConfig& cfg, std::ostream& warn);
OutputFiles cmd_kappa(const ExperimentConfig& cfg, std::ostream& warn, bool& partial);
OutputFiles cmd_mc_cdf(const ExperimentConfig& cfg, std::ostream& warn);
OutputFiles cmd_pump(const ExperimentConfig& cfg, std::ostream& warn);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<OutputFormat> format;
  std::optional<std::size_t> threads;
};

void apply_overrides(ExperimentConfig& cfg, const Overrides& o);

/// 0 success, 2 config or input error, 3 numeric contract violation,
/// 4 resource budget exceeded.
int exit_code_for(ErrorCode code);

/// Loads the config file, runs `command` and writes its outputs into the
/// output directory. Diagnostics go to `err`.
int run(const std::string& command, const std::string& config_path, const Overrides& overrides,
        std::ostream& err);

}  // namespace aqua::cli
