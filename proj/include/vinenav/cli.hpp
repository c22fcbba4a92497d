// Command-line front end: `run`, `experiment` and `replay`.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vinenav/errors.hpp"
#include "vinenav/harness.hpp"

namespace vinenav::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kSearchFailed = 3,
  kBudgetExceeded = 4,
  kIo = 5,
};

class UsageError : public NavError {
 public:
  using NavError::NavError;
};

enum class Subcommand { Run, Experiment, Replay };

struct CliConfig {
  Subcommand subcommand{Subcommand::Run};
  std::string scenario_file;
  std::vector<std::string> overrides;
  std::filesystem::path output_dir{"out"};
  std::filesystem::path log_dir;  // replay input; defaults to output_dir
  bool emit_svg{false};
  std::optional<std::uint64_t> seed;
  std::optional<Side> side;
  /// Resolved scenario (run / experiment only).
  Scenario scenario;
};

/// Parses and resolves the scenario. `env_seed` is the value of
/// VINEYARD_NAV_SEED, used when --seed is absent. Throws UsageError naming the
/// offending token. Returns nullopt when help was requested (text in `help`).
std::optional<CliConfig> parse_args(const std::vector<std::string>& args, const char* env_seed,
                                    std::string* help = nullptr);

/// Executes a parsed command, writing files under output_dir and the status
/// line to `out`. Returns the process exit code.
int execute(const CliConfig& config, std::ostream& out);

/// parse_args + execute with every failure mapped to an exit code and a status line.
int main(const std::vector<std::string>& args, const char* env_seed, std::ostream& out, std::ostream& err);

int exit_code_for(TerminalStatus status);

}  // namespace vinenav::cli
