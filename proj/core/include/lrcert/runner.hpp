#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lrcert/config.hpp"

namespace lrcert {

/// Exit statuses of a run.
inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolations = 2;

/// `constants`, `certify-lemma1`, `certify-theorem`, `lightcone`, `holevo`, `lr-check`,
/// `area-law`, `all`.
const std::vector<std::string>& command_names();

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<double> mu;  ///< replaces the config's μ list
  std::optional<int> workers;
};

struct RunResult {
  int exit_code = kExitCertified;
  std::vector<std::string> artifacts;  ///< paths written, in write order
  std::string stdout_text;             ///< human summary, or the constants JSON for `constants`
  std::string error_json;              ///< structured error when exit_code == kExitError
};

/// Runs one command. Library errors never escape: they become exit code 1 with a JSON
/// message of the form {"error": kind, "message": ..., "command": ...}.
RunResult run(const RunConfig& config, std::string_view command, const RunOptions& options = {});

}  // namespace lrcert
