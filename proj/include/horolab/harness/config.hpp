#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace horolab::harness {

/// Exit-code contract of the CLI.
enum ExitCode : int { kPass = 0, kConfigError = 2, kCheckFailure = 3, kBudgetExceeded = 4 };

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> diagnostics);
  std::vector<std::string> diagnostics;
};

/// A validated experiment configuration: the raw document with defaults filled in.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  bool has_seed = false;
  nlohmann::json doc;

  /// Acceptance-criterion identifier addressed by this kind ("AC1".."AC10"), or "" for none.
  std::string criterion() const;
};

/// Names of the supported experiment kinds.
std::vector<std::string> experiment_kinds();
/// Published schema: per kind, each key with its type, default and whether it is required.
nlohmann::json config_schema();

/// Validates against the schema (unknown keys rejected, seed mandatory for stochastic kinds).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

}  // namespace horolab::harness
