#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/harness/config.hpp"

namespace horolab::harness {

/// One line of the summary: a named check with its pass count.
struct Check {
  std::string id;
  /// Human-readable anchor, e.g. "basic lemma part (3): S nonempty".
  std::string anchor;
  long passed = 0;
  long total = 0;
  /// Informational checks are reported but never fail the run.
  bool gating = true;
  std::string detail;

  bool pass() const { return passed == total; }
};

struct RunOptions {
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  int jobs = 0;  // 0 keeps the OpenMP default
};

struct RunResult {
  int exit_code = kPass;
  std::string criterion;
  std::vector<Check> checks;
  double runtime_seconds = 0;
  bool budget_exceeded = false;
  std::string error;
};

/// Runs one experiment and writes manifest.json, CSVs and summary.json into opts.out_dir.
RunResult run(const ExperimentConfig& config, const RunOptions& opts);

struct ReportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Digest of an artifact directory, failures first.
std::string report(const std::string& dir);

struct Preset {
  std::string name;
  std::string path;
  std::string kind;
  std::string criterion;
  std::string description;
};

/// Shipped presets found in a config directory, sorted by criterion.
std::vector<Preset> list_presets(const std::string& dir);
/// Directory holding the presets shipped with the source tree.
std::string default_preset_dir();

std::string code_version();

}  // namespace horolab::harness
