#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/harness/run.hpp"

namespace horolab::harness::detail {

/// Shortest round-trip text for a double; CSV cells must be byte-stable.
std::string num(double x);

class Csv {
 public:
  explicit Csv(std::vector<std::string> header);
  template <class... Ts>
  void row(const Ts&... cells) {
    std::vector<std::string> r;
    (r.push_back(cell(cells)), ...);
    add(std::move(r));
  }
  void add(std::vector<std::string> cells);
  std::string text() const;

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double x) { return num(x); }
  static std::string cell(bool b) { return b ? "1" : "0"; }
  template <class T>
    requires std::is_integral_v<T>
  static std::string cell(T x) { return std::to_string(x); }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

class Artifact {
 public:
  explicit Artifact(std::string dir) : dir_(std::move(dir)) {}
  const std::string& dir() const { return dir_; }
  void write(const std::string& name, const Csv& csv) const;
  void write(const std::string& name, const nlohmann::json& j) const;

 private:
  std::string dir_;
};

struct ExperimentOutput {
  std::vector<Check> checks;
  bool budget_exceeded = false;
};

/// Tallies pass counts under a fixed anchor.
struct Tally {
  Check check;
  Tally(std::string id, std::string anchor, bool gating = true) {
    check.id = std::move(id);
    check.anchor = std::move(anchor);
    check.gating = gating;
  }
  bool add(bool ok) {
    ++check.total;
    if (ok) ++check.passed;
    return ok;
  }
};

using ExperimentFn = ExperimentOutput (*)(const ExperimentConfig&, std::uint64_t seed, const Artifact&);
ExperimentFn experiment_for(const std::string& kind);

}  // namespace horolab::harness::detail
