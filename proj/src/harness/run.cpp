#include "horolab/harness/run.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <omp.h>

#include "artifact.hpp"
#include "horolab/dirichlet/dirichlet.hpp"

#ifndef HOROLAB_VERSION
#define HOROLAB_VERSION "unknown"
#endif
#ifndef HOROLAB_PRESET_DIR
#define HOROLAB_PRESET_DIR "configs"
#endif

namespace horolab::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace detail {

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

Csv::Csv(std::vector<std::string> header) : header_(std::move(header)) {}

void Csv::add(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string Csv::text() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      const bool quote = r[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        out += r[i];
        continue;
      }
      out += '"';
      for (char c : r[i]) out += c == '"' ? std::string("\"\"") : std::string(1, c);
      out += '"';
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void Artifact::write(const std::string& name, const Csv& csv) const {
  std::ofstream(fs::path(dir_) / name, std::ios::binary) << csv.text();
}

void Artifact::write(const std::string& name, const json& j) const {
  std::ofstream(fs::path(dir_) / name, std::ios::binary) << j.dump(2) << '\n';
}

}  // namespace detail

std::string code_version() { return HOROLAB_VERSION; }
std::string default_preset_dir() { return HOROLAB_PRESET_DIR; }

namespace {

json check_json(const Check& c) {
  return {{"id", c.id},         {"anchor", c.anchor}, {"passed", c.passed}, {"total", c.total},
          {"gating", c.gating}, {"pass", c.pass()},   {"detail", c.detail}};
}

std::string summary_key(const ExperimentConfig& cfg) {
  const auto c = cfg.criterion();
  return c.empty() ? cfg.kind : c;
}

}  // namespace

RunResult run(const ExperimentConfig& config, const RunOptions& opts) {
  RunResult res;
  res.criterion = config.criterion();
  if (opts.out_dir.empty()) throw ConfigError({"an output directory is required"});
  if (opts.jobs > 0) omp_set_num_threads(opts.jobs);

  ExperimentConfig cfg = config;
  if (opts.seed_override) {
    cfg.seed = *opts.seed_override;
    cfg.has_seed = true;
    cfg.doc["seed"] = cfg.seed;
  }
  fs::create_directories(opts.out_dir);
  const detail::Artifact art(opts.out_dir);
  art.write("manifest.json", json{{"tool", "horolab"},
                                  {"version", code_version()},
                                  {"kind", cfg.kind},
                                  {"criterion", res.criterion},
                                  {"seed", cfg.has_seed ? json(cfg.seed) : json(nullptr)},
                                  {"config", cfg.doc}});

  const auto start = std::chrono::steady_clock::now();
  detail::ExperimentOutput out;
  try {
    out = detail::experiment_for(cfg.kind)(cfg, cfg.seed, art);
  } catch (const dirichlet::BudgetExceeded& e) {
    out.budget_exceeded = true;
    res.error = e.what();
  }
  res.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const double limit = cfg.doc.contains("max_seconds") ? cfg.doc["max_seconds"].get<double>() : 0.0;
  if (limit > 0) {
    Check rt{"runtime", "runtime under " + detail::num(limit) + " s", 0, 1, true, detail::num(res.runtime_seconds) + " s"};
    if (res.runtime_seconds < limit) rt.passed = 1;
    else out.budget_exceeded = true;
    out.checks.push_back(rt);
  }
  res.checks = std::move(out.checks);
  res.budget_exceeded = out.budget_exceeded;

  const bool failed = std::any_of(res.checks.begin(), res.checks.end(), [](const Check& c) {
    return c.gating && c.id != "runtime" && !c.pass();
  });
  res.exit_code = failed ? kCheckFailure : res.budget_exceeded ? kBudgetExceeded : kPass;

  json checks = json::array();
  for (const auto& c : res.checks) checks.push_back(check_json(c));
  json entry = {{"kind", cfg.kind},
                {"pass", res.exit_code == kPass},
                {"exit_code", res.exit_code},
                {"runtime_seconds", res.runtime_seconds},
                {"budget_exceeded", res.budget_exceeded},
                {"checks", checks}};
  if (!res.error.empty()) entry["error"] = res.error;
  art.write("summary.json", json{{summary_key(cfg), entry}});
  return res;
}

std::string report(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::exists(root / "manifest.json"))
    throw ReportError("no manifest.json in '" + dir +
                      "'. Hint: produce an artifact first, e.g. `horolab run --config configs/ac01_identity_suite.json "
                      "--out " + dir + "`.");
  json manifest, summary;
  std::ifstream(root / "manifest.json") >> manifest;
  if (!fs::exists(root / "summary.json"))
    throw ReportError("manifest found but summary.json is missing in '" + dir + "'; the run did not finish. Rerun it.");
  std::ifstream(root / "summary.json") >> summary;

  struct Line {
    bool fail;
    bool gating;
    std::string key, anchor, count, detail;
  };
  std::vector<Line> lines;
  std::ostringstream os;
  os << "horolab report for " << dir << "\n";
  os << "kind " << manifest.value("kind", "?") << ", version " << manifest.value("version", "?") << ", seed "
     << (manifest["seed"].is_null() ? std::string("none") : manifest["seed"].dump()) << "\n";
  for (const auto& [key, entry] : summary.items()) {
    os << key << ": " << (entry.value("pass", false) ? "PASS" : "FAIL") << " (exit " << entry.value("exit_code", -1)
       << ", " << std::fixed << std::setprecision(2) << entry.value("runtime_seconds", 0.0) << " s)\n";
    for (const auto& c : entry["checks"]) {
      const bool fail = !c.value("pass", false);
      lines.push_back({fail && c.value("gating", true), c.value("gating", true), key, c.value("anchor", ""),
                       std::to_string(c.value("passed", 0)) + "/" + std::to_string(c.value("total", 0)),
                       c.value("detail", "")});
    }
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) { return a.fail > b.fail; });
  size_t width = 0;
  for (const auto& l : lines) width = std::max(width, l.anchor.size());
  for (const auto& l : lines) {
    const char* mark = l.fail ? "FAIL" : !l.gating ? "INFO" : "ok  ";
    os << "  " << mark << "  " << std::left << std::setw(static_cast<int>(width)) << l.anchor << "  " << l.count
       << (l.fail || !l.gating ? "" : " pass");
    if (!l.detail.empty()) os << "  [" << l.detail << "]";
    os << "\n";
  }
  return os.str();
}

std::vector<Preset> list_presets(const std::string& dir) {
  std::vector<Preset> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    Preset p;
    p.name = e.path().stem().string();
    p.path = e.path().string();
    try {
      const auto cfg = load_config(p.path);
      p.kind = cfg.kind;
      p.criterion = cfg.criterion();
      p.description = cfg.doc.value("description", "");
    } catch (const ConfigError& err) {
      p.kind = "invalid";
      p.description = err.what();
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const Preset& a, const Preset& b) { return a.name < b.name; });
  return out;
}

}  // namespace horolab::harness
