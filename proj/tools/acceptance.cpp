#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "horolab/harness/run.hpp"

namespace hh = horolab::harness;

int main(int argc, char** argv) {
  CLI::App app{"Runs every acceptance preset and prints one line per criterion"};
  std::string preset_dir = hh::default_preset_dir();
  std::string out = "acceptance_artifacts";
  app.add_option("--presets", preset_dir, "preset directory");
  app.add_option("--out", out, "root of the per-criterion artifact directories");
  CLI11_PARSE(app, argc, argv);

  std::map<int, std::vector<hh::Preset>> by_ac;
  for (const auto& p : hh::list_presets(preset_dir))
    if (p.criterion.rfind("AC", 0) == 0) by_ac[std::stoi(p.criterion.substr(2))].push_back(p);

  bool all = true;
  for (int ac = 1; ac <= 10; ++ac) {
    const std::string id = "AC" + std::to_string(ac);
    auto it = by_ac.find(ac);
    if (it == by_ac.end() || it->second.size() != 1) {
      std::cout << id << " FAIL  expected exactly one preset, found "
                << (it == by_ac.end() ? 0 : it->second.size()) << "\n";
      all = false;
      continue;
    }
    const auto& preset = it->second.front();
    hh::RunResult res;
    try {
      res = hh::run(hh::load_config(preset.path), {(std::filesystem::path(out) / preset.name).string(), {}, 0});
    } catch (const std::exception& e) {
      std::cout << id << " FAIL  " << preset.name << ": " << e.what() << "\n";
      all = false;
      continue;
    }
    const bool pass = res.exit_code == hh::kPass;
    all = all && pass;
    std::cout << id << (pass ? " PASS  " : " FAIL  ") << preset.kind << "  ";
    bool first = true;
    for (const auto& c : res.checks) {
      if (!c.gating) continue;
      std::cout << (first ? "" : "; ") << c.id << " " << c.passed << "/" << c.total;
      if (!c.detail.empty() && c.id != "runtime") std::cout << " (" << c.detail << ")";
      first = false;
    }
    std::cout << "  [" << std::fixed << std::setprecision(2) << res.runtime_seconds << " s]\n";
  }
  std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}
