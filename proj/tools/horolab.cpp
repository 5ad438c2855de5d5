#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "horolab/harness/run.hpp"

namespace hh = horolab::harness;

int main(int argc, char** argv) {
  CLI::App app{"horolab: experiments on curves, flows and lattices"};
  app.require_subcommand(1);

  std::string config, out;
  std::uint64_t seed = 0;
  int jobs = 0;
  auto* run = app.add_subcommand("run", "run one experiment config into an artifact directory");
  run->add_option("--config", config, "experiment config (JSON)")->required();
  run->add_option("--out", out, "artifact directory")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
  run->add_option("--jobs", jobs, "OpenMP threads (0 keeps the default)")->check(CLI::NonNegativeNumber);

  std::string dir;
  auto* rep = app.add_subcommand("report", "print a digest of an artifact directory");
  rep->add_option("dir", dir, "artifact directory")->required();

  std::string preset_dir = hh::default_preset_dir();
  auto* list = app.add_subcommand("list-presets", "list the shipped experiment presets");
  list->add_option("--dir", preset_dir, "preset directory");

  auto* schema = app.add_subcommand("schema", "print the config schema as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = hh::load_config(config);
      hh::RunOptions opts{out, std::nullopt, jobs};
      if (*seed_opt) opts.seed_override = seed;
      const auto res = hh::run(cfg, opts);
      std::cout << hh::report(out);
      if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
      return res.exit_code;
    }
    if (*rep) {
      std::cout << hh::report(dir);
      return 0;
    }
    if (*list) {
      const auto presets = hh::list_presets(preset_dir);
      if (presets.empty()) {
        std::cerr << "no presets found in " << preset_dir << "\n";
        return 1;
      }
      for (const auto& p : presets)
        std::cout << p.name << "  " << (p.criterion.empty() ? "-" : p.criterion) << "  " << p.kind << "  "
                  << p.description << "\n";
      return 0;
    }
    if (*schema) {
      std::cout << hh::config_schema().dump(2) << "\n";
      return 0;
    }
  } catch (const hh::ConfigError& e) {
    std::cerr << "config error:\n";
    for (const auto& d : e.diagnostics) std::cerr << "  " << d << "\n";
    return hh::kConfigError;
  } catch (const hh::ReportError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
