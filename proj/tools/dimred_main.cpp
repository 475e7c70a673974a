// dimred: desk-scale spectra of dilute bosons in elongated traps and their
// effective one-dimensional description.
//
// Usage:
//   dimred <subcommand> --config <path> [--out <dir>] [--workers N]
//          [--no-cache]
//
// Subcommands: scatter, transverse, ll-spectrum, branches, bounds,
// verify-2body, sweep, accept.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 acceptance failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dimred/harness.hpp"
#include "dimred/numerics.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dimred: quasi-1D reduction toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  bool no_cache = false;

  const std::vector<std::string> names = {
      "scatter", "transverse", "ll-spectrum", "branches",
      "bounds",  "verify-2body", "sweep",     "accept"};
  for (const auto& n : names) {
    auto* sub = app.add_subcommand(n);
    sub->add_option("--config", config_path, "run configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "concurrent sweep workers");
    sub->add_flag("--no-cache", no_cache, "disable the on-disk cache");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    dimred::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = dimred::RunConfig::parse_file(config_path);
    } else if (sub != "accept") {
      std::cerr << "error: --config is required for '" << sub << "'\n";
      return 1;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    if (no_cache) cfg.cache_enabled = false;

    const dimred::Report rep = dimred::run_subcommand(sub, cfg);
    if (rep.exit_code == 0)
      std::cerr << "report written to "
                << (cfg.out_dir / "report.json").string() << "\n";
    return rep.exit_code;
  } catch (const dimred::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const dimred::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
