// spdc: command-line driver. See README for the config format.
#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "spdc/errors.hpp"
#include "spdc/io/config.hpp"
#include "spdc/io/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Joint amplitude and spectra of SPDC in chirped QPM crystals"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  std::size_t threads = 1;
  bool no_heatmap = false;

  auto add_common = [&](CLI::App* sub, bool computes) {
    sub->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    if (!computes) return;
    sub->add_option("--output-dir", output_dir, "Override [output] dir");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores); results do not depend on it");
    sub->add_flag("--no-heatmap", no_heatmap, "Skip PGM heatmaps");
  };
  auto* run_cmd = app.add_subcommand("run", "Compute one observable");
  add_common(run_cmd, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "Run once per value of the [sweep] parameter");
  add_common(sweep_cmd, true);
  auto* validate_cmd = app.add_subcommand("validate", "Check a config without computing");
  add_common(validate_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cfg = spdc::io::load_config(config_path);
    spdc::io::RunOptions options;
    options.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    if (!output_dir.empty()) options.output_dir = output_dir;
    options.no_heatmap = no_heatmap;

    if (*validate_cmd) {
      std::cout << "ok: " << spdc::io::validate_config(cfg) << "\n";
      return 0;
    }
    if (*run_cmd) {
      const auto report = spdc::io::run(cfg, options);
      for (const auto& f : report.files) std::cout << report.output_dir << "/" << f << "\n";
      if (report.clipped) std::cerr << "warning: inner integration window clips the support (see manifest)\n";
      return 0;
    }
    const auto reports = spdc::io::sweep(cfg, options);
    for (const auto& r : reports) {
      std::cout << r.output_dir << "\n";
      if (r.clipped) std::cerr << "warning: " << r.output_dir << ": inner integration window clips the support\n";
    }
    return 0;
  } catch (const spdc::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
