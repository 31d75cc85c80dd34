#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spdc/io/config.hpp"

namespace spdc::io {

/// Command-line overrides.
struct RunOptions {
  std::size_t threads = 1;
  std::optional<std::string> output_dir;
  bool no_heatmap = false;
};

struct RunReport {
  std::string output_dir;
  std::vector<std::string> files;
  bool clipped = false;
};

/// Compute the configured observable and write manifest.json, the grid data and the optional heatmap
/// into the output directory. Configs carrying a [sweep] section are rejected (use sweep).
RunReport run(const RunConfig& cfg, const RunOptions& options = {});

/// One run per sweep value, each in its own subdirectory, plus sweep.json in the parent.
std::vector<RunReport> sweep(const RunConfig& cfg, const RunOptions& options = {});

/// Resolve the material, period and grids without computing anything. Returns a short summary.
/// Throws the same errors a run would raise before computing.
std::string validate_config(const RunConfig& cfg);

}  // namespace spdc::io
