#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/crystal.hpp"
#include "spdc/observables.hpp"
#include "spdc/pump.hpp"

namespace spdc::io {

enum class Observable { Pmf, Joint, Marginal, Spacetime };

std::string to_string(Observable o);

enum class GridFormat { Text, Binary };

struct SweepSpec {
  /// Dotted key, e.g. `crystal.chirp_D`.
  std::string parameter;
  std::vector<double> values;

  bool operator==(const SweepSpec&) const = default;
};

/// Fully parsed run description. Optional fields are resolved against the material data by
/// `resolve_context` / `resolve_request`.
struct RunConfig {
  Observable observable = Observable::Joint;
  std::string material_file;

  PumpConfig pump;
  CrystalConfig crystal;
  /// period_um = auto: solve the collinear degenerate period at period_reference_c.
  bool period_auto = false;
  /// z0 = ratio_r * L unless z0_um is given.
  double ratio_r = 0.5;
  std::optional<double> z0_um;

  // joint / marginal / spacetime
  std::optional<ClosedRange> omega_i_range;
  std::size_t omega_i_count = 256;
  ClosedRange k_xs_range{-0.7, 0.7};
  std::size_t k_xs_count = 256;
  std::size_t inner_omega_count = 128;
  std::size_t inner_k_count = 128;
  std::optional<ClosedRange> inner_omega_range;
  std::optional<ClosedRange> inner_k_range;
  bool exact = false;
  std::vector<WindowFilter> filters;
  /// Fixed-k_xs cuts written next to the marginal.
  std::vector<double> cut_k_xs;
  std::size_t pad_factor = 4;

  // pmf
  std::optional<ClosedRange> omega_s_range;
  std::size_t omega_s_count = 256;
  bool pmf_collinear = true;
  double pmf_kx = 0.0;

  std::optional<SweepSpec> sweep;

  std::string output_dir = "spdc-out";
  bool emit_heatmap = true;
  GridFormat format = GridFormat::Text;
  /// Re-run with doubled inner counts and record the pointwise change in the manifest.
  bool convergence_check = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parse the INI-style config. `source` names the document in error messages.
/// Throws ParseError (with line number) on unknown keys, bad values, or missing `observable`.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

/// Set one numeric parameter by dotted key (the keys accepted in [sweep] parameter).
/// Throws std::invalid_argument for unknown keys.
void apply_parameter(RunConfig& cfg, const std::string& key, double value);
std::vector<std::string> sweepable_parameters();

/// Material path with the built-in default substituted for an empty field.
std::string material_path(const RunConfig& cfg);

/// Build the JafContext: loads the material, fills z0 and an automatic period.
JafContext resolve_context(const RunConfig& cfg);

ObservableRequest resolve_request(const RunConfig& cfg, const JafContext& ctx, std::size_t threads);

}  // namespace spdc::io
