#include "spdc/io/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "spdc/errors.hpp"
#include "spdc/io/grid_io.hpp"
#include "spdc/mathkit/quadrature.hpp"
#include "spdc/observables.hpp"
#include "spdc/units.hpp"

namespace spdc::io {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr double kConvergenceThreshold = 1e-2;
constexpr double kConvergenceTolerance = 1e-3;

json axis_json(const mathkit::UniformAxis& ax) {
  return json{{"name", ax.name}, {"unit", ax.unit}, {"min", ax.min}, {"max", ax.max}, {"count", ax.count}};
}

class OutputDir {
 public:
  OutputDir(const std::string& dir, GridFormat format) : dir_(dir), format_(format) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw std::runtime_error("cannot create output directory '" + dir + "'");
  }

  template <class Grid>
  std::string grid(const std::string& stem, const Grid& g) {
    const bool text = format_ == GridFormat::Text;
    const std::string name = stem + (text ? ".grid" : ".bin");
    auto out = open(name, !text);
    if (text)
      write_grid_text(out, g);
    else
      write_grid_binary(out, g);
    return finish(out, name);
  }
  std::string series(const std::string& stem, const mathkit::Series1D& s) {
    const std::string name = stem + ".series";
    auto out = open(name, false);
    write_series_text(out, s);
    return finish(out, name);
  }
  std::string heatmap(const std::string& stem, const mathkit::RealGrid2D& g) {
    const std::string name = stem + ".pgm";
    auto out = open(name, true);
    write_heatmap_pgm(out, g);
    return finish(out, name);
  }
  std::string text(const std::string& name, const std::string& body) {
    auto out = open(name, false);
    out << body;
    return finish(out, name);
  }
  const std::vector<std::string>& files() const { return files_; }
  std::string path() const { return dir_.string(); }

 private:
  std::ofstream open(const std::string& name, bool binary) {
    std::ofstream out(dir_ / name, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write '" + (dir_ / name).string() + "'");
    return out;
  }
  std::string finish(std::ofstream& out, const std::string& name) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + (dir_ / name).string() + "'");
    files_.push_back(name);
    return name;
  }

  fs::path dir_;
  GridFormat format_;
  std::vector<std::string> files_;
};

mathkit::UniformAxis pmf_axis(const RunConfig& cfg, const JafContext& ctx, bool signal) {
  const auto& range = signal ? cfg.omega_s_range : cfg.omega_i_range;
  const std::size_t count = signal ? cfg.omega_s_count : cfg.omega_i_count;
  const std::string name = signal ? "omega_s" : "omega_i";
  if (range) return {name, "rad/fs", range->lo, range->hi, count};
  auto ax = default_omega_i_axis(ctx, count);
  ax.name = name;
  return ax;
}

json resolved_json(const JafContext& ctx) {
  return json{{"material", ctx.dispersion().name()},
              {"period_um", effective_period(ctx.crystal())},
              {"z0_um", ctx.crystal().z0_um},
              {"xi", ctx.xi()},
              {"omega_pc_rad_per_fs", ctx.omega_pc()},
              {"sigma_omega_rad_per_fs", ctx.sigma()},
              {"k0_rad_per_um", ctx.k0()}};
}

}  // namespace

std::string validate_config(const RunConfig& cfg) {
  const JafContext ctx = resolve_context(cfg);
  std::ostringstream o;
  o << "observable " << to_string(cfg.observable) << ", material " << ctx.dispersion().name() << ", period "
    << effective_period(ctx.crystal()) << " um, xi " << ctx.xi();
  if (cfg.observable == Observable::Pmf) {
    const auto s = pmf_axis(cfg, ctx, true);
    const auto i = pmf_axis(cfg, ctx, false);
    for (double w : {s.min, s.max, i.min, i.max, s.min + i.min, s.max + i.max})
      if (!ctx.dispersion().covers_omega(w))
        throw DomainError("pmf axis frequency " + std::to_string(w) + " rad/fs outside the dispersion data");
    o << ", pmf grid " << s.count << "x" << i.count;
  } else {
    const auto req = resolve_request(cfg, ctx, 1);
    mathkit::validate(req.omega_i);
    mathkit::validate(req.k_xs);
    o << ", outer grid " << req.omega_i.count << "x" << req.k_xs.count << " over omega_i [" << req.omega_i.min
      << ", " << req.omega_i.max << "] rad/fs";
  }
  if (cfg.sweep) o << ", sweep over " << cfg.sweep->parameter << " (" << cfg.sweep->values.size() << " values)";
  return o.str();
}

RunReport run(const RunConfig& cfg, const RunOptions& options) {
  if (cfg.sweep) throw std::invalid_argument("config has a [sweep] section; use the sweep command");
  const JafContext ctx = resolve_context(cfg);
  OutputDir out(options.output_dir.value_or(cfg.output_dir), cfg.format);
  const bool heatmap = cfg.emit_heatmap && !options.no_heatmap;

  json manifest;
  manifest["program"] = "spdc";
  manifest["version"] = kVersion;
  manifest["observable"] = to_string(cfg.observable);
  manifest["config"] = serialize_config(cfg);
  manifest["resolved"] = resolved_json(ctx);
  json results = json::object();
  RunReport report;

  if (cfg.observable == Observable::Pmf) {
    const auto map = pmf_map(pmf_axis(cfg, ctx, true), pmf_axis(cfg, ctx, false), ctx, cfg.pmf_collinear, cfg.pmf_kx);
    out.grid("pmf", map);
    if (heatmap) out.heatmap("pmf", map);
    results["max_abs_pmf"] = *std::max_element(map.values().begin(), map.values().end());
  } else {
    const auto req = resolve_request(cfg, ctx, options.threads);
    const auto joint = joint_spectrum(req, ctx);
    report.clipped = joint.clipped;
    manifest["inner_axes"] = json{{"d_omega", axis_json(joint.inner_omega)}, {"d_k", axis_json(joint.inner_k)}};
    manifest["clipping"] = json{{"clipped", joint.clipped}, {"worst_boundary_ratio", joint.worst_boundary_ratio}};
    results["raw_integral"] = joint.raw_integral;
    results["normalization"] = mathkit::integrate_grid(joint.values);

    if (cfg.convergence_check) {
      auto fine_req = req;
      fine_req.inner_omega = ClosedRange{joint.inner_omega.min, joint.inner_omega.max};
      fine_req.inner_k = ClosedRange{joint.inner_k.min, joint.inner_k.max};
      fine_req.inner_omega_count = 2 * req.inner_omega_count - 1;
      fine_req.inner_k_count = 2 * req.inner_k_count - 1;
      const auto fine = joint_spectrum(fine_req, ctx);
      const double change = mathkit::max_relative_change(joint.values, fine.values, kConvergenceThreshold);
      manifest["convergence"] = json{{"checked", true},
                                     {"max_relative_change", change},
                                     {"threshold_fraction", kConvergenceThreshold},
                                     {"converged", change < kConvergenceTolerance}};
    } else {
      manifest["convergence"] = json{{"checked", false}};
    }

    out.grid("joint", joint.values);
    if (heatmap && cfg.observable != Observable::Spacetime) out.heatmap("joint", joint.values);

    if (cfg.observable == Observable::Marginal) {
      const auto s = marginal_spectrum(joint.values);
      out.series("marginal", s);
      results["marginal_integral"] = mathkit::trapezoid(s.values, s.axis.step());
      results["marginal_half_max_support"] = half_max_support(s);
      results["marginal_regions_above_half"] = count_regions_above(s, 0.5);
      json cuts = json::array();
      for (std::size_t k = 0; k < cfg.cut_k_xs.size(); ++k) {
        const auto c = cut_at_kxs(joint.values, cfg.cut_k_xs[k]);
        const std::string name = out.series("cut_" + std::to_string(k), c);
        cuts.push_back(json{{"k_xs", cfg.cut_k_xs[k]},
                            {"file", name},
                            {"half_max_support", half_max_support(c)},
                            {"regions_above_half", count_regions_above(c, 0.5)}});
      }
      results["cuts"] = cuts;
    }
    if (cfg.observable == Observable::Spacetime) {
      const auto st = spacetime_map(joint.values, cfg.pad_factor);
      out.grid("spacetime", st.magnitude);
      if (heatmap) out.heatmap("spacetime", st.magnitude);
      try {
        const auto w = extract_widths(st.magnitude);
        results["widths"] = json{{"delta_t_fs", w.axis1}, {"delta_x_um", w.axis2}};
      } catch (const RangeError& e) {
        results["widths"] = json{{"error", e.what()}};
      }
    }
  }

  manifest["results"] = results;
  auto files = out.files();
  files.push_back("manifest.json");
  manifest["outputs"] = files;
  out.text("manifest.json", manifest.dump(2) + "\n");
  report.output_dir = out.path();
  report.files = out.files();
  return report;
}

std::vector<RunReport> sweep(const RunConfig& cfg, const RunOptions& options) {
  if (!cfg.sweep) throw std::invalid_argument("config has no [sweep] section");
  const std::string base = options.output_dir.value_or(cfg.output_dir);
  std::vector<RunReport> reports;
  json index = json::array();
  for (std::size_t k = 0; k < cfg.sweep->values.size(); ++k) {
    const double value = cfg.sweep->values[k];
    RunConfig one = cfg;
    one.sweep.reset();
    apply_parameter(one, cfg.sweep->parameter, value);
    char name[96];
    std::snprintf(name, sizeof name, "%03zu_%s_%.6g", k, cfg.sweep->parameter.c_str(), value);
    RunOptions sub = options;
    sub.output_dir = (fs::path(base) / name).string();
    reports.push_back(run(one, sub));
    index.push_back(json{{"directory", name}, {"value", value}, {"clipped", reports.back().clipped}});
  }
  json summary{{"program", "spdc"}, {"version", kVersion}, {"parameter", cfg.sweep->parameter}, {"runs", index}};
  std::ofstream(fs::path(base) / "sweep.json") << summary.dump(2) << "\n";
  return reports;
}

}  // namespace spdc::io
