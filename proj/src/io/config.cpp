#include "spdc/io/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "spdc/errors.hpp"
#include "spdc/io/keyvalue.hpp"

#ifndef SPDC_DEFAULT_MATERIAL
#define SPDC_DEFAULT_MATERIAL "data/materials/linbo3_congruent_e.txt"
#endif

namespace spdc::io {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Observable observable_from_string(const std::string& s, const KeyValueEntry& e, const std::string& source) {
  if (s == "pmf") return Observable::Pmf;
  if (s == "joint") return Observable::Joint;
  if (s == "marginal") return Observable::Marginal;
  if (s == "spacetime") return Observable::Spacetime;
  throw ParseError(source, e.line, "observable must be one of pmf, joint, marginal, spacetime; got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(std::string_view(s).substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<WindowFilter> parse_filters(const KeyValueEntry& e, const std::string& source) {
  std::vector<WindowFilter> out;
  for (const auto& item : split(e.value, ',')) {
    std::istringstream ss(item);
    std::string var, mode, lo, hi, extra;
    ss >> var >> mode >> lo >> hi;
    if (!ss || (ss >> extra))
      throw ParseError(source, e.line, "filter must read '<variable> pass|stop <lo> <hi>', got '" + item + "'");
    WindowFilter f;
    try {
      f.variable = variable_from_string(var);
    } catch (const std::invalid_argument& err) {
      throw ParseError(source, e.line, err.what());
    }
    if (mode != "pass" && mode != "stop") throw ParseError(source, e.line, "filter mode must be pass or stop");
    f.pass = mode == "pass";
    f.lo = parse_double(KeyValueEntry{e.section, e.key, lo, e.line}, source);
    f.hi = parse_double(KeyValueEntry{e.section, e.key, hi, e.line}, source);
    if (!(f.lo < f.hi)) throw ParseError(source, e.line, "filter needs lo < hi");
    out.push_back(f);
  }
  return out;
}

using Setter = std::function<void(RunConfig&, double)>;

const std::map<std::string, Setter>& parameter_table() {
  static const std::map<std::string, Setter> table{
      {"pump.lambda_um", [](RunConfig& c, double v) { c.pump.lambda_um = v; }},
      {"pump.fwhm_um",
       [](RunConfig& c, double v) {
         c.pump.fwhm_um = v;
         c.pump.sigma_omega.reset();
       }},
      {"pump.sigma_omega",
       [](RunConfig& c, double v) {
         c.pump.sigma_omega = v;
         c.pump.fwhm_um.reset();
       }},
      {"pump.beta_fs2", [](RunConfig& c, double v) { c.pump.beta_fs2 = v; }},
      {"pump.waist_x_um", [](RunConfig& c, double v) { c.pump.waist_x_um = v; }},
      {"pump.waist_y_um", [](RunConfig& c, double v) { c.pump.waist_y_um = v; }},
      {"crystal.length_um", [](RunConfig& c, double v) { c.crystal.length_um = v; }},
      {"crystal.chirp_D", [](RunConfig& c, double v) { c.crystal.chirp_D = v; }},
      {"crystal.z0_um", [](RunConfig& c, double v) { c.z0_um = v; }},
      {"crystal.ratio_r",
       [](RunConfig& c, double v) {
         c.ratio_r = v;
         c.z0_um.reset();
       }},
      {"crystal.period_um",
       [](RunConfig& c, double v) {
         c.crystal.period_um = v;
         c.period_auto = false;
       }},
      {"crystal.temperature_c", [](RunConfig& c, double v) { c.crystal.temperature_c = v; }},
      {"crystal.period_reference_c", [](RunConfig& c, double v) { c.crystal.period_reference_c = v; }},
  };
  return table;
}

// keys that must be strictly positive
const std::set<std::string> kPositive{"pump.lambda_um",   "pump.fwhm_um",      "pump.sigma_omega",
                                      "pump.waist_x_um",  "pump.waist_y_um",   "crystal.length_um",
                                      "crystal.period_um", "grid.pad_factor"};

struct RangeKeys {
  const KeyValueEntry* lo = nullptr;
  const KeyValueEntry* hi = nullptr;
};

std::optional<ClosedRange> resolve_range(const RangeKeys& keys, const std::string& what, const std::string& source) {
  if (!keys.lo && !keys.hi) return std::nullopt;
  if (!keys.lo || !keys.hi) {
    const auto* e = keys.lo ? keys.lo : keys.hi;
    throw ParseError(source, e->line, what + "_min and " + what + "_max must be given together");
  }
  ClosedRange r{parse_double(*keys.lo, source), parse_double(*keys.hi, source)};
  if (!(r.lo < r.hi)) throw ParseError(source, keys.hi->line, what + "_min must be below " + what + "_max");
  return r;
}

std::size_t parse_count(const KeyValueEntry& e, const std::string& source, long minimum) {
  const long v = parse_integer(e, source);
  if (v < minimum)
    throw ParseError(source, e.line, "'" + e.key + "' must be at least " + std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string to_string(Observable o) {
  switch (o) {
    case Observable::Pmf: return "pmf";
    case Observable::Joint: return "joint";
    case Observable::Marginal: return "marginal";
    case Observable::Spacetime: return "spacetime";
  }
  return "?";
}

std::vector<std::string> sweepable_parameters() {
  std::vector<std::string> out;
  for (const auto& [k, _] : parameter_table()) out.push_back(k);
  return out;
}

void apply_parameter(RunConfig& cfg, const std::string& key, double value) {
  const auto it = parameter_table().find(key);
  if (it == parameter_table().end()) throw std::invalid_argument("unknown parameter '" + key + "'");
  it->second(cfg, value);
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  const auto entries = parse_key_value(text, source);
  RunConfig cfg;
  bool have_observable = false;
  const KeyValueEntry* fwhm = nullptr;
  const KeyValueEntry* sigma = nullptr;
  const KeyValueEntry* z0 = nullptr;
  const KeyValueEntry* ratio = nullptr;
  std::map<std::string, RangeKeys> ranges;
  const KeyValueEntry* sweep_param = nullptr;
  const KeyValueEntry* sweep_values = nullptr;

  for (const auto& e : entries) {
    const std::string dotted = e.section.empty() ? e.key : e.section + "." + e.key;
    auto unknown = [&] { throw ParseError(source, e.line, "unknown key '" + dotted + "'"); };

    if (e.section.empty()) {
      if (e.key == "observable") {
        cfg.observable = observable_from_string(e.value, e, source);
        have_observable = true;
      } else if (e.key == "material_file") {
        cfg.material_file = e.value;
      } else {
        unknown();
      }
    } else if (e.section == "pump" || e.section == "crystal") {
      if (dotted == "crystal.period_um" && e.value == "auto") {
        cfg.period_auto = true;
      } else if (dotted == "crystal.thermal_expansion") {
        cfg.crystal.thermal_expansion = parse_bool(e, source);
      } else if (dotted == "crystal.poled") {
        cfg.crystal.poled = parse_bool(e, source);
      } else if (parameter_table().contains(dotted)) {
        const double v = parse_double(e, source);
        if (kPositive.contains(dotted) && !(v > 0.0))
          throw ParseError(source, e.line, "'" + dotted + "' must be positive");
        if (dotted == "crystal.ratio_r" && !(v >= 0.0 && v <= 1.0))
          throw ParseError(source, e.line, "'crystal.ratio_r' must lie in [0, 1]");
        apply_parameter(cfg, dotted, v);
        if (dotted == "pump.fwhm_um") fwhm = &e;
        if (dotted == "pump.sigma_omega") sigma = &e;
        if (dotted == "crystal.z0_um") z0 = &e;
        if (dotted == "crystal.ratio_r") ratio = &e;
      } else {
        unknown();
      }
    } else if (e.section == "grid") {
      const auto& k = e.key;
      auto ends_with = [&](std::string_view suffix) {
        return k.size() > suffix.size() && k.compare(k.size() - suffix.size(), suffix.size(), suffix) == 0;
      };
      static const std::set<std::string> range_names{"omega_i", "k_xs", "inner_omega", "inner_k", "omega_s"};
      if ((ends_with("_min") || ends_with("_max")) && range_names.contains(k.substr(0, k.size() - 4))) {
        auto& slot = ranges[k.substr(0, k.size() - 4)];
        (ends_with("_min") ? slot.lo : slot.hi) = &e;
      } else if (k == "omega_i_count") {
        cfg.omega_i_count = parse_count(e, source, 16);
      } else if (k == "k_xs_count") {
        cfg.k_xs_count = parse_count(e, source, 16);
      } else if (k == "inner_omega_count") {
        cfg.inner_omega_count = parse_count(e, source, 16);
      } else if (k == "inner_k_count") {
        cfg.inner_k_count = parse_count(e, source, 16);
      } else if (k == "omega_s_count") {
        cfg.omega_s_count = parse_count(e, source, 2);
      } else if (k == "pad_factor") {
        cfg.pad_factor = parse_count(e, source, 1);
      } else if (k == "exact") {
        cfg.exact = parse_bool(e, source);
      } else if (k == "filters") {
        cfg.filters = parse_filters(e, source);
      } else if (k == "cut_k_xs") {
        cfg.cut_k_xs = parse_double_list(e, source);
      } else if (k == "pmf_collinear") {
        cfg.pmf_collinear = parse_bool(e, source);
      } else if (k == "pmf_kx") {
        cfg.pmf_kx = parse_double(e, source);
      } else {
        unknown();
      }
    } else if (e.section == "sweep") {
      if (e.key == "parameter") {
        if (!parameter_table().contains(e.value))
          throw ParseError(source, e.line, "parameter '" + e.value + "' cannot be swept");
        sweep_param = &e;
      } else if (e.key == "values") {
        sweep_values = &e;
      } else {
        unknown();
      }
    } else if (e.section == "output") {
      if (e.key == "dir") {
        cfg.output_dir = e.value;
      } else if (e.key == "heatmap") {
        cfg.emit_heatmap = parse_bool(e, source);
      } else if (e.key == "format") {
        if (e.value == "text")
          cfg.format = GridFormat::Text;
        else if (e.value == "binary")
          cfg.format = GridFormat::Binary;
        else
          throw ParseError(source, e.line, "format must be text or binary");
      } else if (e.key == "convergence_check") {
        cfg.convergence_check = parse_bool(e, source);
      } else {
        unknown();
      }
    } else {
      throw ParseError(source, e.line, "unknown section [" + e.section + "]");
    }
  }

  if (!have_observable) throw ParseError(source, 0, "missing required key 'observable'");
  if (fwhm && sigma)
    throw ParseError(source, std::max(fwhm->line, sigma->line), "give either pump.fwhm_um or pump.sigma_omega, not both");
  if (z0 && ratio)
    throw ParseError(source, std::max(z0->line, ratio->line), "give either crystal.z0_um or crystal.ratio_r, not both");
  if (cfg.crystal.poled == false && cfg.period_auto)
    throw ParseError(source, 0, "period_um = auto needs a poled crystal");

  cfg.omega_i_range = resolve_range(ranges["omega_i"], "omega_i", source);
  if (auto r = resolve_range(ranges["k_xs"], "k_xs", source)) cfg.k_xs_range = *r;
  cfg.inner_omega_range = resolve_range(ranges["inner_omega"], "inner_omega", source);
  cfg.inner_k_range = resolve_range(ranges["inner_k"], "inner_k", source);
  cfg.omega_s_range = resolve_range(ranges["omega_s"], "omega_s", source);

  if (sweep_param || sweep_values) {
    if (!sweep_param || !sweep_values)
      throw ParseError(source, (sweep_param ? sweep_param : sweep_values)->line,
                       "[sweep] needs both parameter and values");
    cfg.sweep = SweepSpec{sweep_param->value, parse_double_list(*sweep_values, source)};
    for (double v : cfg.sweep->values)
      if (!std::isfinite(v)) throw ParseError(source, sweep_values->line, "sweep values must be finite");
  }

  try {
    validate(cfg.pump);
    CrystalConfig probe = cfg.crystal;
    probe.z0_um = cfg.z0_um.value_or(cfg.ratio_r * probe.length_um);
    if (!cfg.period_auto) validate(probe);
  } catch (const DomainError& err) {
    throw ParseError(source, 0, err.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg = parse_config(read_text_file(path), path);
  if (!cfg.material_file.empty()) {
    std::filesystem::path m(cfg.material_file);
    if (m.is_relative()) cfg.material_file = (std::filesystem::path(path).parent_path() / m).lexically_normal().string();
  }
  return cfg;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "observable = " << to_string(c.observable) << "\n";
  if (!c.material_file.empty()) o << "material_file = " << c.material_file << "\n";

  o << "\n[pump]\n";
  o << "lambda_um = " << num(c.pump.lambda_um) << "\n";
  if (c.pump.fwhm_um) o << "fwhm_um = " << num(*c.pump.fwhm_um) << "\n";
  if (c.pump.sigma_omega) o << "sigma_omega = " << num(*c.pump.sigma_omega) << "\n";
  o << "beta_fs2 = " << num(c.pump.beta_fs2) << "\n";
  o << "waist_x_um = " << num(c.pump.waist_x_um) << "\n";
  o << "waist_y_um = " << num(c.pump.waist_y_um) << "\n";

  o << "\n[crystal]\n";
  o << "length_um = " << num(c.crystal.length_um) << "\n";
  o << "chirp_D = " << num(c.crystal.chirp_D) << "\n";
  if (c.z0_um)
    o << "z0_um = " << num(*c.z0_um) << "\n";
  else
    o << "ratio_r = " << num(c.ratio_r) << "\n";
  o << "period_um = " << (c.period_auto ? std::string("auto") : num(c.crystal.period_um)) << "\n";
  o << "temperature_c = " << num(c.crystal.temperature_c) << "\n";
  o << "thermal_expansion = " << (c.crystal.thermal_expansion ? "true" : "false") << "\n";
  o << "period_reference_c = " << num(c.crystal.period_reference_c) << "\n";
  o << "poled = " << (c.crystal.poled ? "true" : "false") << "\n";

  o << "\n[grid]\n";
  auto range = [&](const char* name, const std::optional<ClosedRange>& r) {
    if (r) o << name << "_min = " << num(r->lo) << "\n" << name << "_max = " << num(r->hi) << "\n";
  };
  range("omega_i", c.omega_i_range);
  o << "omega_i_count = " << c.omega_i_count << "\n";
  range("k_xs", c.k_xs_range);
  o << "k_xs_count = " << c.k_xs_count << "\n";
  range("inner_omega", c.inner_omega_range);
  o << "inner_omega_count = " << c.inner_omega_count << "\n";
  range("inner_k", c.inner_k_range);
  o << "inner_k_count = " << c.inner_k_count << "\n";
  o << "exact = " << (c.exact ? "true" : "false") << "\n";
  if (!c.filters.empty()) {
    o << "filters = ";
    for (std::size_t k = 0; k < c.filters.size(); ++k) {
      const auto& f = c.filters[k];
      o << (k ? ", " : "") << to_string(f.variable) << (f.pass ? " pass " : " stop ") << num(f.lo) << " "
        << num(f.hi);
    }
    o << "\n";
  }
  if (!c.cut_k_xs.empty()) {
    o << "cut_k_xs = ";
    for (std::size_t k = 0; k < c.cut_k_xs.size(); ++k) o << (k ? ", " : "") << num(c.cut_k_xs[k]);
    o << "\n";
  }
  o << "pad_factor = " << c.pad_factor << "\n";
  range("omega_s", c.omega_s_range);
  o << "omega_s_count = " << c.omega_s_count << "\n";
  o << "pmf_collinear = " << (c.pmf_collinear ? "true" : "false") << "\n";
  o << "pmf_kx = " << num(c.pmf_kx) << "\n";

  if (c.sweep) {
    o << "\n[sweep]\nparameter = " << c.sweep->parameter << "\nvalues = ";
    for (std::size_t k = 0; k < c.sweep->values.size(); ++k) o << (k ? ", " : "") << num(c.sweep->values[k]);
    o << "\n";
  }

  o << "\n[output]\n";
  o << "dir = " << c.output_dir << "\n";
  o << "heatmap = " << (c.emit_heatmap ? "true" : "false") << "\n";
  o << "format = " << (c.format == GridFormat::Text ? "text" : "binary") << "\n";
  o << "convergence_check = " << (c.convergence_check ? "true" : "false") << "\n";
  return o.str();
}

std::string material_path(const RunConfig& cfg) {
  return cfg.material_file.empty() ? std::string(SPDC_DEFAULT_MATERIAL) : cfg.material_file;
}

JafContext resolve_context(const RunConfig& cfg) {
  DispersionModel dispersion = DispersionModel::load(material_path(cfg));
  CrystalConfig crystal = cfg.crystal;
  crystal.z0_um = cfg.z0_um.value_or(cfg.ratio_r * crystal.length_um);
  if (cfg.period_auto)
    crystal.period_um = solve_central_period(dispersion, cfg.pump.lambda_um, crystal.period_reference_c);
  return JafContext(cfg.pump, crystal, std::move(dispersion));
}

ObservableRequest resolve_request(const RunConfig& cfg, const JafContext& ctx, std::size_t threads) {
  ObservableRequest req;
  req.omega_i = cfg.omega_i_range
                    ? mathkit::UniformAxis{"omega_i", "rad/fs", cfg.omega_i_range->lo, cfg.omega_i_range->hi,
                                           cfg.omega_i_count}
                    : default_omega_i_axis(ctx, cfg.omega_i_count);
  req.k_xs = mathkit::UniformAxis{"k_xs", "rad/um", cfg.k_xs_range.lo, cfg.k_xs_range.hi, cfg.k_xs_count};
  req.inner_omega_count = cfg.inner_omega_count;
  req.inner_k_count = cfg.inner_k_count;
  req.inner_omega = cfg.inner_omega_range;
  req.inner_k = cfg.inner_k_range;
  req.filters = cfg.filters;
  req.exact = cfg.exact;
  req.threads = threads;
  return req;
}

}  // namespace spdc::io
