#include "spdc/dispersion.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "spdc/errors.hpp"
#include "spdc/io/keyvalue.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

std::string describe(double value) {
  std::ostringstream ss;
  ss.precision(10);
  ss << value;
  return ss.str();
}

}  // namespace

DispersionModel::DispersionModel(std::string name, SellmeierCoefficients coefficients, ClosedRange wavelength_um,
                                 ClosedRange temperature_c)
    : name_(std::move(name)),
      coefficients_(coefficients),
      wavelength_um_(wavelength_um),
      temperature_c_(temperature_c) {
  if (!(wavelength_um_.lo > 0.0 && wavelength_um_.hi > wavelength_um_.lo))
    throw DomainError("dispersion '" + name_ + "': invalid wavelength range");
  if (!(temperature_c_.hi >= temperature_c_.lo))
    throw DomainError("dispersion '" + name_ + "': invalid temperature range");
  check_well_posed();
}

// Both resonance denominators must keep their sign over the whole validity box and n must stay above 1.
void DispersionModel::check_well_posed() const {
  const auto& c = coefficients_;
  constexpr int kLambdaSamples = 257;
  constexpr int kTemperatureSamples = 9;
  for (int it = 0; it < kTemperatureSamples; ++it) {
    const double t = temperature_c_.lo + (temperature_c_.hi - temperature_c_.lo) * it / (kTemperatureSamples - 1);
    const double f = c.temperature_function(t);
    const double uv_pole = c.a3 + c.b3 * f;
    const double lo2 = wavelength_um_.lo * wavelength_um_.lo;
    const double hi2 = wavelength_um_.hi * wavelength_um_.hi;
    const bool uv_ok = (c.a2 == 0.0 && c.b2 == 0.0) || uv_pole * uv_pole < lo2 || uv_pole * uv_pole > hi2;
    const bool ir_ok = (c.a4 == 0.0 && c.b4 == 0.0) || c.a5 * c.a5 < lo2 || c.a5 * c.a5 > hi2;
    if (!uv_ok || !ir_ok)
      throw DomainError("dispersion '" + name_ + "': Sellmeier pole inside the wavelength range at T = " +
                        describe(t));
    for (int il = 0; il < kLambdaSamples; ++il) {
      const double l = wavelength_um_.lo + (wavelength_um_.hi - wavelength_um_.lo) * il / (kLambdaSamples - 1);
      const double n = refractive_index(l, t);
      if (!(std::isfinite(n) && n > 1.0))
        throw DomainError("dispersion '" + name_ + "': n <= 1 at lambda = " + describe(l) + " um, T = " +
                          describe(t));
    }
  }
}

double DispersionModel::refractive_index(double lambda_um, double temperature_c) const {
  if (!(lambda_um >= wavelength_um_.lo))
    throw DomainError("wavelength " + describe(lambda_um) + " um below lower bound " + describe(wavelength_um_.lo));
  if (!(lambda_um <= wavelength_um_.hi))
    throw DomainError("wavelength " + describe(lambda_um) + " um above upper bound " + describe(wavelength_um_.hi));
  if (!(temperature_c >= temperature_c_.lo))
    throw DomainError("temperature " + describe(temperature_c) + " C below lower bound " +
                      describe(temperature_c_.lo));
  if (!(temperature_c <= temperature_c_.hi))
    throw DomainError("temperature " + describe(temperature_c) + " C above upper bound " +
                      describe(temperature_c_.hi));

  const auto& c = coefficients_;
  const double f = c.temperature_function(temperature_c);
  const double l2 = lambda_um * lambda_um;
  const double uv = c.a3 + c.b3 * f;
  const double n2 = c.a1 + c.b1 * f + (c.a2 + c.b2 * f) / (l2 - uv * uv) + (c.a4 + c.b4 * f) / (l2 - c.a5 * c.a5) -
                    c.a6 * l2;
  return std::sqrt(n2);
}

double DispersionModel::wavevector_magnitude(double omega, double temperature_c) const {
  if (!(omega > 0.0)) throw DomainError("angular frequency must be positive, got " + describe(omega));
  return refractive_index(units::wavelength_from_omega(omega), temperature_c) * omega / units::kSpeedOfLight;
}

double DispersionModel::longitudinal_k(const PhotonMode& mode, double temperature_c) const {
  const double k = wavevector_magnitude(mode.omega, temperature_c);
  const double radicand = k * k - mode.kx * mode.kx - mode.ky * mode.ky;
  if (!(radicand > 0.0))
    throw KinematicsError("evanescent mode: kt^2 = " + describe(mode.kx * mode.kx + mode.ky * mode.ky) +
                          " >= k^2 = " + describe(k * k));
  return std::sqrt(radicand);
}

bool DispersionModel::covers_omega(double omega) const {
  return omega > 0.0 && wavelength_um_.contains(units::wavelength_from_omega(omega));
}

DispersionModel DispersionModel::constant_index(double index) {
  if (!(index > 1.0)) throw DomainError("constant index must exceed 1");
  SellmeierCoefficients c;
  c.a1 = index * index;
  return DispersionModel("constant n=" + describe(index), c, {0.05, 100.0}, {-273.15, 2000.0});
}

DispersionModel DispersionModel::parse(std::string_view text, const std::string& source) {
  const auto entries = io::parse_key_value(text, source);
  SellmeierCoefficients c;
  std::map<std::string, double*> slots{
      {"a1", &c.a1}, {"a2", &c.a2}, {"a3", &c.a3}, {"a4", &c.a4}, {"a5", &c.a5}, {"a6", &c.a6},
      {"b1", &c.b1}, {"b2", &c.b2}, {"b3", &c.b3}, {"b4", &c.b4}, {"t_offset", &c.t_offset},
      {"t_shift", &c.t_shift}};
  ClosedRange wl{}, temp{};
  std::map<std::string, double*> range_slots{{"lambda_min_um", &wl.lo},
                                             {"lambda_max_um", &wl.hi},
                                             {"temperature_min_c", &temp.lo},
                                             {"temperature_max_c", &temp.hi}};
  std::string name = source;
  std::map<std::string, bool> present;
  for (const auto& e : entries) {
    if (!e.section.empty()) throw ParseError(source, e.line, "material files have no sections");
    if (e.key == "name") {
      name = e.value;
    } else if (e.key == "form") {
      if (e.value != "sellmeier-temperature")
        throw ParseError(source, e.line, "unsupported dispersion form '" + e.value + "'");
    } else if (auto it = slots.find(e.key); it != slots.end()) {
      *it->second = io::parse_double(e, source);
    } else if (auto rt = range_slots.find(e.key); rt != range_slots.end()) {
      *rt->second = io::parse_double(e, source);
    } else {
      throw ParseError(source, e.line, "unknown key '" + e.key + "'");
    }
    present[e.key] = true;
  }
  for (const auto& [key, slot] : range_slots)
    if (!present.contains(key)) throw ParseError(source, 0, "missing required key '" + key + "'");
  if (!present.contains("a1")) throw ParseError(source, 0, "missing required key 'a1'");
  return DispersionModel(name, c, wl, temp);
}

DispersionModel DispersionModel::load(const std::string& path) { return parse(io::read_text_file(path), path); }

}  // namespace spdc
