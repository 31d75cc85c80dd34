// Acceptance checks. Usage: acceptance <criterion 1-9>
// Prints one PASS/FAIL line per check; exit status is nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../common/series_oracle.hpp"
#include "spdc/biphoton.hpp"
#include "spdc/crystal.hpp"
#include "spdc/io/config.hpp"
#include "spdc/mathkit/cerf.hpp"
#include "spdc/mathkit/quadrature.hpp"
#include "spdc/observables.hpp"
#include "spdc/units.hpp"

namespace fs = std::filesystem;
using namespace spdc;
using cd = std::complex<double>;
using mathkit::RealGrid2D;

namespace {

bool all_passed = true;
auto started = std::chrono::steady_clock::now();

double elapsed() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
}

void report(const std::string& label, bool pass, const std::string& detail) {
  all_passed &= pass;
  std::printf("%s criterion %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", label.c_str(), detail.c_str(), elapsed());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::size_t threads() { return std::max(1u, std::thread::hardware_concurrency()); }

io::RunConfig recipe(const std::string& name) { return io::load_config(std::string(SPDC_RECIPES) + "/" + name); }

JointSpectrum joint_for(const io::RunConfig& cfg) {
  const auto ctx = io::resolve_context(cfg);
  return joint_spectrum(io::resolve_request(cfg, ctx, threads()), ctx);
}

const DispersionModel& linbo3() {
  static const DispersionModel m = DispersionModel::load(SPDC_DEFAULT_MATERIAL);
  return m;
}

JafContext fig3_context(double chirp_D, double beta = 0.0) {
  auto cfg = recipe("fig3_chirp_sweep.ini");
  cfg.crystal.chirp_D = chirp_D;
  cfg.pump.beta_fs2 = beta;
  return io::resolve_context(cfg);
}

// random propagating pairs near the pump band, both photons inside the dispersion data
std::vector<std::pair<PhotonMode, PhotonMode>> random_pairs(const JafContext& ctx, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g;
  const double wp = ctx.omega_pc();
  const double lo = units::omega_from_wavelength(6.5);
  std::vector<std::pair<PhotonMode, PhotonMode>> out;
  while (static_cast<int>(out.size()) < count) {
    const double ws = 0.5 * wp + (0.5 * wp - lo) * u(rng);
    const double wi = wp - ws + ctx.sigma() * g(rng);
    const double kxs = 0.7 * u(rng);
    const double kxi = -kxs + 2.0 / ctx.pump().waist_x_um * g(rng);
    if (!ctx.dispersion().covers_omega(ws) || !ctx.dispersion().covers_omega(wi)) continue;
    const double ks = ctx.dispersion().wavevector_magnitude(ws, ctx.temperature());
    const double ki = ctx.dispersion().wavevector_magnitude(wi, ctx.temperature());
    if (std::abs(kxs) >= ks || std::abs(kxi) >= ki) continue;
    out.push_back({{ws, kxs, 0.0}, {wi, kxi, 0.0}});
  }
  return out;
}

// 4-connected components at or above fraction * max, with their mean axis1 coordinate
std::vector<double> component_centres(const RealGrid2D& grid, double fraction) {
  const std::size_t n1 = grid.rows(), n2 = grid.cols();
  double peak = 0.0;
  for (double v : grid.values()) peak = std::max(peak, v);
  std::vector<int> label(n1 * n2, -1);
  std::vector<double> centres;
  for (std::size_t s = 0; s < n1 * n2; ++s) {
    if (label[s] >= 0 || grid.values()[s] < fraction * peak) continue;
    const int id = static_cast<int>(centres.size());
    double sum = 0.0;
    std::size_t n = 0;
    std::vector<std::size_t> stack{s};
    label[s] = id;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      const std::size_t i = k / n2, j = k % n2;
      sum += grid.axis1()[i];
      ++n;
      auto visit = [&](std::size_t m) {
        if (label[m] < 0 && grid.values()[m] >= fraction * peak) {
          label[m] = id;
          stack.push_back(m);
        }
      };
      if (i > 0) visit(k - n2);
      if (i + 1 < n1) visit(k + n2);
      if (j > 0) visit(k - 1);
      if (j + 1 < n2) visit(k + 1);
    }
    centres.push_back(sum / static_cast<double>(n));
  }
  return centres;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// --------------------------------------------------------------------------

void criterion1() {
  const double p = solve_central_period(linbo3(), 0.8, 25.0);
  const double dev = p / 20.33 - 1.0;
  report("1", std::abs(dev) <= 0.02 && elapsed() < 1.0, fmt("Lambda_c(0.8 um, 25 C) = %.6f um, %+.3f%% from 20.33 um", p, 100 * dev));
}

void criterion2() {
  for (double xi : {-125.0, -50.0, 1e-3, 50.0, 125.0}) {
    const double length = 5000.0;
    const auto ctx = fig3_context(xi / (length * length));
    double worst = 0.0;
    int used = 0;
    for (const auto& [s, i] : random_pairs(ctx, 100, 1234)) {
      const cd ref = oracle_unchirped(s, i, ctx);
      if (ref == cd{}) continue;
      worst = std::max(worst, std::abs(jaf(s, i, ctx) - ref) / std::abs(ref));
      ++used;
    }
    report("2", used == 100 && worst < 1e-6 && elapsed() < 60.0,
           fmt("xi = %g: worst relative error %.2e over %g points", xi, worst, used));
  }
}

void criterion3() {
  double worst = 0.0, worst_odd = 0.0, worst_conj = 0.0;
  int points = 0;
  constexpr int n = 50;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cd z(-6.0 + 12.0 * a / (n - 1), -6.0 + 12.0 * b / (n - 1));
      if (std::abs(z) > 6.0) continue;
      ++points;
      const cd w = mathkit::cerf(z);
      const cd ref = testing::erf_series_oracle(z);
      worst = std::max(worst, std::abs(w - ref) / std::abs(ref));
      worst_odd = std::max(worst_odd, std::abs(mathkit::cerf(-z) + w) / std::abs(w));
      worst_conj = std::max(worst_conj, std::abs(mathkit::cerf(std::conj(z)) - std::conj(w)) / std::abs(w));
    }
  report("3", worst < 1e-12 && elapsed() < 10.0,
         fmt("max relative error vs 50-digit series %.2e over %g points with |z| <= 6", worst, points));
  report("3", worst_odd < 1e-14 && worst_conj < 1e-14,
         fmt("odd symmetry %.1e, conjugation %.1e", worst_odd, worst_conj));
}

void criterion4() {
  const auto js = joint_for(recipe("fig2b_poptab.ini"));
  const auto& j = js.values;
  const std::size_t n = j.rows();
  double peak = 0.0;
  for (double v : j.values()) peak = std::max(peak, v);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < j.cols(); ++k)
      if (j(i, k) >= 1e-2 * peak) worst = std::max(worst, std::abs(j(i, k) - j(n - 1 - i, k)) / j(i, k));
  const double wd = 0.5 * (j.axis1().min + j.axis1().max);
  report("4a", worst < 1e-3 && elapsed() < 300.0,
         fmt("mirror symmetry about omega_d = %.5f rad/fs: worst relative asymmetry %.3e at super-1%% points", wd,
             worst));

  const auto centres = component_centres(j, 0.5);
  const double half_range = 0.5 * (j.axis1().max - j.axis1().min);
  int extreme = 0;
  for (double c : centres)
    if (std::abs(c - wd) > 0.5 * half_range) ++extreme;
  report("4b", centres.size() >= 2 && extreme >= 1 && elapsed() < 300.0,
         fmt("%g components above 50%% max, %g centred in the outer half of the omega_i range", centres.size(),
             extreme));
}

void criterion5() {
  const auto cfg = recipe("fig2d_disconnected.ini");
  const auto js = joint_for(cfg);
  const auto& j = js.values;
  double peak = 0.0;
  for (double v : j.values()) peak = std::max(peak, v);
  std::vector<double> row_max(j.rows(), 0.0);
  for (std::size_t i = 0; i < j.rows(); ++i)
    for (std::size_t k = 0; k < j.cols(); ++k) row_max[i] = std::max(row_max[i], j(i, k));
  const auto ctx = io::resolve_context(cfg);
  const double wd = 0.5 * ctx.omega_pc();
  // the rows bracketing omega_d
  std::size_t below = 0;
  while (below + 1 < j.rows() && j.axis1()[below + 1] <= wd) ++below;
  const std::size_t above = std::min(below + 1, j.rows() - 1);
  bool dark = row_max[below] < 1e-2 * peak && row_max[above] < 1e-2 * peak;
  std::size_t lo = below, hi = above;
  while (dark && lo > 0 && row_max[lo - 1] < 1e-2 * peak) --lo;
  while (dark && hi + 1 < j.rows() && row_max[hi + 1] < 1e-2 * peak) ++hi;
  const std::string band =
      dark ? fmt("dark band omega_i in [%.4f, %.4f] rad/fs around omega_d = %.4f", j.axis1()[lo], j.axis1()[hi], wd)
           : fmt("rows at omega_d reach %.2e of max", std::max(row_max[below], row_max[above]) / peak);
  report("5", dark && elapsed() < 300.0, band);

  const auto cut = cut_at_kxs(j, cfg.cut_k_xs.at(0));
  const auto peaks = count_regions_above(cut, 0.5);
  report("5", peaks == 2 && elapsed() < 300.0, fmt("cut at k_xs = 0: %g regions above 50%% max", peaks));
}

void criterion6() {
  const auto base = recipe("fig3_chirp_sweep.ini");
  std::vector<double> support;
  std::string detail;
  for (double d : {0.0, 2e-6, 5e-6}) {
    auto cfg = base;
    cfg.sweep.reset();
    cfg.crystal.chirp_D = d;
    const auto js = joint_for(cfg);
    support.push_back(half_max_support(marginal_spectrum(js.values)));
    detail += (detail.empty() ? "" : ", ") + fmt("D = %g: %.4f", d, support.back());
  }
  const bool increasing = support[0] < support[1] && support[1] < support[2];
  report("6", increasing && elapsed() < 900.0, "half-max support of S(omega_i) [rad/fs] " + detail);
}

void criterion7() {
  const auto base = recipe("fig6_spacetime.ini");
  std::map<double, Widths> w;
  for (double d : {0.0, 2e-6}) {
    auto cfg = base;
    cfg.sweep.reset();
    cfg.crystal.chirp_D = d;
    const auto js = joint_for(cfg);
    w[d] = extract_widths(spacetime_map(js.values, cfg.pad_factor).magnitude);
  }
  const double rt = w[0.0].axis1 / w[2e-6].axis1;
  const double rx = w[0.0].axis2 / w[2e-6].axis2;
  const bool fast = elapsed() < 600.0;
  report("7", rt >= 10.0 && fast,
         fmt("Delta t: %.3f fs (D = 0) -> %.3f fs (D = 2e-6), reduction %.2fx, need >= 10x", w[0.0].axis1,
             w[2e-6].axis1, rt));
  report("7", rx >= 1e3 && fast,
         fmt("Delta x: %.3f um (D = 0) -> %.3f um (D = 2e-6), reduction %.2fx, need >= 1000x", w[0.0].axis2,
             w[2e-6].axis2, rx));
  const double ratio = w[2e-6].axis1 / 6.8;
  report("7", ratio <= 3.0 && ratio >= 1.0 / 3.0 && fast,
         fmt("chirped Delta t = %.3f fs is %.2fx the quoted 6.8 fs (need within 3x)", w[2e-6].axis1, ratio));
}

void criterion8() {
  const auto cfg = recipe("fig2c_chirped.ini");
  const auto ctx = io::resolve_context(cfg);
  auto req = io::resolve_request(cfg, ctx, threads());
  const auto js = joint_spectrum(req, ctx);
  const double norm = mathkit::integrate_grid(js.values);
  report("8", std::abs(norm - 1.0) < 1e-9, fmt("normalization: integral of J = 1 %+.2e", norm - 1.0));

  const auto st = spacetime_map(js.values, cfg.pad_factor);
  mathkit::CompensatedSum lhs, rhs;
  for (double v : js.values.values()) lhs.add(v * v);
  for (const auto& v : st.values.values()) rhs.add(std::norm(v));
  const double a = lhs.value() * js.values.axis1().step() * js.values.axis2().step();
  const double b = 4.0 * M_PI * M_PI * rhs.value() * st.values.axis1().step() * st.values.axis2().step();
  report("8", std::abs(a - b) / a < 1e-9, fmt("Parseval: relative mismatch %.2e", std::abs(a - b) / a));

  req.inner_omega = ClosedRange{js.inner_omega.min, js.inner_omega.max};
  req.inner_k = ClosedRange{js.inner_k.min, js.inner_k.max};
  req.inner_omega_count = 2 * req.inner_omega_count - 1;
  req.inner_k_count = 2 * req.inner_k_count - 1;
  const auto fine = joint_spectrum(req, ctx);
  const double change = mathkit::max_relative_change(js.values, fine.values, 1e-2);
  report("8", change < 1e-3, fmt("inner grid doubling: max relative change %.2e at super-1%% points", change));

  const fs::path root = fs::temp_directory_path() / "spdc-acceptance-threads";
  fs::remove_all(root);
  const std::string config = std::string(SPDC_RECIPES) + "/fig2c_chirped.ini";
  bool identical = true;
  std::size_t compared = 0;
  for (int t : {1, 4}) {
    const std::string cmd = std::string("\"") + SPDC_BINARY + "\" run \"" + config + "\" --output-dir \"" +
                            (root / std::to_string(t)).string() + "\" --threads " + std::to_string(t) + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) identical = false;
  }
  if (identical) {
    for (const auto& e : fs::directory_iterator(root / "1")) {
      const auto other = root / "4" / e.path().filename();
      identical &= fs::exists(other) && slurp(e.path()) == slurp(other);
      ++compared;
    }
  }
  report("8", identical && compared >= 3 && elapsed() < 600.0,
         fmt("--threads 1 vs --threads 4: %g output files, ", compared) + (identical ? "byte-identical" : "DIFFER"));
}

void criterion9() {
  const auto plain = fig3_context(2e-6, 0.0);
  const auto chirped = fig3_context(2e-6, 1e5);
  double worst = 0.0;
  int n = 0;
  for (const auto& [s, i] : random_pairs(plain, 10000, 77)) {
    const double a = std::abs(jaf(s, i, plain));
    if (a == 0.0) continue;
    worst = std::max(worst, std::abs(std::abs(jaf(s, i, chirped)) - a) / a);
    ++n;
  }
  report("9", worst < 1e-12 && elapsed() < 60.0,
         fmt("|jaf| at beta = 1e5 fs^2 vs beta = 0: worst relative difference %.2e over %g points", worst, n));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1-9>\n");
    return 2;
  }
  const std::map<std::string, std::function<void()>> table{
      {"1", criterion1}, {"2", criterion2}, {"3", criterion3}, {"4", criterion4}, {"5", criterion5},
      {"6", criterion6}, {"7", criterion7}, {"8", criterion8}, {"9", criterion9}};
  const auto it = table.find(argv[1]);
  if (it == table.end()) {
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 2;
  }
  try {
    it->second();
  } catch (const std::exception& e) {
    report(argv[1], false, std::string("threw: ") + e.what());
  }
  return all_passed ? 0 : 1;
}
