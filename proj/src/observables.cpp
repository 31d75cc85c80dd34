#include "spdc/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spdc/errors.hpp"
#include "spdc/mathkit/quadrature.hpp"
#include "spdc/units.hpp"

namespace spdc {

namespace {

using mathkit::RealGrid2D;
using mathkit::Series1D;
using mathkit::UniformAxis;

constexpr std::size_t kPrescanCount = 64;
constexpr std::size_t kPrescanOuter = 16;
constexpr double kSupportLevel = 1e-4;
constexpr double kActiveLevel = 1e-3;
constexpr double kPadFraction = 0.2;
constexpr double kClipLevel = 1e-3;

bool admitted(const std::vector<WindowFilter>& filters, Variable v, double value) {
  for (const auto& f : filters)
    if (f.variable == v && !f.admits(value)) return false;
  return true;
}

// One outer point's integrand on the inner grid, exact jaf. Photons outside the dispersion data count as dark.
void exact_integrand(const JafContext& ctx, double omega_i, double k_xs, const UniformAxis& dw,
                     const UniformAxis& dk, bool swap, std::vector<double>& out) {
  out.assign(dw.count * dk.count, 0.0);
  const auto& disp = ctx.dispersion();
  if (!disp.covers_omega(omega_i)) return;
  for (std::size_t a = 0; a < dw.count; ++a) {
    const double omega_s = ctx.omega_pc() - omega_i + dw[a];
    if (!disp.covers_omega(omega_s) || !disp.covers_omega(omega_s + omega_i)) continue;
    for (std::size_t b = 0; b < dk.count; ++b) {
      const PhotonMode s{omega_s, k_xs, 0.0};
      const PhotonMode i{omega_i, dk[b] - k_xs, 0.0};
      out[a * dk.count + b] = std::norm(swap ? jaf(i, s, ctx) : jaf(s, i, ctx));
    }
  }
}

struct Box {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool empty() const { return !(lo <= hi); }
};

std::pair<ClosedRange, ClosedRange> prescan(const ObservableRequest& req, const JafContext& ctx) {
  double half_w = 4.0 * ctx.sigma();
  double half_k = 8.0 / ctx.pump().waist_x_um;
  const std::size_t n1 = std::min(kPrescanOuter, req.omega_i.count);
  const std::size_t n2 = std::min(kPrescanOuter, req.k_xs.count);
  std::vector<double> buf;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const UniformAxis dw{"", "", -half_w, half_w, kPrescanCount};
    const UniformAxis dk{"", "", -half_k, half_k, kPrescanCount};
    std::vector<std::vector<double>> samples;
    std::vector<double> peaks;
    double global = 0.0;
    for (std::size_t p = 0; p < n1; ++p)
      for (std::size_t q = 0; q < n2; ++q) {
        const double wi = req.omega_i[p * (req.omega_i.count - 1) / (n1 - 1)];
        const double kx = req.k_xs[q * (req.k_xs.count - 1) / (n2 - 1)];
        if (!admitted(req.filters, Variable::OmegaIdler, wi) || !admitted(req.filters, Variable::KxSignal, kx))
          continue;
        exact_integrand(ctx, wi, kx, dw, dk, false, buf);
        const double peak = *std::max_element(buf.begin(), buf.end());
        global = std::max(global, peak);
        samples.push_back(buf);
        peaks.push_back(peak);
      }
    if (!(global > 0.0)) throw DomainError("joint spectrum pre-scan found no emission in the requested range");
    Box bw, bk;
    bool touches_w = false, touches_k = false;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (peaks[s] < kActiveLevel * global) continue;
      for (std::size_t a = 0; a < kPrescanCount; ++a)
        for (std::size_t b = 0; b < kPrescanCount; ++b) {
          if (samples[s][a * kPrescanCount + b] < kSupportLevel * peaks[s]) continue;
          bw.lo = std::min(bw.lo, dw[a]);
          bw.hi = std::max(bw.hi, dw[a]);
          bk.lo = std::min(bk.lo, dk[b]);
          bk.hi = std::max(bk.hi, dk[b]);
          touches_w |= a == 0 || a + 1 == kPrescanCount;
          touches_k |= b == 0 || b + 1 == kPrescanCount;
        }
    }
    if (touches_w || touches_k) {
      if (touches_w) half_w *= 2.0;
      if (touches_k) half_k *= 2.0;
      continue;
    }
    // at least one coarse cell either side of the brightest sample
    auto finish = [](Box b, double step) {
      b.lo -= step;
      b.hi += step;
      const double pad = kPadFraction * (b.hi - b.lo);
      return ClosedRange{b.lo - pad, b.hi + pad};
    };
    return {finish(bw, dw.step()), finish(bk, dk.step())};
  }
  throw DomainError("joint spectrum pre-scan: support keeps growing; give explicit inner ranges");
}

struct RowResult {
  std::vector<double> values;
  std::vector<double> boundary_ratio;
};

class FastKernel {
 public:
  FastKernel(const ObservableRequest& req, const JafContext& ctx, const UniformAxis& dw, const UniformAxis& dk)
      : req_(req), ctx_(ctx), dw_(dw), dk_(dk), profile_(ctx.xi()) {
    const double length = ctx.length();
    const double offset = ctx.ratio_r() * ctx.xi();
    const double sigma = ctx.sigma();
    kp_.resize(dw.count);
    env_.resize(dw.count);
    base_.resize(dw.count * dk.count);
    for (std::size_t a = 0; a < dw.count; ++a) {
      kp_[a] = ctx.dispersion().wavevector_magnitude(ctx.omega_pc() + dw[a], ctx.temperature());
      env_[a] = std::exp(-2.0 * dw[a] * dw[a] / (sigma * sigma));
      for (std::size_t b = 0; b < dk.count; ++b)
        base_[a * dk.count + b] = offset - length * (kp_[a] - ctx.k0() - dk[b] * dk[b] / (2.0 * kp_[a]));
    }
    sp_.resize(dk.count);
    for (std::size_t b = 0; b < dk.count; ++b) {
      const double s = spatial_factor(dk[b], 0.0, ctx.pump());
      sp_[b] = s * s;
    }
    const auto scale = ctx.amplitude_scale();
    prefactor_ = std::norm(scale) / std::numbers::pi;
  }

  RowResult row(std::size_t i) const {
    const auto& disp = ctx_.dispersion();
    const double t = ctx_.temperature();
    const double length = ctx_.length();
    const std::size_t na = dw_.count, nb = dk_.count;
    const double omega_i = req_.omega_i[i];
    RowResult out{std::vector<double>(req_.k_xs.count, 0.0), std::vector<double>(req_.k_xs.count, 0.0)};
    if (!admitted(req_.filters, Variable::OmegaIdler, omega_i)) return out;

    const double ki = disp.wavevector_magnitude(omega_i, t);
    std::vector<double> ks(na), row_env(na), ea(na);
    for (std::size_t a = 0; a < na; ++a) {
      const double omega_s = ctx_.omega_pc() - omega_i + dw_[a];
      ks[a] = disp.wavevector_magnitude(omega_s, t);
      row_env[a] = admitted(req_.filters, Variable::OmegaSignal, omega_s) ? env_[a] : 0.0;
    }
    std::vector<double> lkzs(na), lkzi(nb), eb(nb), inner(na), rmax(na), edge(na);
    const double ta = dw_.step(), tb = dk_.step();
    for (std::size_t j = 0; j < req_.k_xs.count; ++j) {
      const double kxs = req_.k_xs[j];
      if (!admitted(req_.filters, Variable::KxSignal, kxs)) continue;
      for (std::size_t a = 0; a < na; ++a) {
        const double r = ks[a] * ks[a] - kxs * kxs;
        lkzs[a] = r > 0.0 ? length * std::sqrt(r) : 0.0;
        ea[a] = r > 0.0 ? row_env[a] : 0.0;
      }
      for (std::size_t b = 0; b < nb; ++b) {
        const double kxi = dk_[b] - kxs;
        const double r = ki * ki - kxi * kxi;
        const bool ok = r > 0.0 && admitted(req_.filters, Variable::KxIdler, kxi);
        lkzi[b] = ok ? length * std::sqrt(r) : 0.0;
        eb[b] = ok ? sp_[b] : 0.0;
      }
      for (std::size_t a = 0; a < na; ++a) {
        double sum = 0.0, mx = 0.0;
        double first = 0.0, last = 0.0;
        if (ea[a] > 0.0) {
          const double* base = &base_[a * nb];
          for (std::size_t b = 0; b < nb; ++b) {
            if (eb[b] == 0.0) continue;
            const double v = eb[b] * profile_.intensity(base[b] + lkzs[a] + lkzi[b]);
            sum += (b == 0 || b + 1 == nb) ? 0.5 * v : v;
            mx = std::max(mx, v);
            if (b == 0) first = v;
            if (b + 1 == nb) last = v;
          }
        }
        inner[a] = ea[a] * sum;
        rmax[a] = ea[a] * mx;
        edge[a] = ea[a] * std::max(first, last);
      }
      double total = 0.0, peak = 0.0, boundary = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        total += (a == 0 || a + 1 == na) ? 0.5 * inner[a] : inner[a];
        peak = std::max(peak, rmax[a]);
        boundary = std::max(boundary, (a == 0 || a + 1 == na) ? rmax[a] : edge[a]);
      }
      out.values[j] = prefactor_ * total * ta * tb;
      out.boundary_ratio[j] = peak > 0.0 ? boundary / peak : 0.0;
    }
    return out;
  }

 private:
  const ObservableRequest& req_;
  const JafContext& ctx_;
  const UniformAxis& dw_;
  const UniformAxis& dk_;
  PmfProfile profile_;
  std::vector<double> kp_, env_, base_, sp_;
  double prefactor_ = 1.0;
};

RowResult exact_row(const ObservableRequest& req, const JafContext& ctx, const UniformAxis& dw,
                    const UniformAxis& dk, std::size_t i) {
  RowResult out{std::vector<double>(req.k_xs.count, 0.0), std::vector<double>(req.k_xs.count, 0.0)};
  const double omega_i = req.omega_i[i];
  if (!admitted(req.filters, Variable::OmegaIdler, omega_i)) return out;
  std::vector<double> buf;
  const std::size_t na = dw.count, nb = dk.count;
  for (std::size_t j = 0; j < req.k_xs.count; ++j) {
    const double kxs = req.k_xs[j];
    if (!admitted(req.filters, Variable::KxSignal, kxs)) continue;
    exact_integrand(ctx, omega_i, kxs, dw, dk, req.swap_roles, buf);
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        const double omega_s = ctx.omega_pc() - omega_i + dw[a];
        if (!admitted(req.filters, Variable::OmegaSignal, omega_s) ||
            !admitted(req.filters, Variable::KxIdler, dk[b] - kxs))
          buf[a * nb + b] = 0.0;
      }
    RealGrid2D g(dw, dk, buf);
    out.values[j] = mathkit::integrate_grid(g);
    double peak = 0.0, boundary = 0.0;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b) {
        peak = std::max(peak, g(a, b));
        if (a == 0 || b == 0 || a + 1 == na || b + 1 == nb) boundary = std::max(boundary, g(a, b));
      }
    out.boundary_ratio[j] = peak > 0.0 ? boundary / peak : 0.0;
  }
  return out;
}

void check_coverage(const ObservableRequest& req, const JafContext& ctx, const UniformAxis& dw) {
  const auto& disp = ctx.dispersion();
  const double wp = ctx.omega_pc();
  const double checks[] = {req.omega_i.min, req.omega_i.max, wp - req.omega_i.max + dw.min,
                           wp - req.omega_i.min + dw.max, wp + dw.min, wp + dw.max};
  for (double w : checks)
    if (!disp.covers_omega(w))
      throw DomainError("photon frequency " + std::to_string(w) + " rad/fs (wavelength " +
                        std::to_string(units::wavelength_from_omega(w)) + " um) outside the dispersion data of " +
                        disp.name());
}

}  // namespace

std::string to_string(Variable v) {
  switch (v) {
    case Variable::OmegaSignal: return "omega_s";
    case Variable::OmegaIdler: return "omega_i";
    case Variable::KxSignal: return "k_xs";
    case Variable::KxIdler: return "k_xi";
  }
  return "?";
}

Variable variable_from_string(const std::string& name) {
  if (name == "omega_s") return Variable::OmegaSignal;
  if (name == "omega_i") return Variable::OmegaIdler;
  if (name == "k_xs") return Variable::KxSignal;
  if (name == "k_xi") return Variable::KxIdler;
  throw std::invalid_argument("unknown filter variable '" + name + "'");
}

UniformAxis default_omega_i_axis(const JafContext& ctx, std::size_t count) {
  const double degenerate = 0.5 * ctx.omega_pc();
  const double lowest = units::omega_from_wavelength(ctx.dispersion().wavelength_range().hi);
  // the pre-scan window in d_omega never exceeds ~4.5 sigma, keep the inner photons inside the data
  const double half = degenerate - lowest - 6.0 * ctx.sigma();
  if (!(half > 0.0)) throw DomainError("dispersion data too narrow for a default omega_i axis");
  return UniformAxis{"omega_i", "rad/fs", degenerate - half, degenerate + half, count};
}

JointSpectrum joint_spectrum(const ObservableRequest& req, const JafContext& ctx) {
  mathkit::validate(req.omega_i);
  mathkit::validate(req.k_xs);
  if (req.omega_i.count < 16 || req.k_xs.count < 16 || req.inner_omega_count < 16 || req.inner_k_count < 16)
    throw DomainError("joint spectrum grids need at least 16 samples per axis");
  if (req.swap_roles && !req.exact) throw DomainError("swap_roles requires the exact evaluation path");

  ClosedRange rw, rk;
  if (req.inner_omega && req.inner_k) {
    rw = *req.inner_omega;
    rk = *req.inner_k;
  } else {
    const auto found = prescan(req, ctx);
    rw = req.inner_omega.value_or(found.first);
    rk = req.inner_k.value_or(found.second);
  }
  const UniformAxis dw{"d_omega", "rad/fs", rw.lo, rw.hi, req.inner_omega_count};
  const UniformAxis dk{"d_k", "rad/um", rk.lo, rk.hi, req.inner_k_count};
  mathkit::validate(dw);
  mathkit::validate(dk);
  check_coverage(req, ctx, dw);

  const std::size_t rows = req.omega_i.count;
  std::vector<RowResult> results(rows);
  std::function<RowResult(std::size_t)> work;
  std::optional<FastKernel> kernel;
  if (req.exact) {
    work = [&](std::size_t i) { return exact_row(req, ctx, dw, dk, i); };
  } else {
    kernel.emplace(req, ctx, dw, dk);
    work = [&](std::size_t i) { return kernel->row(i); };
  }

  std::size_t threads = req.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : req.threads;
  threads = std::min(threads, rows);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows; i = next++) results[i] = work(i);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  JointSpectrum out;
  out.values = RealGrid2D(req.omega_i, req.k_xs);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < req.k_xs.count; ++j) out.values(i, j) = results[i].values[j];
  out.inner_omega = dw;
  out.inner_k = dk;
  out.raw_integral = mathkit::integrate_grid(out.values);
  if (!(out.raw_integral > 0.0)) throw DomainError("joint spectrum vanishes on the requested grid");
  const double peak = *std::max_element(out.values.values().begin(), out.values.values().end());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < req.k_xs.count; ++j)
      if (out.values(i, j) >= kActiveLevel * peak)
        out.worst_boundary_ratio = std::max(out.worst_boundary_ratio, results[i].boundary_ratio[j]);
  out.clipped = out.worst_boundary_ratio > kClipLevel;
  for (double& v : out.values.values()) v /= out.raw_integral;
  return out;
}

Series1D marginal_spectrum(const RealGrid2D& joint) {
  Series1D out{joint.axis1(), std::vector<double>(joint.rows())};
  const double step = joint.axis2().step();
  for (std::size_t i = 0; i < joint.rows(); ++i)
    out.values[i] = mathkit::trapezoid(std::span(joint.values()).subspan(i * joint.cols(), joint.cols()), step);
  return out;
}

Series1D cut_at_kxs(const RealGrid2D& joint, double k_xs) {
  const auto& ax = joint.axis2();
  if (!(k_xs >= ax.min && k_xs <= ax.max)) throw DomainError("k_xs cut outside the joint spectrum axis");
  const double x = (k_xs - ax.min) / ax.step();
  auto j = static_cast<std::size_t>(std::floor(x));
  if (j + 1 >= ax.count) j = ax.count - 2;
  const double t = x - static_cast<double>(j);
  Series1D out{joint.axis1(), std::vector<double>(joint.rows())};
  for (std::size_t i = 0; i < joint.rows(); ++i) out.values[i] = (1.0 - t) * joint(i, j) + t * joint(i, j + 1);
  return out;
}

SpacetimeMap spacetime_map(const RealGrid2D& joint, std::size_t pad_factor) {
  SpacetimeMap out;
  out.values = mathkit::dft2(joint, mathkit::ConjugateAxes{"t_i", "fs", "x_s", "um"}, pad_factor);
  out.magnitude = RealGrid2D(out.values.axis1(), out.values.axis2());
  for (std::size_t k = 0; k < out.values.values().size(); ++k)
    out.magnitude.values()[k] = std::abs(out.values.values()[k]);
  return out;
}

Widths extract_widths(const RealGrid2D& map) {
  const std::size_t n1 = map.rows(), n2 = map.cols();
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const double v = map(i, j), best = map(bi, bj);
      if (v > best) {
        bi = i;
        bj = j;
      } else if (v == best) {
        const double a = std::abs(map.axis1()[i]), b = std::abs(map.axis1()[bi]);
        if (a < b || (a == b && std::abs(map.axis2()[j]) < std::abs(map.axis2()[bj]))) {
          bi = i;
          bj = j;
        }
      }
    }
  if (bi == 0 || bj == 0 || bi + 1 == n1 || bj + 1 == n2)
    throw RangeError("extract_widths: maximum lies on the map boundary; enlarge the range");
  const double half = 0.5 * map(bi, bj);

  auto fwhm = [half](const std::function<double(std::size_t)>& f, std::size_t centre, std::size_t n,
                     const UniformAxis& ax) {
    std::size_t k = centre;
    while (k > 0 && f(k - 1) >= half) --k;
    if (k == 0) throw RangeError("extract_widths: cut along " + ax.name + " never drops below half maximum");
    const double left = ax[k - 1] + (half - f(k - 1)) / (f(k) - f(k - 1)) * ax.step();
    k = centre;
    while (k + 1 < n && f(k + 1) >= half) ++k;
    if (k + 1 == n) throw RangeError("extract_widths: cut along " + ax.name + " never drops below half maximum");
    const double right = ax[k] + (f(k) - half) / (f(k) - f(k + 1)) * ax.step();
    return right - left;
  };
  Widths w;
  w.axis1 = fwhm([&](std::size_t i) { return map(i, bj); }, bi, n1, map.axis1());
  w.axis2 = fwhm([&](std::size_t j) { return map(bi, j); }, bj, n2, map.axis2());
  return w;
}

double half_max_support(const Series1D& series) {
  const auto& v = series.values;
  if (v.size() < 2) throw DomainError("half_max_support needs at least 2 samples");
  const double half = 0.5 * *std::max_element(v.begin(), v.end());
  const double h = series.axis.step();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const bool a = v[k] >= half, b = v[k + 1] >= half;
    if (a && b)
      total += h;
    else if (a != b) {
      const double hi = a ? v[k] : v[k + 1];
      const double lo = a ? v[k + 1] : v[k];
      total += h * (hi - half) / (hi - lo);
    }
  }
  return total;
}

std::size_t count_regions_above(const Series1D& series, double fraction) {
  const auto& v = series.values;
  if (v.empty()) return 0;
  const double level = fraction * *std::max_element(v.begin(), v.end());
  std::size_t regions = 0;
  bool inside = false;
  for (double x : v) {
    const bool above = x >= level;
    if (above && !inside) ++regions;
    inside = above;
  }
  return regions;
}

std::size_t count_components_above(const RealGrid2D& grid, double fraction) {
  const std::size_t n1 = grid.rows(), n2 = grid.cols();
  if (grid.values().empty()) return 0;
  const double level = fraction * *std::max_element(grid.values().begin(), grid.values().end());
  std::vector<char> seen(n1 * n2, 0);
  std::vector<std::size_t> stack;
  std::size_t components = 0;
  for (std::size_t start = 0; start < n1 * n2; ++start) {
    if (seen[start] || grid.values()[start] < level) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      const std::size_t i = k / n2, j = k % n2;
      auto visit = [&](std::size_t ii, std::size_t jj) {
        const std::size_t m = ii * n2 + jj;
        if (!seen[m] && grid.values()[m] >= level) {
          seen[m] = 1;
          stack.push_back(m);
        }
      };
      if (i > 0) visit(i - 1, j);
      if (i + 1 < n1) visit(i + 1, j);
      if (j > 0) visit(i, j - 1);
      if (j + 1 < n2) visit(i, j + 1);
    }
  }
  return components;
}

double normalized_correlation(const RealGrid2D& joint) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      w += p;
      m1 += p * joint.axis1()[i];
      m2 += p * joint.axis2()[j];
    }
  if (!(w > 0.0)) throw DomainError("normalized_correlation: empty distribution");
  m1 /= w;
  m2 /= w;
  double c11 = 0.0, c22 = 0.0, c12 = 0.0;
  for (std::size_t i = 0; i < joint.rows(); ++i)
    for (std::size_t j = 0; j < joint.cols(); ++j) {
      const double p = joint(i, j);
      const double d1 = joint.axis1()[i] - m1, d2 = joint.axis2()[j] - m2;
      c11 += p * d1 * d1;
      c22 += p * d2 * d2;
      c12 += p * d1 * d2;
    }
  return c12 / std::sqrt(c11 * c22);
}

}  // namespace spdc
