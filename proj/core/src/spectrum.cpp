#include "cpo/spectrum.hpp"

#include <cmath>
#include <limits>

#include "cpo/error.hpp"

namespace cpo {

Spectrum probe_spectrum(const AtomParams& params, complex omega_c,
                        std::span<const double> delta_grid, double probe_amplitude) {
  if (delta_grid.empty()) throw ConfigError("probe_spectrum: delta grid is empty");
  if (!(probe_amplitude > 0.0) || !std::isfinite(probe_amplitude))
    throw ConfigError("probe_spectrum: probe amplitude must be positive");
  for (double d : delta_grid) {
    if (!std::isfinite(d)) throw ConfigError("probe_spectrum: delta grid has non-finite entries");
  }
  params.validate();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  Spectrum out;
  out.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    SpectrumPoint p;
    p.delta = delta;
    try {
      const auto r = floquet_steady_solve(params, omega_c, complex{probe_amplitude, 0.0}, delta);
      p.chi = r.sigma_ge_minus / probe_amplitude;
    } catch (const Error& e) {
      p.ok = false;
      p.chi = complex{nan, nan};
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

DipMetrics dip_metrics(const Spectrum& spectrum) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : spectrum) {
    if (!p.ok) continue;
    x.push_back(p.delta);
    y.push_back(std::abs(p.chi.imag()));
  }
  const std::size_t n = y.size();
  if (n < 3) throw NoDipError("dip_metrics: fewer than three valid points");

  std::size_t best = n;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (y[j] < y[j - 1] && y[j] <= y[j + 1]) {
      if (best == n || std::abs(x[j]) < std::abs(x[best])) best = j;
    }
  }
  if (best == n) throw NoDipError("dip_metrics: no interior local minimum of |Im chi|");

  std::size_t left = best;
  while (left > 0 && y[left - 1] >= y[left]) --left;
  std::size_t right = best;
  while (right + 1 < n && y[right + 1] >= y[right]) ++right;

  DipMetrics m;
  m.center = x[best];
  m.minimum = y[best];
  m.baseline = std::min(y[left], y[right]);
  m.depth = m.baseline - m.minimum;
  if (!(m.depth > 1e-9 * m.baseline)) throw NoDipError("dip_metrics: minimum has no depth");

  const double half = m.minimum + 0.5 * m.depth;
  auto crossing = [&](std::size_t from, bool forward) {
    std::size_t k = from;
    while (y[k] < half) k = forward ? k + 1 : k - 1;
    const std::size_t prev = forward ? k - 1 : k + 1;
    return x[prev] + (half - y[prev]) * (x[k] - x[prev]) / (y[k] - y[prev]);
  };
  m.fwhm = crossing(best, true) - crossing(best, false);
  return m;
}

std::vector<double> linspace(double first, double last, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = first;
    return out;
  }
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + step * static_cast<double>(i);
  out.back() = last;
  return out;
}

namespace {

double r_squared(std::span<const double> x, std::span<const double> y, double slope,
                 double intercept) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
}

void check_fit_input(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ConfigError("fit: need at least two (x, y) pairs of equal length");
}

}  // namespace

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  check_fit_input(x, y);
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = r_squared(x, y, f.slope, f.intercept);
  return f;
}

LinearFit fit_proportional(std::span<const double> x, std::span<const double> y) {
  check_fit_input(x, y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (sxx == 0.0) throw ConfigError("fit_proportional: x values are all zero");
  LinearFit f;
  f.slope = sxy / sxx;
  f.r_squared = r_squared(x, y, f.slope, 0.0);
  return f;
}

}  // namespace cpo
