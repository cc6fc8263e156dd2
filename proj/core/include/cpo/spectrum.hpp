#pragma once

#include <span>
#include <string>
#include <vector>

#include "cpo/bloch.hpp"

namespace cpo {

/// One probe detuning of a susceptibility scan, chi = sigma_ge(-) / omega_p.
/// Failed points keep their detuning, carry NaN chi and the error text.
struct SpectrumPoint {
  double delta = 0.0;
  complex chi{0.0, 0.0};
  bool ok = true;
  std::string error;
};

using Spectrum = std::vector<SpectrumPoint>;

/// Evaluates chi on `delta_grid` through floquet_steady_solve. Errors are recorded per point.
Spectrum probe_spectrum(const AtomParams& params, complex omega_c,
                        std::span<const double> delta_grid, double probe_amplitude = 1e-3);

struct DipMetrics {
  double center = 0.0;
  double fwhm = 0.0;
  double depth = 0.0;
  double baseline = 0.0;
  double minimum = 0.0;
};

/// Locates the interior local minimum of |Im chi| closest to delta = 0 and measures it.
/// The baseline is the lower of the two flanking maxima; the width is taken between
/// the linearly interpolated half-recovery crossings. Throws NoDipError if there is none.
DipMetrics dip_metrics(const Spectrum& spectrum);

std::vector<double> linspace(double first, double last, std::size_t count);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept with the centered R^2.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares through the origin, y = slope * x, with the centered R^2.
LinearFit fit_proportional(std::span<const double> x, std::span<const double> y);

}  // namespace cpo
