#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpo/medium.hpp"

namespace cpo {

/// Everything needed to rebuild medium coefficients for a given control detuning.
struct MediumTemplate {
  AtomParams atom;  ///< delta_c is replaced per cell
  Couplings couplings;
  Wavenumbers wavenumbers;

  MediumCoefficients at(double delta_c) const;
};

struct DeflectionSettings {
  double length = 10.0;         ///< propagation length L
  double b_over_lc = 0.2;       ///< probe width in units of L_c
  std::size_t grid_points = 1024;
  double width_over_lc = 16.0;  ///< transverse domain in units of L_c
  double dz = 0.0;              ///< 0 selects default_probe_dz
  double edge_tolerance = 1e-6;
};

/// min(0.01 c / |alpha_p|, k_p dx^2).
double default_probe_dz(const MediumCoefficients& coeffs, double dx);

enum class BendDirection { left, right, straight };

std::string_view to_string(BendDirection d);

/// Sign convention: +x is "right". |x_end - a| below tolerance counts as straight.
BendDirection classify_bend(double a, double x_end, double tolerance);

struct DeflectionRow {
  double a = 0.0;
  double delta = 0.0;
  double x_linearized = 0.0;  ///< centroid after the linearized-potential run
  double x_full = 0.0;        ///< centroid after the full saturable-potential run
  double x_analytic = 0.0;    ///< trajectory endpoint
  double eta0 = 0.0;
  double eta1 = 0.0;
  double l_c = 0.0;
  double dx = 0.0;
  double norm_drift = 0.0;    ///< max |norm - 1| over both runs
  BendDirection direction = BendDirection::straight;
  bool ok = true;
  std::string error;

  double shift_analytic() const { return x_analytic - a; }
  double shift_numeric() const { return x_full - a; }
};

/// Builds the soliton medium for (a, delta), propagates a Gaussian probe of width
/// b = b_over_lc * L_c centred at a under both potentials and records the endpoints.
/// Errors are caught and recorded in the row.
DeflectionRow deflection_cell(double a, double delta, const MediumTemplate& medium,
                              const DeflectionSettings& settings);

/// Row-major table over delta_values x a_values. Cells may run on `jobs` threads;
/// the output order does not depend on it.
std::vector<DeflectionRow> deflection_experiment(std::span<const double> a_values,
                                                 std::span<const double> delta_values,
                                                 const MediumTemplate& medium,
                                                 const DeflectionSettings& settings,
                                                 unsigned jobs = 1);

}  // namespace cpo
