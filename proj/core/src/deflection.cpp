#include "cpo/deflection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cpo/error.hpp"
#include "cpo/propagation.hpp"
#include "cpo/wei_norman.hpp"

namespace cpo {

MediumCoefficients MediumTemplate::at(double delta_c) const {
  AtomParams p = atom;
  p.delta_c = delta_c;
  return derive_coefficients(p, couplings, wavenumbers);
}

double default_probe_dz(const MediumCoefficients& coeffs, double dx) {
  return std::min(0.01 * coeffs.c / std::abs(coeffs.alpha_p), coeffs.k_p * dx * dx);
}

std::string_view to_string(BendDirection d) {
  switch (d) {
    case BendDirection::left:
      return "left";
    case BendDirection::right:
      return "right";
    case BendDirection::straight:
      return "straight";
  }
  return "straight";
}

BendDirection classify_bend(double a, double x_end, double tolerance) {
  const double shift = x_end - a;
  if (std::abs(shift) < tolerance) return BendDirection::straight;
  return shift < 0.0 ? BendDirection::left : BendDirection::right;
}

DeflectionRow deflection_cell(double a, double delta, const MediumTemplate& medium,
                              const DeflectionSettings& settings) {
  DeflectionRow row;
  row.a = a;
  row.delta = delta;
  try {
    const MediumCoefficients m = medium.at(delta);
    row.l_c = m.l_c;
    const auto grid = TransverseGrid::centered(settings.grid_points, settings.width_over_lc * m.l_c);
    row.dx = grid.dx();
    const double b = settings.b_over_lc * m.l_c;
    if (b > m.l_c) throw RegimeError("deflection_cell: probe width b must not exceed L_c");

    const LinearPotential eta = linearized_potential(a, m);
    row.eta0 = eta.eta0;
    row.eta1 = eta.eta1;
    row.x_analytic = trajectory_endpoint(a, eta.eta1, m.k_p, m.c, settings.length).x;

    const double dz = settings.dz > 0.0 ? settings.dz : default_probe_dz(m, grid.dx());
    PropagationOptions opts;
    opts.edge_tolerance = settings.edge_tolerance;

    const ComplexField1D probe = make_gaussian(grid, a, b);
    const auto lin = propagate_probe(probe, PotentialMode::linearized, m, eta, settings.length, dz, opts);
    const auto full = propagate_probe(probe, PotentialMode::full, m, eta, settings.length, dz, opts);
    const auto dl = beam_diagnostics(lin);
    const auto df = beam_diagnostics(full);
    row.x_linearized = dl.centroid;
    row.x_full = df.centroid;
    row.norm_drift = std::max(std::abs(dl.norm - 1.0), std::abs(df.norm - 1.0));
    row.direction = classify_bend(a, row.x_full, row.dx);
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
    row.x_linearized = row.x_full = std::nan("");
  }
  return row;
}

std::vector<DeflectionRow> deflection_experiment(std::span<const double> a_values,
                                                 std::span<const double> delta_values,
                                                 const MediumTemplate& medium,
                                                 const DeflectionSettings& settings,
                                                 unsigned jobs) {
  const std::size_t na = a_values.size();
  std::vector<DeflectionRow> rows(na * delta_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      rows[i] = deflection_cell(a_values[i % na], delta_values[i / na], medium, settings);
    }
  };
  const unsigned threads = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  if (threads == 1) {
    worker();
    return rows;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace cpo
