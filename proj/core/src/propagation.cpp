#include "cpo/propagation.hpp"

#include <cmath>
#include <sstream>

#include "cpo/error.hpp"

namespace cpo {

namespace {

constexpr double kStepGuard = 0.1;
constexpr std::size_t kCheckInterval = 16;

void check_finite(const std::vector<complex>& v, double z) {
  for (const auto& x : v) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw DivergenceError("propagation: non-finite field at z = " + std::to_string(z));
    }
  }
}

void check_edges(const ComplexField1D& f, double tolerance) {
  const double leak = edge_fraction(f);
  if (leak > tolerance) {
    std::ostringstream os;
    os << "propagation: field at the periodic boundary is " << leak
       << " of the peak at z = " << f.z << " (allowed " << tolerance << ")";
    throw BoundaryError(os.str());
  }
}

void check_step(double dz, double rate, const char* what) {
  if (!(dz * rate < kStepGuard)) {
    std::ostringstream os;
    os << what << ": step guard dz * |alpha| < 0.1 violated (" << dz << " * " << rate << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

StepPlan plan_steps(double z_end, double dz_max) {
  if (!(dz_max > 0.0)) throw ConfigError("propagation: dz > 0 violated");
  if (!(z_end >= 0.0) || !std::isfinite(z_end)) throw ConfigError("propagation: z_end >= 0 violated");
  StepPlan p;
  p.steps = static_cast<std::size_t>(std::ceil(z_end / dz_max - 1e-9));
  p.dz = p.steps > 0 ? z_end / static_cast<double>(p.steps) : 0.0;
  return p;
}

SplitStepSolver::SplitStepSolver(const TransverseGrid& grid, double mass)
    : grid_(grid), mass_(mass), fft_(grid.size()) {
  if (!(mass > 0.0)) throw ConfigError("SplitStepSolver: mass > 0 violated");
  const auto k = grid.wavenumbers();
  k2_.resize(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) k2_[j] = k[j] * k[j];
  half_kinetic_.resize(k.size());
}

void SplitStepSolver::prepare(double dz) {
  if (dz == prepared_dz_) return;
  for (std::size_t j = 0; j < k2_.size(); ++j) {
    half_kinetic_[j] = std::polar(1.0, -k2_[j] * dz / (4.0 * mass_));
  }
  prepared_dz_ = dz;
}

void SplitStepSolver::kinetic_half_step(std::vector<complex>& values) {
  fft_.forward(values);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= half_kinetic_[j];
  fft_.inverse(values);
}

template <class PhaseStep>
ComplexField1D SplitStepSolver::evolve(const ComplexField1D& field, double z_end, double dz,
                                       const PropagationOptions& options,
                                       PhaseStep&& phase_step) {
  if (!(field.grid == grid_)) throw ConfigError("SplitStepSolver: field grid mismatch");
  const StepPlan plan = plan_steps(z_end, dz);
  ComplexField1D f = field;
  check_finite(f.values, f.z);
  check_edges(f, options.edge_tolerance);
  const double z0 = f.z;
  if (options.on_snapshot) options.on_snapshot(f);
  if (plan.steps == 0) return f;

  prepare(plan.dz);
  for (std::size_t i = 0; i < plan.steps; ++i) {
    kinetic_half_step(f.values);
    phase_step(f.values, plan.dz);
    kinetic_half_step(f.values);
    f.z = z0 + plan.dz * static_cast<double>(i + 1);

    const bool last = i + 1 == plan.steps;
    if (last || (i + 1) % kCheckInterval == 0) {
      check_finite(f.values, f.z);
      check_edges(f, options.edge_tolerance);
    }
    const bool snap = options.on_snapshot &&
                      (last || (options.snapshot_every > 0 && (i + 1) % options.snapshot_every == 0));
    if (snap) options.on_snapshot(f);
  }
  f.z = z0 + z_end;
  return f;
}

ComplexField1D SplitStepSolver::run(const ComplexField1D& field, std::span<const double> potential,
                                    double z_end, double dz, const PropagationOptions& options) {
  if (potential.size() != grid_.size()) throw ConfigError("SplitStepSolver: potential size mismatch");
  std::vector<complex> phase(potential.size());
  double cached_dz = -1.0;
  return evolve(field, z_end, dz, options, [&](std::vector<complex>& v, double h) {
    if (h != cached_dz) {
      for (std::size_t j = 0; j < phase.size(); ++j) phase[j] = std::polar(1.0, -potential[j] * h);
      cached_dz = h;
    }
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= phase[j];
  });
}

ComplexField1D SplitStepSolver::run_nonlinear(
    const ComplexField1D& field, const std::function<double(double)>& potential_of_intensity,
    double z_end, double dz, const PropagationOptions& options) {
  return evolve(field, z_end, dz, options, [&](std::vector<complex>& v, double h) {
    for (auto& x : v) x *= std::polar(1.0, -potential_of_intensity(std::norm(x)) * h);
  });
}

ComplexField1D propagate_control(const ComplexField1D& field, const MediumCoefficients& coeffs,
                                 double z_end, double dz, ControlModel model,
                                 const PropagationOptions& options) {
  const StepPlan plan = plan_steps(z_end, dz);
  check_step(plan.steps > 0 ? plan.dz : dz, std::abs(coeffs.alpha_c), "propagate_control");
  SplitStepSolver solver(field.grid, coeffs.k_c);
  const double alpha = coeffs.alpha_c;
  const double beta = coeffs.beta;
  if (model == ControlModel::cubic) {
    return solver.run_nonlinear(
        field, [=](double i) { return alpha * (1.0 - 2.0 * beta * i); }, z_end, dz, options);
  }
  return solver.run_nonlinear(
      field, [=](double i) { return alpha / (1.0 + 2.0 * beta * i); }, z_end, dz, options);
}

std::vector<double> probe_potential_samples(const TransverseGrid& grid, PotentialMode mode,
                                            const MediumCoefficients& coeffs,
                                            const LinearPotential& eta) {
  if (mode == PotentialMode::full) return probe_potential(coeffs, sample_soliton(grid, coeffs));
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = eta(grid.x(j));
  return v;
}

ComplexField1D propagate_probe(const ComplexField1D& field, PotentialMode mode,
                               const MediumCoefficients& coeffs, const LinearPotential& eta,
                               double z_end, double dz, const PropagationOptions& options) {
  const StepPlan plan = plan_steps(z_end, dz);
  check_step(plan.steps > 0 ? plan.dz : dz, std::abs(coeffs.alpha_p) / coeffs.c,
             "propagate_probe");
  if (mode == PotentialMode::linearized) {
    const double b = 2.0 * beam_diagnostics(field).rms_width;
    if (b > coeffs.l_c * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "propagate_probe: linearized potential needs probe width b <= L_c (b = " << b
         << ", L_c = " << coeffs.l_c << ")";
      throw RegimeError(os.str());
    }
  }
  auto potential = probe_potential_samples(field.grid, mode, coeffs, eta);
  for (auto& v : potential) v /= coeffs.c;
  SplitStepSolver solver(field.grid, coeffs.k_p);
  return solver.run(field, potential, z_end, dz, options);
}

}  // namespace cpo
