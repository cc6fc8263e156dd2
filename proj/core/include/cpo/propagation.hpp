#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cpo/fft.hpp"
#include "cpo/field.hpp"
#include "cpo/medium.hpp"

namespace cpo {

enum class ControlModel {
  saturable,  ///< alpha_c / (1 + 2 beta |Omega|^2)
  cubic,      ///< alpha_c (1 - 2 beta |Omega|^2)
};

enum class PotentialMode {
  full,        ///< alpha_p (1 + 2 beta |Omega_c|^2)^-2 of the soliton control beam
  linearized,  ///< eta0 + eta1 (x - a)
};

struct PropagationOptions {
  /// Largest |field| allowed on the outermost samples, relative to the peak.
  double edge_tolerance = 1e-6;
  /// Invoke on_snapshot every this many steps (0 = never). z = 0 and z_end are always sent.
  std::size_t snapshot_every = 0;
  std::function<void(const ComplexField1D&)> on_snapshot;
};

/// Step count and the exact step used to land on z_end.
struct StepPlan {
  std::size_t steps = 0;
  double dz = 0.0;
};

StepPlan plan_steps(double z_end, double dz_max);

/// Strang split-step integrator for i dz u + (1/2k) dxx u = V(x, |u|^2) u on a periodic grid:
/// half kinetic step in Fourier space, full potential phase, half kinetic step.
class SplitStepSolver {
 public:
  SplitStepSolver(const TransverseGrid& grid, double mass);

  const TransverseGrid& grid() const { return grid_; }
  double mass() const { return mass_; }

  /// Static potential V(x) given as samples.
  ComplexField1D run(const ComplexField1D& field, std::span<const double> potential,
                     double z_end, double dz, const PropagationOptions& options = {});

  /// Intensity-dependent potential V(|u|^2), evaluated pointwise after each kinetic half step.
  ComplexField1D run_nonlinear(const ComplexField1D& field,
                               const std::function<double(double)>& potential_of_intensity,
                               double z_end, double dz, const PropagationOptions& options = {});

 private:
  template <class PhaseStep>
  ComplexField1D evolve(const ComplexField1D& field, double z_end, double dz,
                        const PropagationOptions& options, PhaseStep&& phase_step);
  void kinetic_half_step(std::vector<complex>& values);
  void prepare(double dz);

  TransverseGrid grid_;
  double mass_;
  Fft fft_;
  std::vector<double> k2_;
  std::vector<complex> half_kinetic_;
  double prepared_dz_ = -1.0;
};

/// Control beam under the saturable or cubic nonlinearity (mass k_c).
/// Guards: dz |alpha_c| < 0.1, edge leak below options.edge_tolerance.
ComplexField1D propagate_control(const ComplexField1D& field, const MediumCoefficients& coeffs,
                                 double z_end, double dz, ControlModel model,
                                 const PropagationOptions& options = {});

/// Probe beam in the stationary-beam picture (z is the evolution coordinate, potential
/// divided by c, mass k_p). The full mode uses the centred soliton control profile.
/// The linearized mode requires the probe width 2 * rms <= l_c.
ComplexField1D propagate_probe(const ComplexField1D& field, PotentialMode mode,
                               const MediumCoefficients& coeffs, const LinearPotential& eta,
                               double z_end, double dz, const PropagationOptions& options = {});

/// Potential samples the probe sees in the given mode, before division by c.
std::vector<double> probe_potential_samples(const TransverseGrid& grid, PotentialMode mode,
                                            const MediumCoefficients& coeffs,
                                            const LinearPotential& eta);

}  // namespace cpo
