#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cpo {

using complex = std::complex<double>;

/// Two-level medium. Frequencies are in units of gamma2 by convention.
struct AtomParams {
  double gamma1 = 0.01;   ///< population decay rate, 1/T1
  double gamma2 = 1.0;    ///< dipole dephasing rate, 1/T2
  double delta_c = -10.0; ///< control detuning from the atomic line
  double w_eq = -1.0;     ///< equilibrium inversion

  /// Throws ConfigError naming the violated inequality.
  void validate() const;
};

/// Control and probe drive. The probe enters the drive as omega_p * exp(-i delta t).
struct DriveFields {
  complex omega_c{0.0, 0.0};
  complex omega_p{0.0, 0.0};
  double delta = 0.0;  ///< pump-probe beat detuning
};

/// Non-fatal diagnostics, e.g. a probe that is not weak relative to the control.
std::vector<std::string> drive_warnings(const DriveFields& fields);

struct BlochState {
  double w = 0.0;
  complex sigma_eg{0.0, 0.0};
  double time = 0.0;

  complex sigma_ge() const { return std::conj(sigma_eg); }
};

/// Zeroth- and first-order Floquet components of the steady state.
/// The (-) sideband multiplies exp(-i delta t); the (+) sideband is fixed by
/// w(+) = conj(w(-)) and sigma_eg(+) = conj(sigma_ge(-)).
struct SteadyResponse {
  double w0 = 0.0;
  complex sigma_ge0{0.0, 0.0};
  complex sigma_ge_minus{0.0, 0.0};
  complex w_minus{0.0, 0.0};
  complex sigma_eg_minus{0.0, 0.0};
  complex d_denominator{0.0, 0.0};
  double condition_number = 1.0;  ///< of the real first-order system
};

struct ZerothOrder {
  double w0 = 0.0;
  complex sigma_ge0{0.0, 0.0};
};

/// Fixed-step RK4 integration of the damped Bloch equations from `initial`.
/// Every `sample_every`-th state is recorded, plus the first and the last.
/// Throws ConfigError if dt * (fastest rate) >= 0.1, DivergenceError on NaN/Inf.
std::vector<BlochState> integrate_bloch(const AtomParams& params, const DriveFields& fields,
                                        const BlochState& initial, double t_end, double dt,
                                        std::size_t sample_every = 1);

/// Same, starting from thermal equilibrium (w_eq, 0).
std::vector<BlochState> integrate_bloch(const AtomParams& params, const DriveFields& fields,
                                        double t_end, double dt, std::size_t sample_every = 1);

/// Largest rate entering the step guard of integrate_bloch.
double bloch_max_rate(const AtomParams& params, const DriveFields& fields);

/// Closed-form steady state under the control field alone.
ZerothOrder steady_state_zeroth(const AtomParams& params, complex omega_c);

/// D = (delta + i g1)(delta - Delta + i g2)(delta + Delta + i g2) - 4|Oc|^2 (i g2 + delta)
complex cpo_denominator(const AtomParams& params, complex omega_c, double delta);

/// Closed-form first-order coherence sigma_ge(-), evaluated term by term as printed
/// (including the common factor D (i g2 - Delta) of the first term).
/// Throws SingularError if |D| < 1e-12.
complex first_order_closed(const AtomParams& params, complex omega_c, complex omega_p,
                           double delta);

/// Solves the zeroth-order (3 unknowns) and first-order (6 real unknowns) steady-state
/// linear systems directly. Independent of first_order_closed.
/// Throws SingularError if the condition number of either system exceeds 1e12.
SteadyResponse floquet_steady_solve(const AtomParams& params, complex omega_c,
                                    complex omega_p, double delta);

}  // namespace cpo
