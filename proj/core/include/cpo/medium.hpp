#pragma once

#include <string>
#include <vector>

#include "cpo/bloch.hpp"
#include "cpo/field.hpp"

namespace cpo {

/// Collective coupling inputs N|g_j|^2 of the propagation equations.
struct Couplings {
  double atom_line_density = 1.0;  ///< N
  double coupling_c = 1.01;        ///< |g_c|^2
  double coupling_p = 101.0;       ///< |g_p|^2
  double c = 1.0;                  ///< speed of light
};

struct Wavenumbers {
  double k_c = 50.0;
  double k_p = 1000.0;
};

/// Propagation coefficients in the large-detuning, delta = 0 limit.
///
/// The control profile is a sech beam of width l_c and peak |Omega_c|^2 = |q| / 4.
/// For red detuning (delta_c < 0, q > 0) it is a bright soliton of the cubic model;
/// for blue detuning the same profile is used as a prescribed control beam, so l_c is
/// always taken with |q|.
struct MediumCoefficients {
  double alpha_c = 0.0;
  double alpha_p = 0.0;
  double beta = 0.0;
  double q = 0.0;  ///< alpha_c * beta
  double l_c = 0.0;
  double k_c = 0.0;
  double k_p = 0.0;
  double coupling_c = 0.0;
  double coupling_p = 0.0;
  double atom_line_density = 0.0;
  double c = 1.0;
  double delta_c = 0.0;

  /// Peak control amplitude sqrt(|q|) / 2.
  double control_peak() const;
};

/// alpha_c, alpha_p, beta from the atom and couplings, plus q and l_c.
/// Throws RegimeError for delta_c == 0.
MediumCoefficients derive_coefficients(const AtomParams& params, const Couplings& couplings,
                                       const Wavenumbers& k);

/// Same coefficients from directly specified alpha_c, alpha_p. The couplings are
/// back-computed with N = 1. Throws RegimeError if a sign disagrees with -sign(delta_c).
MediumCoefficients coefficients_from_alphas(const AtomParams& params, double alpha_c,
                                            double alpha_p, const Wavenumbers& k,
                                            double c = 1.0);

/// Warns when |delta_c| < 5 gamma2, where dropping Im of the response is questionable.
std::vector<std::string> regime_warnings(const AtomParams& params);

/// (sqrt|q| / 2) exp(i (q^2/4 - alpha_c) z) sech(x / l_c).
complex soliton_profile(double x, double z, const MediumCoefficients& coeffs);

/// soliton_profile sampled on a grid.
ComplexField1D sample_soliton(const TransverseGrid& grid, const MediumCoefficients& coeffs,
                              double z = 0.0);

/// alpha_p (1 + 2 beta |Omega_c|^2)^-2 for one intensity sample.
double probe_potential_at(double control_intensity, const MediumCoefficients& coeffs);

/// Pointwise probe potential of a sampled control field.
std::vector<double> probe_potential(const MediumCoefficients& coeffs,
                                    const ComplexField1D& control_field);

/// Probe potential expanded to first order around the probe centre a:
/// V(x) ~ eta0 + eta1 (x - a).
struct LinearPotential {
  double eta0 = 0.0;
  double eta1 = 0.0;
  double a = 0.0;

  double operator()(double x) const { return eta0 + eta1 * (x - a); }
};

LinearPotential linearized_potential(double a, const MediumCoefficients& coeffs);

}  // namespace cpo
