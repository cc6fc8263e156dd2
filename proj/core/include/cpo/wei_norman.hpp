#pragma once

#include <complex>
#include <functional>

#include "cpo/field.hpp"

namespace cpo {

using complex = std::complex<double>;

/// Exponents of U(t) = exp(g1 P^2) exp(g2 P) exp(g3 (x - a)) exp(g4) for
/// H = P^2 / 2m + eta0 + eta1 (x - a), with P = -i d/dx.
struct WeiNormanCoeffs {
  complex g1{0.0, 0.0};
  complex g2{0.0, 0.0};
  complex g3{0.0, 0.0};
  complex g4{0.0, 0.0};
  double t = 0.0;
  double m = 0.0;
  double eta0 = 0.0;
  double eta1 = 0.0;
  double a = 0.0;  ///< origin of x' = x - a
};

/// g1 = -i t/2m, g2 = -i eta1 t^2/2m, g3 = -i eta1 t, g4 = -i (eta0 t + eta1^2 t^3 / 6m).
WeiNormanCoeffs wn_closed_coefficients(double t, double m, double eta0, double eta1,
                                       double a = 0.0);

/// Time-dependent H(t) = c1 P^2 + c2 P + c3 x' + c4.
struct HamiltonianCoefficients {
  std::function<double(double)> kinetic;   ///< c1, equals 1/2m for the probe
  std::function<double(double)> momentum;  ///< c2
  std::function<double(double)> linear;    ///< c3, equals eta1
  std::function<double(double)> constant;  ///< c4, equals eta0

  static HamiltonianCoefficients constant_case(double m, double eta0, double eta1);
};

/// RK4 integration of
///   i g1' = c1,  i (g2' - 2 i g1 g3') = c2,  i g3' = c3,  i (g4' - i g2 g3') = c4,
/// obtained by matching i U' U^-1 = H term by term. The m, eta0, eta1 fields of the result
/// are the coefficients at t_end. Throws ConfigError if dt * max|c_j| >= 0.1 anywhere.
WeiNormanCoeffs wn_integrate_odes(const HamiltonianCoefficients& h, double t_end, double dt,
                                  double a = 0.0);

/// psi(x) = exp(-A (x - center)^2 + i momentum (x - center) + phase).
struct GaussianPacket {
  double center = 0.0;
  double momentum = 0.0;
  complex complex_width{1.0, 0.0};  ///< A, Re A > 0
  complex global_phase{0.0, 0.0};   ///< log-amplitude

  complex operator()(double x) const;
};

/// exp(-(x - a)^2 / b^2), normalized to unit L2 norm on the real line.
GaussianPacket probe_packet(double a, double b);

/// Integral of |psi|^2 over the real line.
double packet_norm(const GaussianPacket& packet);

ComplexField1D sample_packet(const TransverseGrid& grid, const GaussianPacket& packet,
                             double z = 0.0);

/// Applies the four factors right to left in closed form on the Gaussian family.
/// Throws EvolutionError if the result is not normalizable.
GaussianPacket evolve_gaussian_analytic(const GaussianPacket& packet,
                                        const WeiNormanCoeffs& coeffs);

struct TrajectoryEndpoint {
  double x = 0.0;
  double z = 0.0;
};

/// x = a - eta1 L^2 / (2 k_p c), z = L.
TrajectoryEndpoint trajectory_endpoint(double a, double eta1, double k_p, double c, double L);

}  // namespace cpo
