#include "cpo/medium.hpp"

#include <cmath>
#include <sstream>

#include "cpo/error.hpp"

namespace cpo {

namespace {

double sech(double u) { return 1.0 / std::cosh(u); }

void check_wavenumbers(const Wavenumbers& k, double c) {
  if (!(k.k_c > 0.0)) throw ConfigError("medium.k_c > 0 violated");
  if (!(k.k_p > 0.0)) throw ConfigError("medium.k_p > 0 violated");
  if (!(c > 0.0)) throw ConfigError("medium.c > 0 violated");
}

double saturation_beta(const AtomParams& p) {
  return 2.0 * p.gamma2 / (p.gamma1 * (p.gamma2 * p.gamma2 + p.delta_c * p.delta_c));
}

void finish(MediumCoefficients& m) {
  m.q = m.alpha_c * m.beta;
  if (m.q == 0.0) throw RegimeError("medium: alpha_c * beta vanishes, no control beam size");
  m.l_c = std::sqrt(2.0 / m.k_c) / std::abs(m.q);
}

}  // namespace

double MediumCoefficients::control_peak() const { return 0.5 * std::sqrt(std::abs(q)); }

MediumCoefficients derive_coefficients(const AtomParams& params, const Couplings& couplings,
                                       const Wavenumbers& k) {
  params.validate();
  check_wavenumbers(k, couplings.c);
  if (params.delta_c == 0.0) {
    throw RegimeError("derive_coefficients: delta_c = 0 is outside the large-detuning regime");
  }
  if (!(couplings.atom_line_density > 0.0) || !(couplings.coupling_c > 0.0) ||
      !(couplings.coupling_p > 0.0)) {
    throw ConfigError("medium: atom_line_density, coupling_c, coupling_p must be positive");
  }
  const double d = params.delta_c;
  const double g2 = params.gamma2;
  const double lorentz = d / (d * d + g2 * g2);

  MediumCoefficients m;
  m.alpha_c = -couplings.atom_line_density / couplings.c * couplings.coupling_c * lorentz;
  m.alpha_p = -couplings.atom_line_density * couplings.coupling_p * lorentz;
  m.beta = saturation_beta(params);
  m.k_c = k.k_c;
  m.k_p = k.k_p;
  m.coupling_c = couplings.coupling_c;
  m.coupling_p = couplings.coupling_p;
  m.atom_line_density = couplings.atom_line_density;
  m.c = couplings.c;
  m.delta_c = d;
  finish(m);
  return m;
}

MediumCoefficients coefficients_from_alphas(const AtomParams& params, double alpha_c,
                                            double alpha_p, const Wavenumbers& k, double c) {
  params.validate();
  check_wavenumbers(k, c);
  if (params.delta_c == 0.0) {
    throw RegimeError("coefficients_from_alphas: delta_c = 0 is outside the large-detuning regime");
  }
  const double want = params.delta_c < 0.0 ? 1.0 : -1.0;
  if (!(alpha_c * want > 0.0) || !(alpha_p * want > 0.0)) {
    std::ostringstream os;
    os << "medium: sign(alpha_c) = sign(alpha_p) = -sign(delta_c) violated (alpha_c = "
       << alpha_c << ", alpha_p = " << alpha_p << ", delta_c = " << params.delta_c << ")";
    throw RegimeError(os.str());
  }
  const double d = params.delta_c;
  const double g2 = params.gamma2;
  const double lorentz = d / (d * d + g2 * g2);

  MediumCoefficients m;
  m.alpha_c = alpha_c;
  m.alpha_p = alpha_p;
  m.beta = saturation_beta(params);
  m.k_c = k.k_c;
  m.k_p = k.k_p;
  m.atom_line_density = 1.0;
  m.coupling_c = -alpha_c * c / lorentz;
  m.coupling_p = -alpha_p / lorentz;
  m.c = c;
  m.delta_c = d;
  finish(m);
  return m;
}

std::vector<std::string> regime_warnings(const AtomParams& params) {
  std::vector<std::string> out;
  if (std::abs(params.delta_c) < 5.0 * params.gamma2) {
    out.emplace_back("|delta_c| < 5 gamma2: neglecting the imaginary response is questionable");
  }
  return out;
}

complex soliton_profile(double x, double z, const MediumCoefficients& m) {
  const double phase = (m.q * m.q / 4.0 - m.alpha_c) * z;
  return m.control_peak() * std::polar(1.0, phase) * sech(x / m.l_c);
}

ComplexField1D sample_soliton(const TransverseGrid& grid, const MediumCoefficients& coeffs,
                              double z) {
  ComplexField1D f(grid, z);
  for (std::size_t j = 0; j < grid.size(); ++j) f.values[j] = soliton_profile(grid.x(j), z, coeffs);
  return f;
}

double probe_potential_at(double control_intensity, const MediumCoefficients& m) {
  const double s = 1.0 + 2.0 * m.beta * control_intensity;
  return m.alpha_p / (s * s);
}

std::vector<double> probe_potential(const MediumCoefficients& coeffs,
                                    const ComplexField1D& control_field) {
  std::vector<double> v(control_field.values.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = probe_potential_at(std::norm(control_field.values[j]), coeffs);
  }
  return v;
}

LinearPotential linearized_potential(double a, const MediumCoefficients& m) {
  const double s2 = sech(a / m.l_c) * sech(a / m.l_c);
  const double th = std::tanh(a / m.l_c);
  const double aq = std::abs(m.q);
  const double sat = 1.0 + 0.5 * m.beta * aq * s2;
  LinearPotential lp;
  lp.a = a;
  lp.eta0 = m.alpha_p / (sat * sat);
  lp.eta1 = m.alpha_p * m.q * m.q * m.beta * std::sqrt(2.0 * m.k_c) * s2 * th / (sat * sat * sat);
  return lp;
}

}  // namespace cpo
