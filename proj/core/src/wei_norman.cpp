#include "cpo/wei_norman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cpo/error.hpp"

namespace cpo {

namespace {

constexpr complex kI{0.0, 1.0};

// exp(-a x^2 + b x + c)
struct Quadratic {
  complex a;
  complex b;
  complex c;
};

Quadratic to_quadratic(const GaussianPacket& p) {
  const complex a = p.complex_width;
  const complex ik = kI * p.momentum;
  return {a, 2.0 * a * p.center + ik, p.global_phase - a * p.center * p.center - ik * p.center};
}

GaussianPacket from_quadratic(const Quadratic& q) {
  if (!(q.a.real() > 0.0) || !std::isfinite(q.a.real()) || !std::isfinite(q.a.imag())) {
    std::ostringstream os;
    os << "evolve_gaussian_analytic: packet not normalizable (Re A = " << q.a.real() << ")";
    throw EvolutionError(os.str());
  }
  GaussianPacket p;
  p.center = q.b.real() / (2.0 * q.a.real());
  p.momentum = q.b.imag() - 2.0 * q.a.imag() * p.center;
  p.complex_width = q.a;
  p.global_phase = q.c + q.a * p.center * p.center + kI * p.momentum * p.center;
  return p;
}

struct Exponents {
  complex g1, g2, g3, g4;
};

}  // namespace

WeiNormanCoeffs wn_closed_coefficients(double t, double m, double eta0, double eta1, double a) {
  if (!(m > 0.0)) throw ConfigError("wn_closed_coefficients: m > 0 violated");
  WeiNormanCoeffs w;
  w.g1 = -kI * t / (2.0 * m);
  w.g2 = -kI * eta1 * t * t / (2.0 * m);
  w.g3 = -kI * eta1 * t;
  w.g4 = -kI * (eta0 * t + eta1 * eta1 * t * t * t / (6.0 * m));
  w.t = t;
  w.m = m;
  w.eta0 = eta0;
  w.eta1 = eta1;
  w.a = a;
  return w;
}

HamiltonianCoefficients HamiltonianCoefficients::constant_case(double m, double eta0,
                                                               double eta1) {
  const double c1 = 1.0 / (2.0 * m);
  return {[c1](double) { return c1; }, [](double) { return 0.0; },
          [eta1](double) { return eta1; }, [eta0](double) { return eta0; }};
}

WeiNormanCoeffs wn_integrate_odes(const HamiltonianCoefficients& h, double t_end, double dt,
                                  double a) {
  if (!h.kinetic || !h.momentum || !h.linear || !h.constant) {
    throw ConfigError("wn_integrate_odes: all four coefficient functions are required");
  }
  if (!(dt > 0.0)) throw ConfigError("wn_integrate_odes: dt > 0 violated");
  if (!(t_end >= 0.0)) throw ConfigError("wn_integrate_odes: t_end >= 0 violated");

  auto rhs = [&](double t, const Exponents& g) {
    const double c1 = h.kinetic(t), c2 = h.momentum(t), c3 = h.linear(t), c4 = h.constant(t);
    const double rate = std::max({std::abs(c1), std::abs(c2), std::abs(c3), std::abs(c4)});
    if (!(dt * rate < 0.1)) {
      std::ostringstream os;
      os << "wn_integrate_odes: step guard dt * max|c_j| < 0.1 violated at t = " << t << " ("
         << dt << " * " << rate << ")";
      throw ConfigError(os.str());
    }
    Exponents d;
    d.g1 = -kI * c1;
    d.g3 = -kI * c3;
    d.g2 = -kI * c2 + 2.0 * kI * g.g1 * d.g3;
    d.g4 = -kI * c4 + kI * g.g2 * d.g3;
    return d;
  };
  auto axpy = [](const Exponents& g, double s, const Exponents& d) {
    return Exponents{g.g1 + s * d.g1, g.g2 + s * d.g2, g.g3 + s * d.g3, g.g4 + s * d.g4};
  };

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double step = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
  Exponents g{};
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = step * static_cast<double>(i);
    const auto k1 = rhs(t, g);
    const auto k2 = rhs(t + 0.5 * step, axpy(g, 0.5 * step, k1));
    const auto k3 = rhs(t + 0.5 * step, axpy(g, 0.5 * step, k2));
    const auto k4 = rhs(t + step, axpy(g, step, k3));
    g.g1 += step / 6.0 * (k1.g1 + 2.0 * k2.g1 + 2.0 * k3.g1 + k4.g1);
    g.g2 += step / 6.0 * (k1.g2 + 2.0 * k2.g2 + 2.0 * k3.g2 + k4.g2);
    g.g3 += step / 6.0 * (k1.g3 + 2.0 * k2.g3 + 2.0 * k3.g3 + k4.g3);
    g.g4 += step / 6.0 * (k1.g4 + 2.0 * k2.g4 + 2.0 * k3.g4 + k4.g4);
  }

  WeiNormanCoeffs w;
  w.g1 = g.g1;
  w.g2 = g.g2;
  w.g3 = g.g3;
  w.g4 = g.g4;
  w.t = t_end;
  const double c1 = h.kinetic(t_end);
  w.m = c1 != 0.0 ? 1.0 / (2.0 * c1) : std::numeric_limits<double>::infinity();
  w.eta0 = h.constant(t_end);
  w.eta1 = h.linear(t_end);
  w.a = a;
  return w;
}

complex GaussianPacket::operator()(double x) const {
  const double u = x - center;
  return std::exp(-complex_width * u * u + kI * momentum * u + global_phase);
}

GaussianPacket probe_packet(double a, double b) {
  if (!(b > 0.0)) throw ConfigError("probe_packet: width b > 0 violated");
  GaussianPacket p;
  p.center = a;
  p.momentum = 0.0;
  p.complex_width = 1.0 / (b * b);
  p.global_phase = -0.25 * std::log(std::numbers::pi * b * b / 2.0);
  return p;
}

double packet_norm(const GaussianPacket& packet) {
  const Quadratic q = to_quadratic(packet);
  const double ra = q.a.real();
  const double rb = q.b.real();
  return std::exp(2.0 * q.c.real() + rb * rb / (2.0 * ra)) * std::sqrt(std::numbers::pi / (2.0 * ra));
}

ComplexField1D sample_packet(const TransverseGrid& grid, const GaussianPacket& packet, double z) {
  ComplexField1D f(grid, z);
  for (std::size_t j = 0; j < grid.size(); ++j) f.values[j] = packet(grid.x(j));
  return f;
}

GaussianPacket evolve_gaussian_analytic(const GaussianPacket& packet,
                                        const WeiNormanCoeffs& w) {
  Quadratic q = to_quadratic(packet);

  // exp(g4)
  q.c += w.g4;

  // exp(g3 (x - a))
  q.b += w.g3;
  q.c -= w.g3 * w.a;

  // exp(g2 P) = exp(s d/dx) with s = -i g2: f(x) -> f(x + s)
  const complex s = -kI * w.g2;
  q.c += -q.a * s * s + q.b * s;
  q.b -= 2.0 * q.a * s;

  // exp(g1 P^2) = exp(tau d^2/dx^2) with tau = -g1
  const complex tau = -w.g1;
  const complex den = 1.0 + 4.0 * q.a * tau;
  if (den == complex{}) throw EvolutionError("evolve_gaussian_analytic: degenerate kinetic factor");
  q.c += q.b * q.b * tau / den - 0.5 * std::log(den);
  q.b /= den;
  q.a /= den;

  return from_quadratic(q);
}

TrajectoryEndpoint trajectory_endpoint(double a, double eta1, double k_p, double c, double L) {
  if (!(L >= 0.0)) throw ConfigError("trajectory_endpoint: L >= 0 violated");
  if (!(k_p > 0.0) || !(c > 0.0)) throw ConfigError("trajectory_endpoint: k_p > 0 and c > 0 required");
  return {a - eta1 * L * L / (2.0 * k_p * c), L};
}

}  // namespace cpo
