#include "cpo/bloch.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpo/error.hpp"

namespace cpo {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kMaxCondition = 1e12;
constexpr double kStepGuard = 0.1;

struct Derivative {
  double dw;
  complex dsigma;
};

// Total drive Omega(t) = Omega_c + Omega_p exp(-i delta t).
complex drive_at(const DriveFields& f, double t) {
  if (f.omega_p == complex{}) return f.omega_c;
  return f.omega_c + f.omega_p * std::exp(-kI * f.delta * t);
}

Derivative bloch_rhs(const AtomParams& p, const DriveFields& f, double t, double w,
                     complex sigma_eg) {
  const complex omega = drive_at(f, t);
  // 2i(Omega* sigma_ge - Omega sigma_eg) = -4 Im(Omega* sigma_ge)
  const complex coupling = std::conj(omega) * std::conj(sigma_eg);
  const double dw = -p.gamma1 * (w - p.w_eq) - 4.0 * coupling.imag();
  const complex dsigma = -(kI * p.delta_c + p.gamma2) * sigma_eg - kI * std::conj(omega) * w;
  return {dw, dsigma};
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

// Real form [[Re, -Im], [Im, Re]] of a complex matrix.
Eigen::MatrixXd realify(const Eigen::Matrix3cd& m) {
  Eigen::MatrixXd r(6, 6);
  r.topLeftCorner<3, 3>() = m.real();
  r.topRightCorner<3, 3>() = -m.imag();
  r.bottomLeftCorner<3, 3>() = m.imag();
  r.bottomRightCorner<3, 3>() = m.real();
  return r;
}

Eigen::Vector3cd solve_complex3(const Eigen::Matrix3cd& m, const Eigen::Vector3cd& rhs,
                                double& cond, const char* what) {
  const Eigen::MatrixXd real_m = realify(m);
  cond = condition_number(real_m);
  if (!(cond <= kMaxCondition)) {
    std::ostringstream os;
    os << what << " system is singular (condition number " << cond << " > 1e12)";
    throw SingularError(os.str());
  }
  Eigen::VectorXd real_rhs(6);
  real_rhs.head<3>() = rhs.real();
  real_rhs.tail<3>() = rhs.imag();
  const Eigen::VectorXd x = real_m.partialPivLu().solve(real_rhs);
  Eigen::Vector3cd out;
  for (int i = 0; i < 3; ++i) out(i) = complex{x(i), x(i + 3)};
  return out;
}

}  // namespace

void AtomParams::validate() const {
  auto fail = [](const char* what, double v) {
    std::ostringstream os;
    os << what << " violated (got " << v << ")";
    throw ConfigError(os.str());
  };
  if (!(gamma1 > 0.0)) fail("atom.gamma1 > 0", gamma1);
  if (!(gamma2 > 0.0)) fail("atom.gamma2 > 0", gamma2);
  if (!(gamma2 >= 0.5 * gamma1)) fail("atom.gamma2 >= gamma1/2 (dephasing bound)", gamma2);
  if (!std::isfinite(delta_c)) fail("atom.delta_c finite", delta_c);
  if (!(w_eq >= -1.0 && w_eq <= 0.0)) fail("atom.w_eq in [-1, 0]", w_eq);
}

std::vector<std::string> drive_warnings(const DriveFields& fields) {
  std::vector<std::string> out;
  if (std::abs(fields.omega_p) > 0.1 * std::abs(fields.omega_c)) {
    out.emplace_back("|omega_p| > 0.1 |omega_c|: first-order probe expansion may be inaccurate");
  }
  return out;
}

double bloch_max_rate(const AtomParams& params, const DriveFields& fields) {
  double rate = std::max({params.gamma1, params.gamma2, std::abs(params.delta_c),
                          std::abs(fields.omega_c) + std::abs(fields.omega_p)});
  if (fields.omega_p != complex{}) rate = std::max(rate, std::abs(fields.delta));
  return rate;
}

std::vector<BlochState> integrate_bloch(const AtomParams& params, const DriveFields& fields,
                                        const BlochState& initial, double t_end, double dt,
                                        std::size_t sample_every) {
  params.validate();
  if (!(dt > 0.0)) throw ConfigError("integrate_bloch: dt > 0 violated");
  if (!(t_end >= 0.0)) throw ConfigError("integrate_bloch: t_end >= 0 violated");
  const double rate = bloch_max_rate(params, fields);
  if (!(dt * rate < kStepGuard)) {
    std::ostringstream os;
    os << "integrate_bloch: step guard dt * max_rate < 0.1 violated (" << dt << " * " << rate
       << ")";
    throw ConfigError(os.str());
  }
  sample_every = std::max<std::size_t>(sample_every, 1);

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;

  std::vector<BlochState> out;
  out.reserve(steps / sample_every + 2);
  BlochState s = initial;
  s.time = initial.time;
  out.push_back(s);

  const double t0 = initial.time;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    const auto k1 = bloch_rhs(params, fields, t, s.w, s.sigma_eg);
    const auto k2 = bloch_rhs(params, fields, t + 0.5 * h, s.w + 0.5 * h * k1.dw,
                              s.sigma_eg + 0.5 * h * k1.dsigma);
    const auto k3 = bloch_rhs(params, fields, t + 0.5 * h, s.w + 0.5 * h * k2.dw,
                              s.sigma_eg + 0.5 * h * k2.dsigma);
    const auto k4 = bloch_rhs(params, fields, t + h, s.w + h * k3.dw, s.sigma_eg + h * k3.dsigma);
    s.w += h / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
    s.sigma_eg += h / 6.0 * (k1.dsigma + 2.0 * k2.dsigma + 2.0 * k3.dsigma + k4.dsigma);
    s.time = t0 + h * static_cast<double>(i + 1);
    if (!std::isfinite(s.w) || !std::isfinite(s.sigma_eg.real()) ||
        !std::isfinite(s.sigma_eg.imag())) {
      throw DivergenceError("integrate_bloch: non-finite state at t = " + std::to_string(s.time));
    }
    if ((i + 1) % sample_every == 0 || i + 1 == steps) out.push_back(s);
  }
  return out;
}

std::vector<BlochState> integrate_bloch(const AtomParams& params, const DriveFields& fields,
                                        double t_end, double dt, std::size_t sample_every) {
  return integrate_bloch(params, fields, BlochState{params.w_eq, {}, 0.0}, t_end, dt,
                         sample_every);
}

ZerothOrder steady_state_zeroth(const AtomParams& params, complex omega_c) {
  const double g1 = params.gamma1;
  const double g2 = params.gamma2;
  const double d = params.delta_c;
  const double den = g1 * (d * d + g2 * g2) + 4.0 * g2 * std::norm(omega_c);
  const double w0 = g1 * (d * d + g2 * g2) * params.w_eq / den;
  const complex s0 = g1 * (kI * g2 - d) * omega_c / den * params.w_eq;
  return {w0, s0};
}

complex cpo_denominator(const AtomParams& params, complex omega_c, double delta) {
  const double g1 = params.gamma1;
  const double g2 = params.gamma2;
  const double d = params.delta_c;
  return (delta + kI * g1) * (delta - d + kI * g2) * (delta + d + kI * g2) -
         4.0 * std::norm(omega_c) * (kI * g2 + delta);
}

complex first_order_closed(const AtomParams& params, complex omega_c, complex omega_p,
                           double delta) {
  const double g2 = params.gamma2;
  const double d = params.delta_c;
  const complex big_d = cpo_denominator(params, omega_c, delta);
  if (std::abs(big_d) < 1e-12) throw SingularError("first_order_closed: |D| < 1e-12");
  const double w0 = steady_state_zeroth(params, omega_c).w0;

  const complex common = big_d * (kI * g2 - d) * (delta + d + kI * g2);
  const complex first = -(big_d * (kI * g2 - d)) / common * w0 * omega_p;
  const complex second = -(2.0 * std::norm(omega_c) * (delta + 2.0 * kI * g2) *
                           (delta - d + kI * g2)) /
                         common * w0 * omega_p;
  return first + second;
}

SteadyResponse floquet_steady_solve(const AtomParams& params, complex omega_c,
                                    complex omega_p, double delta) {
  params.validate();
  const double g1 = params.gamma1;
  const double g2 = params.gamma2;
  const double d = params.delta_c;
  const complex oc = omega_c;
  const complex oc_star = std::conj(omega_c);

  // Unknowns (w0, sigma_eg0, sigma_ge0), time derivatives set to zero.
  Eigen::Matrix3cd m0;
  m0 << -g1, -2.0 * kI * oc, 2.0 * kI * oc_star,
        -kI * oc_star, -(kI * d + g2), 0.0,
        kI * oc, 0.0, kI * d - g2;
  Eigen::Vector3cd r0(-g1 * params.w_eq, 0.0, 0.0);
  double cond0 = 0.0;
  const Eigen::Vector3cd x0 = solve_complex3(m0, r0, cond0, "zeroth-order");

  // Unknowns (w-, sigma_eg-, sigma_ge-) of the exp(-i delta t) sideband.
  Eigen::Matrix3cd m1;
  m1 << kI * delta - g1, -2.0 * kI * oc, 2.0 * kI * oc_star,
        -kI * oc_star, kI * (delta - d) - g2, 0.0,
        kI * oc, 0.0, kI * (delta + d) - g2;
  Eigen::Vector3cd r1(2.0 * kI * omega_p * x0(1), 0.0, -kI * omega_p * x0(0));
  double cond1 = 0.0;
  const Eigen::Vector3cd x1 = solve_complex3(m1, r1, cond1, "first-order");

  SteadyResponse r;
  r.w0 = x0(0).real();
  r.sigma_ge0 = x0(2);
  r.w_minus = x1(0);
  r.sigma_eg_minus = x1(1);
  r.sigma_ge_minus = x1(2);
  r.d_denominator = cpo_denominator(params, omega_c, delta);
  r.condition_number = cond1;
  return r;
}

}  // namespace cpo
