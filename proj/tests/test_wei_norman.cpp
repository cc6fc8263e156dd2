#include <gtest/gtest.h>

#include <cmath>

#include "cpo/error.hpp"
#include "cpo/medium.hpp"
#include "cpo/propagation.hpp"
#include "cpo/wei_norman.hpp"
#include "support/oracles.hpp"

namespace {

using cpo::complex;
constexpr complex kI{0.0, 1.0};

double coeff_distance(const cpo::WeiNormanCoeffs& x, const cpo::WeiNormanCoeffs& y) {
  return std::max({std::abs(x.g1 - y.g1), std::abs(x.g2 - y.g2), std::abs(x.g3 - y.g3), std::abs(x.g4 - y.g4)});
}

TEST(ClosedCoefficients, HandComputedValues) {
  const auto w = cpo::wn_closed_coefficients(2.0, 0.5, 1.0, 3.0);
  EXPECT_EQ(w.g1, -2.0 * kI);
  EXPECT_EQ(w.g2, -12.0 * kI);
  EXPECT_EQ(w.g3, -6.0 * kI);
  EXPECT_NEAR(std::abs(w.g4 - (-26.0 * kI)), 0.0, 1e-14);
  EXPECT_THROW(cpo::wn_closed_coefficients(1.0, 0.0, 0.0, 0.0), cpo::ConfigError);
}

TEST(ClosedCoefficients, ZeroTimeIsIdentity) {
  const auto w = cpo::wn_closed_coefficients(0.0, 3.0, 2.0, -1.0);
  EXPECT_EQ(coeff_distance(w, cpo::WeiNormanCoeffs{}), 0.0);
  const auto p = cpo::probe_packet(0.4, 0.3);
  const auto q = cpo::evolve_gaussian_analytic(p, w);
  EXPECT_NEAR(q.center, p.center, 1e-15);
  EXPECT_NEAR(std::abs(q.complex_width - p.complex_width), 0.0, 1e-12);
}

TEST(IntegrateOdes, ConstantHamiltonianMatchesClosedForm) {
  cpo::testing::Gen gen(5);
  for (int i = 0; i < 20; ++i) {
    const double m = gen.log_uniform(0.1, 1000.0);
    const double eta0 = gen.uniform(-10.0, 10.0);
    const double eta1 = gen.uniform(-5.0, 5.0);
    const double t = gen.uniform(0.1, 10.0);
    const auto h = cpo::HamiltonianCoefficients::constant_case(m, eta0, eta1);
    const auto num = cpo::wn_integrate_odes(h, t, 1e-3);
    const auto closed = cpo::wn_closed_coefficients(t, m, eta0, eta1);
    EXPECT_LT(coeff_distance(num, closed), 1e-8) << "trial " << i;
    EXPECT_DOUBLE_EQ(num.m, m);
  }
}

TEST(IntegrateOdes, RampedForce) {
  // c3 = eta1 t gives g1 = -i t/2m, g3 = -i eta1 t^2/2, g2 = -i eta1 t^3/3m, g4 = -i eta1^2 t^5/15m.
  const double m = 2.0, eta1 = 0.7, t = 3.0;
  cpo::HamiltonianCoefficients h{[=](double) { return 1.0 / (2 * m); }, [](double) { return 0.0; },
                                 [=](double s) { return eta1 * s; }, [](double) { return 0.0; }};
  const auto w = cpo::wn_integrate_odes(h, t, 1e-3);
  EXPECT_LT(std::abs(w.g1 - (-kI * t / (2 * m))), 1e-12);
  EXPECT_LT(std::abs(w.g3 - (-kI * eta1 * t * t / 2.0)), 1e-12);
  EXPECT_LT(std::abs(w.g2 - (-kI * eta1 * t * t * t / (3 * m))), 1e-10);
  EXPECT_LT(std::abs(w.g4 - (-kI * eta1 * eta1 * std::pow(t, 5) / (15 * m))), 1e-10);
}

TEST(IntegrateOdes, Guards) {
  const auto h = cpo::HamiltonianCoefficients::constant_case(1.0, 0.0, 5.0);
  EXPECT_THROW(cpo::wn_integrate_odes(h, 1.0, 0.02), cpo::ConfigError);
  EXPECT_THROW(cpo::wn_integrate_odes(h, 1.0, 0.0), cpo::ConfigError);
  EXPECT_THROW(cpo::wn_integrate_odes(cpo::HamiltonianCoefficients{}, 1.0, 0.01), cpo::ConfigError);
}

TEST(GaussianPacket, ProbePacketIsNormalized) {
  const auto p = cpo::probe_packet(1.0, 0.2);
  EXPECT_NEAR(cpo::packet_norm(p), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(p(1.0)), std::pow(2.0 / (M_PI * 0.04), 0.25), 1e-13);
  EXPECT_THROW(cpo::probe_packet(0.0, 0.0), cpo::ConfigError);
}

TEST(Evolution, MatchesAcceleratedFrameSolution) {
  const double k = 1000.0, eta0 = 9.3, eta1 = -4.1, a = 0.8, b = 0.2, t = 10.0;
  const auto w = cpo::wn_closed_coefficients(t, k, eta0, eta1, a);
  const auto p = cpo::evolve_gaussian_analytic(cpo::probe_packet(a, b), w);
  for (double x : {0.3, 0.7, 0.85, 0.9, 1.1}) {
    const complex want = cpo::testing::gaussian_in_linear_potential(x, t, k, eta0, eta1, a, b);
    EXPECT_LT(std::abs(p(x) - want), 1e-10) << "x = " << x;
  }
  EXPECT_NEAR(p.center, cpo::trajectory_endpoint(a, eta1, k, 1.0, t).x, 1e-13);
  EXPECT_NEAR(cpo::packet_norm(p), 1.0, 1e-12);
}

// U(t1 + t2) = U(t2) U(t1) for a time-independent Hamiltonian.
TEST(Evolution, GroupProperty) {
  cpo::testing::Gen gen(99);
  for (int i = 0; i < 20; ++i) {
    const double m = gen.log_uniform(0.5, 100.0);
    const double eta0 = gen.uniform(-3.0, 3.0);
    const double eta1 = gen.uniform(-3.0, 3.0);
    const double a = gen.uniform(-1.0, 1.0);
    const double t1 = gen.uniform(0.0, 3.0);
    const double t2 = gen.uniform(0.0, 3.0);
    const auto p0 = cpo::probe_packet(gen.uniform(-1.0, 1.0), gen.uniform(0.2, 2.0));
    const auto once = cpo::evolve_gaussian_analytic(p0, cpo::wn_closed_coefficients(t1 + t2, m, eta0, eta1, a));
    const auto twice = cpo::evolve_gaussian_analytic(
        cpo::evolve_gaussian_analytic(p0, cpo::wn_closed_coefficients(t1, m, eta0, eta1, a)),
        cpo::wn_closed_coefficients(t2, m, eta0, eta1, a));
    for (double x : {-2.0, -0.5, 0.0, 0.4, 1.7}) {
      EXPECT_LT(std::abs(once(x) - twice(x)), 1e-10) << "trial " << i << ", x = " << x;
    }
  }
}

TEST(Evolution, NonNormalizableThrows) {
  // A negative kinetic time undoes more spreading than a minimal packet has.
  cpo::WeiNormanCoeffs w;
  w.g1 = complex{0.5, 0.0};
  EXPECT_THROW(cpo::evolve_gaussian_analytic(cpo::probe_packet(0.0, 1.0), w), cpo::EvolutionError);
}

TEST(TrajectoryEndpoint, ParabolicShift) {
  const auto e = cpo::trajectory_endpoint(1.0, 2.0, 100.0, 2.0, 10.0);
  EXPECT_DOUBLE_EQ(e.x, 1.0 - 2.0 * 100.0 / (2.0 * 100.0 * 2.0));
  EXPECT_DOUBLE_EQ(e.z, 10.0);
  EXPECT_THROW(cpo::trajectory_endpoint(0.0, 1.0, 0.0, 1.0, 1.0), cpo::ConfigError);
  EXPECT_THROW(cpo::trajectory_endpoint(0.0, 1.0, 1.0, 1.0, -1.0), cpo::ConfigError);
}

// The factorized propagator and the split-step solver agree on the sampled field.
TEST(Evolution, AgreesWithSplitStep) {
  const auto m = cpo::derive_coefficients({}, {}, {});
  const double a = m.l_c, b = 0.2 * m.l_c, L = 10.0;
  const auto eta = cpo::linearized_potential(a, m);
  const auto g = cpo::TransverseGrid::centered(1024, 16 * m.l_c);
  const auto packet = cpo::probe_packet(a, b);
  const auto numeric = cpo::propagate_probe(cpo::sample_packet(g, packet), cpo::PotentialMode::linearized, m, eta,
                                            L, L / 2000.0);
  const auto w = cpo::wn_closed_coefficients(L, m.k_p, eta.eta0 / m.c, eta.eta1 / m.c, a);
  const auto exact = cpo::sample_packet(g, cpo::evolve_gaussian_analytic(packet, w), L);
  EXPECT_LT(cpo::l2_distance(numeric, exact), 1e-6);
}

}  // namespace
