#include <gtest/gtest.h>

#include <string>

#include "cpo/config.hpp"
#include "cpo/error.hpp"

namespace {

using cpo::Scenario;

std::string error_of(const std::string& text, std::optional<Scenario> s = std::nullopt,
                     const std::vector<std::string>& overrides = {}) {
  try {
    cpo::parse_config(text, s, overrides);
  } catch (const cpo::ConfigError& e) {
    return e.what();
  }
  return {};
}

const char* kDeflect = R"(
scenario: deflect
atom: {gamma1: 0.01, delta_c: -10}
medium: {coupling_c: 1.01, coupling_p: 101}
beam: {length: 10}
)";

TEST(ParseConfig, MinimalSpectrumFillsAndRecordsDefaults) {
  const auto c = cpo::parse_config("atom: {gamma1: 0.02}\n", Scenario::spectrum);
  EXPECT_EQ(c.scenario, Scenario::spectrum);
  EXPECT_EQ(c.atom.gamma1, 0.02);
  EXPECT_EQ(c.atom.gamma2, 1.0);
  EXPECT_EQ(c.spectrum.omega_c, 0.3);
  for (const char* key : {"atom.gamma2", "atom.delta_c", "atom.w_eq", "drive.omega_c", "drive.points",
                          "grid.n", "grid.width_over_lc", "numerics.dt"}) {
    EXPECT_TRUE(c.defaults.contains(key)) << key;
  }
  EXPECT_FALSE(c.defaults.contains("atom.gamma1"));
  EXPECT_EQ(c.inputs["atom"]["gamma1"], 0.02);
  EXPECT_TRUE(c.warnings.empty());
}

TEST(ParseConfig, InvariantViolationsCiteTheInequality) {
  EXPECT_NE(error_of("atom: {gamma2: 0}\n", Scenario::spectrum).find("gamma2 > 0"), std::string::npos);
  EXPECT_NE(error_of("atom: {w_eq: 0.5}\n", Scenario::spectrum).find("w_eq in [-1, 0]"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\ndrive: {delta_min: 1, delta_max: 0}\n", Scenario::spectrum).find("delta_max > drive.delta_min"),
            std::string::npos);
}

TEST(ParseConfig, UnknownKeysAndBlocksAreHardErrors) {
  EXPECT_NE(error_of("atom: {gamma_1: 0.1}\n", Scenario::spectrum).find("atom.gamma_1"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nplot: {dpi: 3}\n", Scenario::spectrum).find("plot"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\n", Scenario::spectrum, {"grid.size=3"}).find("grid.size"), std::string::npos);
}

TEST(ParseConfig, MissingBlocksAreNamed) {
  EXPECT_NE(error_of("drive: {}\n", Scenario::spectrum).find("'atom'"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\n", Scenario::soliton).find("'medium'"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {}\n", Scenario::deflect).find("'beam'"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {}\n", Scenario::wn_check).find("'beam'"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\n").find("no scenario"), std::string::npos);
}

TEST(ParseConfig, ProbeWiderThanControlIsRejected) {
  const auto e = error_of(kDeflect, std::nullopt, {"beam.b=1.2"});
  EXPECT_NE(e.find("beam.b < L_c"), std::string::npos) << e;
}

TEST(ParseConfig, DeflectDefaultsFollowControlSize) {
  const auto c = cpo::parse_config(kDeflect);
  const auto& m = *c.coefficients;
  EXPECT_DOUBLE_EQ(c.beam.a, m.l_c);
  EXPECT_DOUBLE_EQ(c.beam.b, 0.2 * m.l_c);
  EXPECT_TRUE(c.defaults.contains("beam.a"));
  EXPECT_TRUE(c.defaults.contains("numerics.dz"));
  EXPECT_LT(c.numerics.dz * std::abs(m.alpha_p), 0.1);
  EXPECT_EQ(c.numerics.edge_tolerance, 1e-6);
}

TEST(ParseConfig, OverridesReplaceValuesAndLists) {
  const auto c = cpo::parse_config(kDeflect, Scenario::deflect, {"atom.delta_c=-8", "beam.a=0.5"});
  EXPECT_EQ(c.atom.delta_c, -8.0);
  EXPECT_EQ(c.beam.a, 0.5);
  const auto s = cpo::parse_config(kDeflect, std::nullopt, {"scenario=sweep", "sweep.a_values=[-0.5, 0.5]"});
  EXPECT_EQ(s.scenario, Scenario::sweep);
  EXPECT_EQ(s.sweep.a_values, (std::vector<double>{-0.5, 0.5}));
  EXPECT_EQ(s.sweep.delta_values, (std::vector<double>{-10.0, 10.0}));
  EXPECT_NE(error_of(kDeflect, std::nullopt, {"beam.a"}).find("key=value"), std::string::npos);
}

TEST(ParseConfig, ScenarioMismatchIsAnError) {
  EXPECT_NE(error_of(kDeflect, Scenario::soliton).find("deflect"), std::string::npos);
  EXPECT_NE(error_of("scenario: fly\natom: {}\n").find("unknown scenario"), std::string::npos);
}

TEST(ParseConfig, MediumEitherAlphasOrCouplings) {
  const auto c = cpo::parse_config("atom: {}\nmedium: {alpha_c: 0.1, alpha_p: 10}\n", Scenario::soliton);
  EXPECT_NEAR(c.coefficients->coupling_c, 1.01, 1e-12);
  EXPECT_NE(error_of("atom: {}\nmedium: {alpha_c: 0.1, coupling_p: 10}\n", Scenario::soliton).find("either"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {alpha_c: 0.1}\n", Scenario::soliton).find("together"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {alpha_c: -0.1, alpha_p: 10}\n", Scenario::soliton).find("sign"), std::string::npos);
  EXPECT_NE(error_of("atom: {delta_c: 0}\nmedium: {}\n", Scenario::soliton).find("delta_c != 0"), std::string::npos);
}

TEST(ParseConfig, NumericGuards) {
  EXPECT_NE(error_of(kDeflect, std::nullopt, {"numerics.dz=0.02"}).find("dz * |alpha_p| / c < 0.1"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {}\nnumerics: {dz: 2}\n", Scenario::soliton).find("dz * |alpha_c| < 0.1"),
            std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {}\ngrid: {width_over_lc: 6}\n", Scenario::soliton).find("width_over_lc >= 8"),
            std::string::npos);
  EXPECT_NE(error_of("atom: {}\nmedium: {}\ngrid: {n: 1000}\n", Scenario::soliton).find("power of two"), std::string::npos);
  EXPECT_NE(error_of(kDeflect, std::nullopt, {"beam.a=7.5"}).find("domain half width"), std::string::npos);
  EXPECT_NE(error_of("atom: {}\n", Scenario::spectrum, {"numerics.dt=1"}).find("dt * max_rate < 0.1"), std::string::npos);
  EXPECT_NE(error_of("atom: {gamma1: abc}\n", Scenario::spectrum).find("expected a number"), std::string::npos);
  EXPECT_NE(error_of("atom: [1, 2]\n", Scenario::spectrum).find("mapping"), std::string::npos);
  EXPECT_NE(error_of("atom: {gamma1: 0.01\n", Scenario::spectrum).find("malformed"), std::string::npos);
}

TEST(ParseConfig, UnusedBlocksWarn) {
  const auto c = cpo::parse_config(std::string(kDeflect) + "drive: {omega_c: 0.1}\n");
  ASSERT_EQ(c.warnings.size(), 1u);
  EXPECT_NE(c.warnings[0].find("drive"), std::string::npos);
}

}  // namespace
